#ifndef MWELL_DECOMPOSITION_HPP
#define MWELL_DECOMPOSITION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwell/spectral.hpp"

namespace mwell {

/// Gram matrix S_mn = <psi_m|psi_n> of the resonance basis under the
/// truncated inner product on (x_min, x_T], with a singular-value condition
/// estimate. Entries are stored row-major.
struct OverlapMatrix {
  int size = 0;
  std::vector<cplx> s;
  double condition = 1.0;
  const cplx& at(int m, int n) const { return s[(std::size_t)m * size + n]; }
};

OverlapMatrix overlap(std::span<const ResonantState> states, const Grid& grid, double x_T);

/// Expansion coefficients of psi0 over the basis: solve S c = <psi_m|psi0>.
/// Refuses to run on an overlap matrix flagged ill-conditioned (cond > 1e6).
std::vector<cplx> project(std::span<const cplx> psi0, std::span<const ResonantState> states,
                          const OverlapMatrix& ovl, const Grid& grid, double x_T);

/// Poisson amplitudes c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), in log space.
struct CoherentCoefficients {
  std::vector<cplx> c;
  double truncation_mass = 0.0;  // 1 - sum |c_n|^2 over the kept levels
};
CoherentCoefficients coherent_coefficients(cplx alpha, int n_max);

/// Smallest n_max whose cumulative coherent mass reaches 1 - 1e-8, capped by
/// the basis size.
int default_coherent_n_max(cplx alpha, int basis_size);

/// Displaced oscillator ground state on the grid: mean position
/// sqrt(2) d Re(alpha), mean momentum sqrt(2) (hbar/d) Im(alpha).
/// Unit trapezoidal norm. Rejects displacements whose 3 sigma range leaves
/// the harmonic region.
std::vector<cplx> coherent_wavefunction(cplx alpha, const Potential& pot, const Grid& grid);

/// Keep the magnitudes, redraw the phases i.i.d. uniform from a fixed,
/// portable generator (xoshiro-style 64-bit), so runs reproduce bit for bit.
std::vector<cplx> random_phase_state(std::span<const double> magnitudes, std::uint64_t seed);

/// Synthesize grid samples from coefficients over the basis.
std::vector<cplx> synthesize(std::span<const cplx> c, std::span<const ResonantState> states);

/// A labelled initial state: coefficients over a resonance basis plus the
/// wavefunction they represent.
struct InitialState {
  std::vector<cplx> c;
  std::vector<cplx> psi0;
  std::string label;
};

}  // namespace mwell

#endif
