#ifndef MWELL_SPECTRAL_HPP
#define MWELL_SPECTRAL_HPP

#include <vector>

#include "mwell/hamiltonian.hpp"

namespace mwell {

/// One eigenpair of the discrete Hamiltonian. The vector lives on the full
/// grid (boundary nodes pinned to zero) and has unit l2 norm.
struct EigenPair {
  cplx value;
  std::vector<cplx> vec;
};

/// Complete spectrum, sorted by ascending real part. Every returned pair is
/// verified to satisfy ||H v - lambda v|| <= 1e-8 ||H||_inf ||v||; a failure
/// raises SolverFailure naming the offending index.
///
/// hard_wall matrices use the real symmetric tridiagonal path; cap matrices
/// use a complex symmetric tridiagonal QL iteration with a dense Hessenberg
/// QR fallback. Eigenvalues are polished by inverse iteration with extended
/// precision Rayleigh quotients, so the imaginary parts carry noise well
/// below 1e-12 rather than the eps ||H|| of a raw QL sweep.
std::vector<EigenPair> eigendecompose(const Hamiltonian& h);

/// A quasi-bound state of the well extracted from the cap spectrum.
struct ResonantState {
  int n = 0;                 // level index by ascending energy
  cplx eps;                  // complex energy E - i hbar Gamma / 2
  double E = 0;              // real part
  double Gamma = 0;          // decay width, > 0
  std::vector<cplx> psi;     // unit norm on (x_min, x_T], real positive at x_T
  double A = 0;              // outgoing amplitude sqrt(m Gamma / Re k)
  double k_re = 0;           // Re k for k = sqrt(2 m eps)
  double k_abs = 0;          // |k|
  double delta = 0;          // arg k = -atan(hbar Gamma / 2E) / 2
  double localization = 0;   // mass fraction left of x_T over the whole grid
};

/// Filter the spectrum down to well-localized resonances: 0 < Re(eps) < V_b,
/// localization fraction >= 0.5, and Gamma > 0 after refinement. Levels are
/// indexed by ascending energy and normalized on (x_min, x_T] with a real
/// positive value at x_T.
///
/// Narrow widths sit far below double precision eigensolver noise, so kept
/// states are refined by quadruple precision Rayleigh quotient iteration on
/// the tridiagonal matrix before the width filter and normalization run.
std::vector<ResonantState> select_resonances(const std::vector<EigenPair>& pairs,
                                             const Hamiltonian& h, double x_T,
                                             int max_count);

}  // namespace mwell

#endif
