#ifndef MWELL_EVOLUTION_HPP
#define MWELL_EVOLUTION_HPP

#include <functional>
#include <span>
#include <vector>

#include "mwell/current.hpp"
#include "mwell/hamiltonian.hpp"

namespace mwell {

struct EvolutionConfig {
  double dt = 0.0;
  double T = 0.0;
  int record_stride = 10;
  int snapshot_stride = 0;  // 0 disables snapshots

  void validate(double omega) const;
};

struct EvolutionSample {
  double t = 0;
  double P = 0;                  // probability left of x_T
  double j = 0;                  // current at x_T
  double norm = 0;               // total norm on the grid
  std::vector<double> j_probes;  // currents at extra probe points
};

/// Observer invoked once per recorded sample (single consumer).
using EvolutionObserver = std::function<void(const EvolutionSample&)>;
/// Observer invoked on snapshots.
using SnapshotObserver = std::function<void(double t, std::span<const cplx> psi)>;

/// Crank-Nicolson propagation: each step solves
/// (1 + i dt H / 2 hbar) psi' = (1 - i dt H / 2 hbar) psi by tridiagonal
/// elimination. Observables stream through the observer every record_stride
/// steps (and at t = 0). Under hard_wall boundaries a norm growth above 1e-6
/// in a single step raises StepUnstable.
void evolve(const Hamiltonian& h, std::span<const cplx> psi0, const EvolutionConfig& cfg,
            double x_T, const EvolutionObserver& obs,
            std::span<const double> probe_points = {},
            const SnapshotObserver& snap = nullptr);

/// Convenience wrapper collecting the streamed observables.
struct EvolutionResult {
  std::vector<double> t, P, norm;
  CurrentSeries current;                     // tag = evolution
  std::vector<std::vector<double>> probes;   // one series per probe point
};
EvolutionResult evolve_collect(const Hamiltonian& h, std::span<const cplx> psi0,
                               const EvolutionConfig& cfg, double x_T,
                               std::span<const double> probe_points = {});

struct ResidualReport {
  double max_abs = 0;
  double rms = 0;
  double max_abs_over_peak = 0;
  double rms_over_peak = 0;
  double peak = 0;
  double t_lo = 0, t_hi = 0;
  int points = 0;
};

/// Residual metrics between two current series over a common window,
/// comparing b linearly interpolated onto a's time grid.
ResidualReport compare_series(const CurrentSeries& a, const CurrentSeries& b, double t_lo,
                              double t_hi);

/// Round-trip time of the outgoing wave to the far wall and back,
/// 2 (x_max - b) / v at speed v = sqrt(2 E / m).
double reflection_time(const Potential& pot, const Grid& grid, double E_char);

}  // namespace mwell

#endif
