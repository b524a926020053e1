#ifndef MWELL_CURRENT_HPP
#define MWELL_CURRENT_HPP

#include <span>
#include <string>
#include <vector>

#include "mwell/potential.hpp"
#include "mwell/spectral.hpp"

namespace mwell {

/// Per-level data consumed by the closed-form current. Built either from cap
/// resonances or from the semiclassical rule (harmonic energies, WKB widths,
/// delta = 0, Re k = |k| = sqrt(2 m E)).
struct LevelData {
  double E = 0;
  double Gamma = 0;
  double k_re = 0;
  double k_abs = 0;
  double delta = 0;
};

LevelData level_from_state(const ResonantState& st);
std::vector<LevelData> levels_from_states(std::span<const ResonantState> states);
std::vector<LevelData> wkb_levels(const Potential& pot, int count, bool use_g_factor = true);

enum class Provenance { formula, evolution, saddle };

struct CurrentSeries {
  std::vector<double> t;
  std::vector<double> j;
  Provenance tag = Provenance::formula;
  // applicability annotation: outside [valid_t_min, valid_t_max] the closed
  // form is known to miss transient or late-time physics (values are kept)
  double valid_t_min = 0.0;
  double valid_t_max = 0.0;
  std::string label;
};

/// Closed-form current at x_T from the resonant expansion:
/// the incoherent sum of level currents plus the pairwise interference terms,
/// evaluated exactly as the two written sums (the n/n' asymmetry in |k| and
/// delta is kept, no symmetrization).
CurrentSeries formula_current(std::span<const LevelData> levels, std::span<const cplx> c,
                              std::span<const double> times, double mass, double hbar,
                              double omega);

/// Incoherent average leak rate sum |c_n|^2 Gamma_n.
double average_rate(std::span<const LevelData> levels, std::span<const cplx> c);

/// Probability leaked per oscillation period: 2 pi gamma_bar / omega.
double per_cycle_leak(double gamma_bar, double omega);

/// P(t) = 1 - trapezoidal integral of j from the first sample.
std::vector<double> survival_from_current(const CurrentSeries& series);

}  // namespace mwell

#endif
