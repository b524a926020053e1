#ifndef MWELL_TESTS_FIXTURES_HPP
#define MWELL_TESTS_FIXTURES_HPP

#include <cmath>

#include "mwell/grid.hpp"
#include "mwell/potential.hpp"

namespace fixtures {

// The well and barrier studied throughout: m = hbar = omega = 1, L = 6,
// w = 0.9, V_b = 18, delta = 0.3.
inline mwell::PotentialSpec well_spec() {
  mwell::PotentialSpec s;
  s.m = 1.0;
  s.omega = 1.0;
  s.L = 6.0;
  s.V_b = 18.0;
  s.w = 0.9;
  s.x_cap = 56.9;
  s.eta = 3e-4;
  s.delta = 0.3;
  return s;
}

inline mwell::PotentialSpec well_spec_sharp() {  // delta = 0: analytic oracles apply
  auto s = well_spec();
  s.delta = 0.0;
  return s;
}

// Same well, absorber pulled in close with higher eta: identical resonance
// physics at a quarter of the grid cost. Unit tests use this variant.
inline mwell::PotentialSpec compact_spec() {
  auto s = well_spec();
  s.x_cap = 16.9;
  s.eta = 6e-3;
  return s;
}

inline mwell::Grid compact_grid() { return mwell::Grid::from_step(-12.0, 36.9, 0.02); }

// Production grid: absorber gets 60 length units.
inline mwell::Grid full_grid() { return mwell::Grid::from_step(-12.0, 116.9, 0.02); }

// ---- closed forms for the delta = 0 potential (independent oracles) ----

// barrier action: harmonic segment via hyperbolic antiderivative plus the
// power-law ramp segment
inline double sharp_action(double E) {
  const double L = 6.0, w = 0.9, Vb = 18.0;
  const double a = std::sqrt(2.0 * E);
  const double harm = 0.5 * L * std::sqrt(L * L - 2.0 * E) -
                      E * std::log((L + std::sqrt(L * L - 2.0 * E)) / a);
  const double ramp = (w / (3.0 * Vb)) * std::pow(2.0 * (Vb - E), 1.5);
  return harm + ramp;
}

// barrier traversal time for delta = 0
inline double sharp_barrier_time(double E) {
  const double L = 6.0, w = 0.9, Vb = 18.0;
  const double a = std::sqrt(2.0 * E);
  const double harm = std::log((L + std::sqrt(L * L - 2.0 * E)) / a);
  const double ramp = (w / Vb) * std::sqrt(2.0 * (Vb - E));
  return harm + ramp;
}

inline double sharp_b(double E) { return 6.0 + 0.9 * (1.0 - E / 18.0); }

}  // namespace fixtures

#endif
