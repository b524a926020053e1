#ifndef MWELL_POTENTIAL_HPP
#define MWELL_POTENTIAL_HPP

#include <complex>

#include "mwell/numerics.hpp"

namespace mwell {

/// Parameters of the metastable potential: harmonic well, linear barrier
/// ramp, free region, and a quadratic complex absorbing tail. The kink where
/// the well meets the ramp is smoothed by a cubic Hermite blend of half-width
/// delta; the ramp/free junction is left C0.
struct PotentialSpec {
  double m = 1.0;       // particle mass
  double omega = 1.0;   // well frequency
  double L = 6.0;       // junction position of well and ramp
  double V_b = 18.0;    // barrier height parameter, must equal m omega^2 L^2 / 2
  double w = 0.9;       // ramp width
  double x_cap = 56.9;  // onset of the absorbing tail
  double eta = 3e-4;    // absorber strength
  double delta = 0.3;   // smoothing half-width (0 disables smoothing)
  double hbar = 1.0;
  // Permits specs with a value jump at the junction (testing only).
  bool allow_discontinuous = false;
};

/// Classical turning points c < a < b of Re V at energy E.
struct TurningPoints {
  double c, a, b;
  double energy;
};

class Potential {
 public:
  explicit Potential(const PotentialSpec& spec);

  const PotentialSpec& spec() const { return spec_; }

  /// Full potential including the absorbing imaginary tail.
  cplx eval(double x) const;
  /// Real part only (the absorber does not contribute).
  double real_part(double x) const;
  double real_deriv(double x) const;
  double real_deriv2(double x) const;

  /// Maximum of Re V over the barrier. With delta > 0 the Hermite blend cuts
  /// the corner at x = L, so this lies below V_b.
  double barrier_top() const { return v_top_; }
  double barrier_top_x() const { return x_top_; }

  /// Bracketing scan plus bisection for the three turning points.
  /// Requires 0 < E < barrier_top().
  TurningPoints turning_points(double E) const;

 private:
  PotentialSpec spec_;
  double h00_, h10_, h01_, h11_;  // Hermite data: endpoint values/slopes
  double v_top_, x_top_;
  double blend(double x) const;
  double blend_d1(double x) const;
  double blend_d2(double x) const;
};

}  // namespace mwell

#endif
