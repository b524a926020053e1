#include "mwell/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mwell/errors.hpp"

namespace mwell {

Potential::Potential(const PotentialSpec& spec) : spec_(spec) {
  const auto& s = spec_;
  if (!(s.m > 0) || !(s.omega > 0) || !(s.w > 0) || !(s.eta >= 0) || !(s.delta >= 0) ||
      !(s.L > s.delta) || !(s.x_cap >= s.L + s.w) || !(s.hbar > 0))
    throw std::invalid_argument("PotentialSpec: parameter out of range");
  if (s.delta >= s.w)
    throw std::invalid_argument("PotentialSpec: smoothing region must end on the ramp");
  const double v_junction = 0.5 * s.m * s.omega * s.omega * s.L * s.L;
  if (!s.allow_discontinuous && std::abs(v_junction - s.V_b) > 1e-9 * std::abs(s.V_b))
    throw std::invalid_argument("PotentialSpec: continuity requires m omega^2 L^2 / 2 == V_b");

  // Hermite blend endpoint data at L - delta (harmonic side) and L + delta (ramp side)
  h00_ = 0.5 * s.m * s.omega * s.omega * (s.L - s.delta) * (s.L - s.delta);
  h10_ = s.m * s.omega * s.omega * (s.L - s.delta);
  h01_ = s.V_b * (1.0 - s.delta / s.w);
  h11_ = -s.V_b / s.w;

  if (s.delta > 0) {
    // the blend is a cubic; its interior maximum is a root of a quadratic
    const double width = 2.0 * s.delta;
    // p(t) on t in [0,1]: Hermite basis with slopes scaled by the width
    const double m0 = h10_ * width, m1 = h11_ * width;
    const double c3 = 2.0 * h00_ + m0 - 2.0 * h01_ + m1;
    const double c2 = -3.0 * h00_ - 2.0 * m0 + 3.0 * h01_ - m1;
    const double c1 = m0;
    const double c0 = h00_;
    double best_v = std::max(h00_, h01_), best_t = h00_ > h01_ ? 0.0 : 1.0;
    const double disc = c2 * c2 - 3.0 * c3 * c1;
    if (disc >= 0 && c3 != 0) {
      for (double sign : {-1.0, 1.0}) {
        const double t = (-c2 + sign * std::sqrt(disc)) / (3.0 * c3);
        if (t > 0 && t < 1) {
          const double v = c0 + t * (c1 + t * (c2 + t * c3));
          if (v > best_v) {
            best_v = v;
            best_t = t;
          }
        }
      }
    } else if (c3 == 0 && c2 < 0) {
      const double t = -c1 / (2.0 * c2);
      if (t > 0 && t < 1) {
        const double v = c0 + t * (c1 + t * c2);
        if (v > best_v) {
          best_v = v;
          best_t = t;
        }
      }
    }
    v_top_ = best_v;
    x_top_ = s.L - s.delta + best_t * width;
  } else {
    v_top_ = s.V_b;
    x_top_ = s.L;
  }
}

double Potential::blend(double x) const {
  const double width = 2.0 * spec_.delta;
  const double t = (x - (spec_.L - spec_.delta)) / width;
  const double t2 = t * t, t3 = t2 * t;
  return h00_ * (2 * t3 - 3 * t2 + 1) + h10_ * width * (t3 - 2 * t2 + t) +
         h01_ * (-2 * t3 + 3 * t2) + h11_ * width * (t3 - t2);
}

double Potential::blend_d1(double x) const {
  const double width = 2.0 * spec_.delta;
  const double t = (x - (spec_.L - spec_.delta)) / width;
  const double t2 = t * t;
  return (h00_ * (6 * t2 - 6 * t) + h10_ * width * (3 * t2 - 4 * t + 1) +
          h01_ * (-6 * t2 + 6 * t) + h11_ * width * (3 * t2 - 2 * t)) /
         width;
}

double Potential::blend_d2(double x) const {
  const double width = 2.0 * spec_.delta;
  const double t = (x - (spec_.L - spec_.delta)) / width;
  return (h00_ * (12 * t - 6) + h10_ * width * (6 * t - 4) + h01_ * (-12 * t + 6) +
          h11_ * width * (6 * t - 2)) /
         (width * width);
}

double Potential::real_part(double x) const {
  const auto& s = spec_;
  if (x <= s.L - s.delta) return 0.5 * s.m * s.omega * s.omega * x * x;
  if (s.delta > 0 && x < s.L + s.delta) return blend(x);
  if (x <= s.L + s.w) return s.V_b * (1.0 - (x - s.L) / s.w);
  return 0.0;
}

double Potential::real_deriv(double x) const {
  const auto& s = spec_;
  if (x <= s.L - s.delta) return s.m * s.omega * s.omega * x;
  if (s.delta > 0 && x < s.L + s.delta) return blend_d1(x);
  if (x <= s.L + s.w) return -s.V_b / s.w;
  return 0.0;
}

double Potential::real_deriv2(double x) const {
  const auto& s = spec_;
  if (x <= s.L - s.delta) return s.m * s.omega * s.omega;
  if (s.delta > 0 && x < s.L + s.delta) return blend_d2(x);
  return 0.0;
}

cplx Potential::eval(double x) const {
  const auto& s = spec_;
  double im = 0.0;
  if (x > s.x_cap) im = -s.eta * (x - s.x_cap) * (x - s.x_cap);
  return cplx(real_part(x), im);
}

TurningPoints Potential::turning_points(double E) const {
  const auto& s = spec_;
  if (!(E > 0) || !(E < v_top_))
    throw EnergyOutOfRange("turning_points: requires 0 < E < barrier top");
  auto f = [&](double x) { return real_part(x) - E; };

  // c on the left harmonic arm (the smoothing only touches x near +L)
  const double c = -std::sqrt(2.0 * E / (s.m * s.omega * s.omega));

  // the barrier rises monotonically to its single maximum at x_top and falls
  // monotonically after it, so [0, x_top] brackets a and [x_top, L + w]
  // brackets b for every energy below the top; this stays valid arbitrarily
  // close to the top, where the points merge and a uniform scan would skip
  // the sign changes
  if (!(f(x_top_) > 0))
    throw RootNotBracketed("turning_points: smoothing destroyed the barrier profile");
  if (!(f(0.0) < 0) || !(f(s.L + s.w) < 0))
    throw RootNotBracketed("turning_points: barrier endpoints do not bracket E");
  const double xtol = 1e-12;
  const double a = bisect(f, 0.0, x_top_, xtol);
  const double b = bisect(f, x_top_, s.L + s.w, xtol);
  return TurningPoints{c, a, b, E};
}

}  // namespace mwell
