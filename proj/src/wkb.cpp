#include "mwell/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwell/errors.hpp"

namespace mwell {

double action_between(const std::function<double(double)>& v, double E, double a, double b,
                      double mass, int nodes) {
  return integrate_sqrt_reg(
      [&](double x) { return std::sqrt(std::max(0.0, 2.0 * mass * (v(x) - E))); }, a, b, nodes);
}

double period_between(const std::function<double(double)>& v, double E, double c, double a,
                      double mass, int nodes) {
  return integrate_sqrt_reg(
      [&](double x) {
        const double k2 = 2.0 * mass * (E - v(x));
        return k2 > 0 ? 2.0 * mass / std::sqrt(k2) : 0.0;
      },
      c, a, nodes);
}

double barrier_time_between(const std::function<double(double)>& v, double E, double a, double b,
                            double mass, int nodes) {
  return integrate_sqrt_reg(
      [&](double x) {
        const double k2 = 2.0 * mass * (v(x) - E);
        return k2 > 0 ? mass / std::sqrt(k2) : 0.0;
      },
      a, b, nodes);
}

namespace {

void require_band(const Potential& pot, double E, double top_frac) {
  if (!(E > 0) || !(E < top_frac * pot.barrier_top()))
    throw EnergyOutOfRange("semiclassical integral: E outside (0, " + std::to_string(top_frac) +
                           " V_top)");
}

// The potential is piecewise smooth with junctions at L (or L +- delta) and
// L + w; integrating each smooth piece separately keeps the quadrature
// spectrally convergent. Only the pieces touching the turning points need
// the square-root substitution.
double integrate_turning(const Potential& pot, const std::function<double(double)>& f, double lo,
                         double hi, int nodes) {
  const auto& s = pot.spec();
  std::vector<double> pts = {lo};
  const double junctions[] = {s.L - s.delta, s.L + s.delta, s.L, s.L + s.w};
  for (double p : junctions)
    if (p > lo + 1e-12 && p < hi - 1e-12) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.push_back(hi);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const bool endpoint_piece = (i == 0) || (i + 2 == pts.size());
    acc += endpoint_piece ? integrate_sqrt_reg(f, pts[i], pts[i + 1], nodes)
                          : integrate_gl(f, pts[i], pts[i + 1], nodes);
  }
  return acc;
}

}  // namespace

double action(const Potential& pot, double E, int nodes) {
  require_band(pot, E, 1.0);
  const auto tp = pot.turning_points(E);
  const double m = pot.spec().m;
  return integrate_turning(
      pot, [&](double x) { return std::sqrt(std::max(0.0, 2.0 * m * (pot.real_part(x) - E))); },
      tp.a, tp.b, nodes);
}

double classical_period(const Potential& pot, double E, int nodes) {
  require_band(pot, E, 1.0);
  const auto tp = pot.turning_points(E);
  const double m = pot.spec().m;
  return integrate_turning(
      pot,
      [&](double x) {
        const double k2 = 2.0 * m * (E - pot.real_part(x));
        return k2 > 0 ? 2.0 * m / std::sqrt(k2) : 0.0;
      },
      tp.c, tp.a, nodes);
}

double barrier_time(const Potential& pot, double E, int nodes) {
  require_band(pot, E, 0.95);  // logarithmic divergence at the top
  const auto tp = pot.turning_points(E);
  const double m = pot.spec().m;
  return integrate_turning(
      pot,
      [&](double x) {
        const double k2 = 2.0 * m * (pot.real_part(x) - E);
        return k2 > 0 ? m / std::sqrt(k2) : 0.0;
      },
      tp.a, tp.b, nodes);
}

double g_factor(double n) {
  if (n < 0) throw std::invalid_argument("g_factor: n must be >= 0");
  const double lg = -0.5 * std::log(2.0 * M_PI) + (n + 0.5) * (1.0 - std::log(n + 0.5)) +
                    std::lgamma(n + 1.0);
  return std::exp(lg);
}

double wkb_width(const Potential& pot, int n, bool use_g_factor, int nodes) {
  const auto& s = pot.spec();
  const double En = s.hbar * s.omega * (n + 0.5);
  if (!(En < 0.95 * pot.barrier_top()))
    throw EnergyOutOfRange("wkb_width: level too close to the barrier top");
  const double S = action(pot, En, nodes);
  const double t = classical_period(pot, En, nodes);
  const double g = use_g_factor ? g_factor((double)n) : 1.0;
  return std::exp(-2.0 * S / s.hbar) / (g * t);
}

double breit_wigner_norm(double E, double E_n, double t_n, double S_n, double mass, double hbar) {
  const double theta = std::exp(S_n / hbar);
  const double half_width = hbar / (2.0 * t_n * theta * theta);
  const double dE = E - E_n;
  return std::sqrt(mass * hbar / (2.0 * M_PI * t_n * t_n)) / theta /
         std::sqrt(dE * dE + half_width * half_width);
}

double linear_tp_bound(const Potential& pot, double x) {
  const double v1 = pot.real_deriv(x);
  const double v2 = pot.real_deriv2(x);
  if (std::abs(v2) < 1e-300) return std::numeric_limits<double>::infinity();
  return std::sqrt(pot.spec().m) * v1 * v1 / std::pow(std::abs(v2), 1.5);
}

SemiclassicalTable::SemiclassicalTable(const Potential& pot, int samples, int nodes) {
  const auto& s = pot.spec();
  V_b_ = s.V_b;
  E_lo_ = 0.05 * s.V_b;
  E_hi_ = 0.95 * pot.barrier_top();
  if (!(E_hi_ > E_lo_)) throw EnergyOutOfRange("SemiclassicalTable: empty energy band");
  deriv_step_ = 1e-4 * s.V_b;
  E_.resize(samples);
  std::vector<double> Sv(samples), tv(samples), tauv(samples);
  for (int i = 0; i < samples; ++i) {
    const double E = E_lo_ + (E_hi_ - E_lo_) * i / (samples - 1);
    E_[i] = E;
    const auto tp = pot.turning_points(E);
    auto v = [&](double x) { return pot.real_part(x); };
    Sv[i] = action_between(v, E, tp.a, tp.b, s.m, nodes);
    tv[i] = period_between(v, E, tp.c, tp.a, s.m, nodes);
    tauv[i] = barrier_time_between(v, E, tp.a, tp.b, s.m, nodes);
    if (!warn_) {
      for (double x : {tp.a, tp.b, tp.c})
        if (s.hbar > 0.1 * linear_tp_bound(pot, x)) warn_ = true;
    }
  }
  S_ = CubicSpline(E_, Sv);
  t_ = CubicSpline(E_, tv);
  tau_ = CubicSpline(E_, tauv);
}

double SemiclassicalTable::action_at(double E) const { return S_(E); }
double SemiclassicalTable::period_at(double E) const { return t_(E); }
double SemiclassicalTable::barrier_time_at(double E) const { return tau_(E); }

double SemiclassicalTable::barrier_time_deriv(double E) const {
  return (tau_(E + deriv_step_) - tau_(E - deriv_step_)) / (2.0 * deriv_step_);
}

void SemiclassicalTable::check_trust(cplx E) const {
  if (std::abs(E.imag()) > 0.2 * (E_hi_ - E_lo_))
    throw ContinuationOutOfRange("SemiclassicalTable: |Im E| outside the trust region");
}

cplx SemiclassicalTable::action_at(cplx E) const {
  check_trust(E);
  return S_(E);
}

cplx SemiclassicalTable::barrier_time_at(cplx E) const {
  check_trust(E);
  return tau_(E);
}

cplx SemiclassicalTable::barrier_time_deriv(cplx E) const {
  check_trust(E);
  return (tau_(E + deriv_step_) - tau_(E - deriv_step_)) / (2.0 * deriv_step_);
}

}  // namespace mwell
