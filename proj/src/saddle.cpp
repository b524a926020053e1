#include "mwell/saddle.hpp"

#include <cmath>

#include "mwell/errors.hpp"

namespace mwell {

namespace {

struct NBand {
  double lo, hi;  // level-index range covered by the table
};

NBand n_band(const SemiclassicalTable& table, double hbar, double omega) {
  return {table.E_lo() / (hbar * omega) - 0.5 + 1e-9,
          table.E_hi() / (hbar * omega) - 0.5 - 1e-9};
}

}  // namespace

SaddleResult solve_saddle(cplx alpha, const Potential& pot, const SemiclassicalTable& table) {
  const auto& s = pot.spec();
  const double omega = s.omega, hbar = s.hbar;
  const double a2 = std::norm(alpha);
  if (!(a2 > 0)) throw SaddleDiverged("solve_saddle: requires |alpha| > 0");
  const NBand band = n_band(table, hbar, omega);

  auto E_of = [&](double n) { return hbar * omega * (n + 0.5); };
  auto tau_n = [&](double n) { return table.barrier_time_at(E_of(n)); };
  auto F = [&](double n) { return a2 * std::exp(2.0 * omega * tau_n(n)); };

  // damped fixed point, switching to a bracketed root of n - F(n) if an
  // iterate escapes the band or progress stalls
  double n = std::min(std::max(a2, band.lo), band.hi);
  bool fixed_point_ok = false;
  double prev_step = 1e300;
  for (int it = 0; it < 10000; ++it) {
    const double fn = F(n);
    const double next = n + 0.5 * (fn - n);
    if (next < band.lo || next > band.hi) break;  // escaped: use the fallback
    const double step = std::abs(next - n);
    if (step < 1e-12 * std::abs(next)) {
      n = next;
      fixed_point_ok = true;
      break;
    }
    if (it > 200 && step > 0.9 * prev_step && step < 1.1 * prev_step) break;  // oscillating
    prev_step = step;
    n = next;
  }
  if (!fixed_point_ok) {
    auto h = [&](double x) { return x - F(x); };
    // scan for a sign change across the band
    const int scan = 400;
    double lo = band.lo, hi = band.hi, h_lo = h(lo);
    bool bracketed = false;
    for (int i = 1; i <= scan; ++i) {
      const double x = band.lo + (band.hi - band.lo) * i / scan;
      const double hx = h(x);
      if ((h_lo <= 0) != (hx <= 0)) {
        hi = x;
        bracketed = true;
        break;
      }
      lo = x;
      h_lo = hx;
    }
    if (!bracketed)
      throw SaddleDiverged("solve_saddle: no saddle inside the tabulated band");
    n = bisect(h, lo, hi, 1e-14);
    // Newton polish on h
    for (int it = 0; it < 60; ++it) {
      const double fn = F(n);
      const double hp = 1.0 - fn * 2.0 * omega * table.barrier_time_deriv(E_of(n)) * hbar * omega;
      if (hp == 0) break;
      const double step = (n - fn) / hp;
      const double next = n - step;
      if (next < band.lo || next > band.hi) break;
      n = next;
      if (std::abs(step) < 1e-13 * std::abs(n)) break;
    }
    if (std::abs(n - F(n)) > 1e-10 * std::abs(n))
      throw NoConvergence("solve_saddle: root polish did not converge");
  }

  SaddleResult r;
  r.alpha_abs = std::sqrt(a2);
  r.omega = omega;
  r.hbar = hbar;
  r.n0 = n;
  r.tau0 = tau_n(n);
  r.tau0_prime = hbar * omega * table.barrier_time_deriv(E_of(n));
  r.n1 = cplx(0, 2.0 * omega) / (1.0 - 2.0 * omega * r.n0 * r.tau0_prime);
  r.S0 = table.action_at(E_of(n));
  // f''0 = -S''0/hbar - 1/(2 n0) with S''0 = -hbar omega tau'0
  r.f0_pp = omega * r.tau0_prime - 1.0 / (2.0 * r.n0);
  if (!(r.f0_pp < 0)) throw SaddleDiverged("solve_saddle: f''0 >= 0, burst expansion invalid");
  r.f0 = cplx((0.5 - omega * r.tau0) * r.n0 - r.S0 / hbar, 0.0);
  r.dt_width = 1.0 / (std::sqrt(-r.f0_pp) * r.n0 * std::abs(r.n1));
  r.width_flagged = omega * r.dt_width >= 0.5;
  r.j_peak = std::exp(-a2) * omega / ((-r.f0_pp) * std::sqrt(2.0 * M_PI * r.n0)) *
             std::exp(2.0 * r.f0.real());
  r.dP = std::exp(-a2) * omega /
         std::sqrt(2.0 * std::pow(-r.f0_pp, 3) * std::pow(r.n0, 3) * std::norm(r.n1)) *
         std::exp((1.0 - 2.0 * omega * r.tau0) * r.n0 - 2.0 * r.S0 / hbar);
  r.burst_offset = std::arg(alpha) / omega;
  return r;
}

double burst_current(const SaddleResult& r, double t) {
  const double w2 = (-r.f0_pp) * std::norm(r.n1) * r.n0 * r.n0;
  return r.j_peak * std::exp(-w2 * t * t);
}

double full_saddle_current(cplx alpha, const Potential& pot, const SemiclassicalTable& table,
                           double t) {
  const auto& s = pot.spec();
  const double omega = s.omega, hbar = s.hbar;
  const double a2 = std::norm(alpha);
  if (!(a2 > 0)) throw SaddleDiverged("full_saddle_current: requires |alpha| > 0");
  const NBand band = n_band(table, hbar, omega);

  auto E_of = [&](cplx n) { return hbar * omega * (n + 0.5); };
  auto F = [&](cplx n) {
    return a2 * std::exp(2.0 * omega * (table.barrier_time_at(E_of(n)) + cplx(0, t)));
  };

  // start from the real saddle and walk the damped fixed point into the
  // complex plane; Newton on h(n) = n - F(n) finishes the job
  const SaddleResult real_saddle = solve_saddle(alpha, pot, table);
  cplx n = real_saddle.n0;
  for (int it = 0; it < 10000; ++it) {
    const cplx fn = F(n);
    const cplx next = n + 0.5 * (fn - n);
    if (next.real() < band.lo || next.real() > band.hi)
      throw SaddleDiverged("full_saddle_current: saddle left the tabulated band");
    if (std::abs(next - n) < 1e-13 * std::abs(next)) {
      n = next;
      break;
    }
    n = next;
  }
  for (int it = 0; it < 50; ++it) {
    const cplx fn = F(n);
    const cplx taup = hbar * omega * table.barrier_time_deriv(E_of(n));
    const cplx hp = 1.0 - fn * 2.0 * omega * taup;
    const cplx step = (n - fn) / hp;
    n -= step;
    if (n.real() < band.lo || n.real() > band.hi)
      throw SaddleDiverged("full_saddle_current: saddle left the tabulated band");
    if (std::abs(step) < 1e-13 * std::abs(n)) break;
  }

  const cplx tau_star = table.barrier_time_at(E_of(n));
  const cplx S_star = table.action_at(E_of(n));
  const cplx taup_star = hbar * omega * table.barrier_time_deriv(E_of(n));
  const cplx f_star = (0.5 - omega * tau_star) * n - S_star / hbar + cplx(0, omega * t) * n;
  const cplx fpp_star = omega * taup_star - 1.0 / (2.0 * n);
  return std::exp(-a2) * omega / (std::abs(fpp_star) * std::sqrt(2.0 * M_PI * std::abs(n))) *
         std::exp(2.0 * f_star.real());
}

}  // namespace mwell
