#include "mwell/current.hpp"

#include <cmath>

#include "mwell/errors.hpp"
#include "mwell/wkb.hpp"

namespace mwell {

LevelData level_from_state(const ResonantState& st) {
  return LevelData{st.E, st.Gamma, st.k_re, st.k_abs, st.delta};
}

std::vector<LevelData> levels_from_states(std::span<const ResonantState> states) {
  std::vector<LevelData> out;
  out.reserve(states.size());
  for (const auto& st : states) out.push_back(level_from_state(st));
  return out;
}

std::vector<LevelData> wkb_levels(const Potential& pot, int count, bool use_g_factor) {
  const auto& s = pot.spec();
  std::vector<LevelData> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) {
    LevelData lv;
    lv.E = s.hbar * s.omega * (n + 0.5);
    lv.Gamma = wkb_width(pot, n, use_g_factor);
    lv.k_re = lv.k_abs = std::sqrt(2.0 * s.m * lv.E);
    lv.delta = 0.0;
    out.push_back(lv);
  }
  return out;
}

CurrentSeries formula_current(std::span<const LevelData> levels, std::span<const cplx> c,
                              std::span<const double> times, double mass, double hbar,
                              double omega) {
  (void)mass;
  const int n = (int)levels.size();
  if ((int)c.size() != n) throw IndexMismatch("formula_current: coefficient/basis mismatch");

  std::vector<double> mag(n), theta(n);
  for (int i = 0; i < n; ++i) {
    mag[i] = std::abs(c[i]);
    theta[i] = std::arg(c[i]);
  }

  CurrentSeries out;
  out.tag = Provenance::formula;
  out.t.assign(times.begin(), times.end());
  out.j.resize(times.size());

  for (std::size_t it = 0; it < times.size(); ++it) {
    const double t = times[it];
    double j = 0.0;
    for (int a = 0; a < n; ++a) j += mag[a] * mag[a] * levels[a].Gamma * std::exp(-levels[a].Gamma * t);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto& la = levels[a];
        const auto& lb = levels[b];
        const double amp = mag[a] * mag[b] * lb.k_abs *
                           std::sqrt(la.Gamma * lb.Gamma / (la.k_re * lb.k_re));
        const double phase = (la.E - lb.E) * t / hbar + (theta[b] - theta[a]) + lb.delta;
        j += amp * std::cos(phase) * std::exp(-0.5 * (la.Gamma + lb.Gamma) * t);
      }
    }
    out.j[it] = j;
  }

  // annotate the window where the expansion is trustworthy: after one period
  // and before decay or the late-time tail takes over
  double gbar = average_rate(levels, c);
  double smax = 0.0, gamma0 = levels.empty() ? 0.0 : levels[0].Gamma;
  for (const auto& lv : levels) {
    smax = std::max(smax, -0.5 * hbar * std::log(std::max(lv.Gamma * 2.0 * M_PI / omega, 1e-300)));
    gamma0 = std::min(gamma0, lv.Gamma);
  }
  out.valid_t_min = 2.0 * M_PI / omega;
  out.valid_t_max = std::min(gbar > 0 ? 5.0 / gbar : 1e300,
                             gamma0 > 0 ? 8.0 * smax / (hbar * gamma0) : 1e300);
  return out;
}

double average_rate(std::span<const LevelData> levels, std::span<const cplx> c) {
  if (levels.size() != c.size()) throw IndexMismatch("average_rate: coefficient/basis mismatch");
  double g = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) g += std::norm(c[i]) * levels[i].Gamma;
  return g;
}

double per_cycle_leak(double gamma_bar, double omega) {
  if (!(gamma_bar >= 0) || !(omega > 0)) throw std::invalid_argument("per_cycle_leak: bad input");
  return 2.0 * M_PI * gamma_bar / omega;
}

std::vector<double> survival_from_current(const CurrentSeries& series) {
  std::vector<double> p(series.t.size());
  if (p.empty()) return p;
  p[0] = 1.0;
  long double acc = 0.0L;
  for (std::size_t i = 1; i < p.size(); ++i) {
    acc += 0.5L * (long double)(series.j[i] + series.j[i - 1]) *
           (long double)(series.t[i] - series.t[i - 1]);
    p[i] = (double)(1.0L - acc);
  }
  return p;
}

}  // namespace mwell
