#include "mwell/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "mwell/errors.hpp"
#include "mwell/observables.hpp"

namespace mwell {

void EvolutionConfig::validate(double omega) const {
  if (!(dt > 0)) throw std::invalid_argument("EvolutionConfig: dt must be positive");
  if (dt > 0.05 / omega) throw std::invalid_argument("EvolutionConfig: dt > 0.05 / omega");
  if (T < 2.0 * M_PI / omega) throw std::invalid_argument("EvolutionConfig: T below one period");
  if (record_stride < 1) throw std::invalid_argument("EvolutionConfig: record_stride < 1");
}

void evolve(const Hamiltonian& h, std::span<const cplx> psi0, const EvolutionConfig& cfg,
            double x_T, const EvolutionObserver& obs, std::span<const double> probe_points,
            const SnapshotObserver& snap) {
  const int n = h.interior();
  if ((int)psi0.size() != h.grid.n) throw OutOfGrid("evolve: psi0 size != grid.n");
  if (!(cfg.dt > 0) || cfg.record_stride < 1) throw std::invalid_argument("evolve: bad config");

  // Cayley factors: A psi' = B psi with A = 1 + i dt H / 2 hbar, B = its mirror
  const cplx ifac = cplx(0, cfg.dt / (2.0 * h.hbar));
  std::vector<cplx> a_diag(n), b_diag(n);
  for (int i = 0; i < n; ++i) {
    a_diag[i] = 1.0 + ifac * h.diag[i];
    b_diag[i] = 1.0 - ifac * h.diag[i];
  }
  const cplx a_off = -ifac * h.kinetic;
  const cplx b_off = ifac * h.kinetic;
  TridiagLU lu(std::vector<cplx>(n - 1, a_off), a_diag, std::vector<cplx>(n - 1, a_off));
  if (lu.singular()) throw SolverFailure("evolve: Cayley matrix is singular");

  std::vector<cplx> psi(psi0.begin(), psi0.end());
  std::vector<cplx> rhs(n);

  const long steps = (long)std::llround(cfg.T / cfg.dt);
  double norm_prev = total_norm(psi, h.grid);

  auto record = [&](long step) {
    EvolutionSample s;
    s.t = step * cfg.dt;
    s.P = prob_in_well(psi, h.grid, x_T);
    s.j = current_at(psi, h.grid, x_T, h.mass, h.hbar);
    s.norm = total_norm(psi, h.grid);
    s.j_probes.reserve(probe_points.size());
    for (double xp : probe_points)
      s.j_probes.push_back(current_at(psi, h.grid, xp, h.mass, h.hbar));
    obs(s);
  };

  record(0);
  if (snap && cfg.snapshot_stride > 0) snap(0.0, psi);

  for (long step = 1; step <= steps; ++step) {
    // rhs = B psi on the interior
    for (int i = 0; i < n; ++i) {
      cplx acc = b_diag[i] * psi[i + 1];
      acc += b_off * psi[i];      // psi[i] is the left neighbor on the full grid
      acc += b_off * psi[i + 2];  // right neighbor (grid ends stay zero)
      rhs[i] = acc;
    }
    if (!lu.solve(rhs)) throw SolverFailure("evolve: tridiagonal solve failed");
    std::copy(rhs.begin(), rhs.end(), psi.begin() + 1);

    if (h.is_real()) {
      const double nn = total_norm(psi, h.grid);
      if (nn > norm_prev * (1.0 + 1e-6))
        throw StepUnstable("evolve: hard wall norm grew by more than 1e-6 in one step");
      norm_prev = nn;
    }
    if (step % cfg.record_stride == 0 || step == steps) record(step);
    if (snap && cfg.snapshot_stride > 0 && step % cfg.snapshot_stride == 0)
      snap(step * cfg.dt, psi);
  }
}

EvolutionResult evolve_collect(const Hamiltonian& h, std::span<const cplx> psi0,
                               const EvolutionConfig& cfg, double x_T,
                               std::span<const double> probe_points) {
  EvolutionResult out;
  out.current.tag = Provenance::evolution;
  out.probes.resize(probe_points.size());
  evolve(h, psi0, cfg, x_T,
         [&](const EvolutionSample& s) {
           out.t.push_back(s.t);
           out.P.push_back(s.P);
           out.norm.push_back(s.norm);
           out.current.t.push_back(s.t);
           out.current.j.push_back(s.j);
           for (std::size_t i = 0; i < s.j_probes.size(); ++i)
             out.probes[i].push_back(s.j_probes[i]);
         },
         probe_points);
  return out;
}

ResidualReport compare_series(const CurrentSeries& a, const CurrentSeries& b, double t_lo,
                              double t_hi) {
  if (a.t.empty() || b.t.empty()) throw NoOverlap("compare_series: empty series");
  const double lo = std::max({t_lo, a.t.front(), b.t.front()});
  const double hi = std::min({t_hi, a.t.back(), b.t.back()});
  if (!(hi > lo)) throw NoOverlap("compare_series: windows do not overlap");

  auto interp = [](const CurrentSeries& s, double t) {
    auto it = std::lower_bound(s.t.begin(), s.t.end(), t);
    if (it == s.t.begin()) return s.j.front();
    if (it == s.t.end()) return s.j.back();
    const std::size_t i = it - s.t.begin();
    const double w = (t - s.t[i - 1]) / (s.t[i] - s.t[i - 1]);
    return (1.0 - w) * s.j[i - 1] + w * s.j[i];
  };

  ResidualReport r;
  r.t_lo = lo;
  r.t_hi = hi;
  long double sq = 0.0L;
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    const double t = a.t[i];
    if (t < lo || t > hi) continue;
    const double d = std::abs(a.j[i] - interp(b, t));
    r.max_abs = std::max(r.max_abs, d);
    sq += (long double)d * d;
    r.peak = std::max(r.peak, std::abs(a.j[i]));
    ++r.points;
  }
  if (r.points == 0) throw NoOverlap("compare_series: no samples inside the window");
  r.rms = std::sqrt((double)(sq / r.points));
  if (r.peak > 0) {
    r.max_abs_over_peak = r.max_abs / r.peak;
    r.rms_over_peak = r.rms / r.peak;
  }
  return r;
}

double reflection_time(const Potential& pot, const Grid& grid, double E_char) {
  if (!(E_char > 0)) throw EnergyOutOfRange("reflection_time: E_char must be positive");
  const double b = E_char < pot.barrier_top() ? pot.turning_points(E_char).b
                                              : pot.spec().L + pot.spec().w;
  const double v = std::sqrt(2.0 * E_char / pot.spec().m);
  return 2.0 * (grid.x_max - b) / v;
}

}  // namespace mwell
