#include "mwell/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "mwell/errors.hpp"
#include "mwell/observables.hpp"
#include "quadprec.hpp"

namespace mwell {

namespace {

// QL with implicit shifts for a complex symmetric tridiagonal matrix
// (complex arithmetic version of the classic implicit tridiagonal QL).
// d: diagonal, e: off-diagonal (e[n-1] is workspace). Returns 0 on success,
// otherwise 1 + index of the eigenvalue that failed to converge.
int cmtql1(std::vector<cplx>& d, std::vector<cplx>& e) {
  const int n = (int)d.size();
  if (n == 1) return 0;
  e.resize(n, cplx(0));
  const double eps = 2.22e-16;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double s = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * s) break;
      }
      if (m == l) break;
      if (++iter > 80) return l + 1;
      cplx g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      cplx r = std::sqrt(g * g + 1.0);
      if (std::abs(g + r) < std::abs(g - r)) r = -r;
      g = d[m] - d[l] + e[l] / (g + r);
      cplx s(1), c(1), p(0);
      for (int i = m - 1; i >= l; --i) {
        cplx f = s * e[i], b = c * e[i];
        if (std::abs(f) >= std::abs(g)) {
          c = g / f;
          r = std::sqrt(c * c + 1.0);
          e[i + 1] = f * r;
          s = 1.0 / r;
          c *= s;
        } else {
          s = f / g;
          r = std::sqrt(s * s + 1.0);
          e[i + 1] = g * r;
          c = 1.0 / r;
          s *= c;
        }
        if (std::abs(r) < 1e-280) return l + 1;  // isotropic rotation breakdown
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      d[l] -= p;
      e[l] = g;
      e[m] = cplx(0);
    }
  }
  return 0;
}

// dense Hessenberg QR fallback (a tridiagonal matrix is already Hessenberg)
std::vector<cplx> zhseqr_eigenvalues(const Hamiltonian& h) {
  const int n = h.interior();
  if ((std::size_t)n * n > 200000000ull)
    throw SolverFailure("eigendecompose: fallback matrix would not fit in memory");
  std::vector<cplx> a((std::size_t)n * n, cplx(0));
  for (int i = 0; i < n; ++i) {
    a[(std::size_t)i * n + i] = h.diag[i];
    if (i + 1 < n) {
      a[(std::size_t)(i + 1) * n + i] = -h.kinetic;
      a[(std::size_t)i * n + (i + 1)] = -h.kinetic;
    }
  }
  std::vector<cplx> w(n);
  const int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, 1, n,
                                  reinterpret_cast<lapack_complex_double*>(a.data()), n,
                                  reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1);
  if (info != 0)
    throw SolverFailure("eigendecompose: zhseqr failed with info " + std::to_string(info));
  return w;
}

// deterministic start vector for inverse iteration
void seed_vector(std::vector<cplx>& v, std::uint64_t salt) {
  std::uint64_t s = 0x9e3779b97f4a7c15ull ^ salt;
  for (auto& z : v) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    const double re = (double)(s >> 11) * 0x1.0p-53 - 0.5;
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    const double im = (double)(s >> 11) * 0x1.0p-53 - 0.5;
    z = cplx(re, im);
  }
}

void normalize_l2(std::vector<cplx>& v) {
  long double s = 0.0L;
  for (auto& z : v) s += (long double)std::norm(z);
  const double inv = 1.0 / std::sqrt((double)s);
  for (auto& z : v) z *= inv;
}

// bilinear Rayleigh quotient v^T H v / v^T v with extended precision sums;
// falls back to the Hermitian quotient if the bilinear norm nearly vanishes
cplx rayleigh_polish(const Hamiltonian& h, const std::vector<cplx>& v) {
  const int n = h.interior();
  long double num_re = 0.0L, num_im = 0.0L, den_re = 0.0L, den_im = 0.0L;
  for (int i = 0; i < n; ++i) {
    cplx hv = h.diag[i] * v[i];
    if (i > 0) hv -= h.kinetic * v[i - 1];
    if (i + 1 < n) hv -= h.kinetic * v[i + 1];
    const cplx a = v[i] * hv;
    const cplx b = v[i] * v[i];
    num_re += (long double)a.real();
    num_im += (long double)a.imag();
    den_re += (long double)b.real();
    den_im += (long double)b.imag();
  }
  const long double den2 = den_re * den_re + den_im * den_im;
  if (den2 > 0.01L) {
    return cplx((double)((num_re * den_re + num_im * den_im) / den2),
                (double)((num_im * den_re - num_re * den_im) / den2));
  }
  long double hre = 0.0L, him = 0.0L;
  for (int i = 0; i < n; ++i) {
    cplx hv = h.diag[i] * v[i];
    if (i > 0) hv -= h.kinetic * v[i - 1];
    if (i + 1 < n) hv -= h.kinetic * v[i + 1];
    const cplx a = std::conj(v[i]) * hv;
    hre += (long double)a.real();
    him += (long double)a.imag();
  }
  return cplx((double)hre, (double)him);  // v is l2-normalized
}

double residual_norm(const Hamiltonian& h, cplx lambda, const std::vector<cplx>& v) {
  const int n = h.interior();
  long double s = 0.0L;
  for (int i = 0; i < n; ++i) {
    cplx r = (h.diag[i] - lambda) * v[i];
    if (i > 0) r -= h.kinetic * v[i - 1];
    if (i + 1 < n) r -= h.kinetic * v[i + 1];
    s += (long double)std::norm(r);
  }
  return std::sqrt((double)s);
}

// inverse iteration for the eigenvector belonging to the given eigenvalue;
// lambda is polished in place by a Rayleigh quotient after each solve
void inverse_iterate(const Hamiltonian& h, cplx& lambda, std::vector<cplx>& v, int sweeps) {
  const int n = h.interior();
  for (int it = 0; it < sweeps; ++it) {
    std::vector<cplx> lower(n - 1, cplx(-h.kinetic)), upper(n - 1, cplx(-h.kinetic));
    std::vector<cplx> diag(n);
    cplx shift = lambda;
    for (int i = 0; i < n; ++i) diag[i] = h.diag[i] - shift;
    TridiagLU lu(std::move(lower), std::move(diag), std::move(upper));
    if (lu.singular()) {
      shift += cplx(1e-13 * std::abs(lambda) + 1e-300, 0);
      std::vector<cplx> lo(n - 1, cplx(-h.kinetic)), up(n - 1, cplx(-h.kinetic)), dg(n);
      for (int i = 0; i < n; ++i) dg[i] = h.diag[i] - shift;
      lu = TridiagLU(std::move(lo), std::move(dg), std::move(up));
      if (lu.singular()) return;
    }
    if (!lu.solve(v)) return;
    normalize_l2(v);
    lambda = rayleigh_polish(h, v);
  }
}

}  // namespace

std::vector<EigenPair> eigendecompose(const Hamiltonian& h) {
  const int n = h.interior();
  std::vector<cplx> values;
  if (h.is_real()) {
    std::vector<double> d(n), e(n - 1, -h.kinetic);
    for (int i = 0; i < n; ++i) d[i] = h.diag[i].real();
    const int info = LAPACKE_dsterf(n, d.data(), e.data());
    if (info != 0)
      throw SolverFailure("eigendecompose: dsterf failed with info " + std::to_string(info));
    values.assign(d.begin(), d.end());
  } else {
    std::vector<cplx> d = h.diag, e(n - 1, cplx(-h.kinetic));
    const int rc = cmtql1(d, e);
    if (rc == 0) {
      values = std::move(d);
    } else {
      values = zhseqr_eigenvalues(h);
    }
  }
  std::sort(values.begin(), values.end(),
            [](const cplx& a, const cplx& b) { return a.real() < b.real(); });

  const double hnorm = h.inf_norm();
  const double tol = 1e-8 * hnorm;
  std::vector<EigenPair> pairs(n);
  std::vector<cplx> v(n);
  for (int idx = 0; idx < n; ++idx) {
    cplx lambda = values[idx];
    seed_vector(v, (std::uint64_t)idx);
    normalize_l2(v);
    inverse_iterate(h, lambda, v, 2);
    double res = residual_norm(h, lambda, v);
    int extra = 0;
    while (res > 1e-12 * hnorm && extra < 4) {
      inverse_iterate(h, lambda, v, 1);
      res = residual_norm(h, lambda, v);
      ++extra;
    }
    if (res > tol)
      throw SolverFailure("eigendecompose: residual above tolerance at index " +
                          std::to_string(idx));
    if (h.is_real()) lambda = cplx(lambda.real(), 0.0);  // real symmetric: exact
    auto& p = pairs[idx];
    p.value = lambda;
    p.vec.assign(h.grid.n, cplx(0));
    std::copy(v.begin(), v.end(), p.vec.begin() + 1);
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const EigenPair& a, const EigenPair& b) { return a.value.real() < b.value.real(); });
  return pairs;
}

std::vector<ResonantState> select_resonances(const std::vector<EigenPair>& pairs,
                                             const Hamiltonian& h, double x_T, int max_count) {
  if (pairs.empty()) throw NoResonancesFound("select_resonances: empty spectrum");
  const Grid& grid = h.grid;
  const double hbar = h.hbar, mass = h.mass;

  // energy ceiling: the barrier top, reconstructed from the assembled
  // potential right of the well minimum (equals the smoothed maximum)
  double ceiling = 0.0;
  for (int i = 0; i < h.interior(); ++i) {
    const double x = grid.x(i + 1);
    if (x <= 0.0) continue;
    ceiling = std::max(ceiling, h.diag[i].real() - 2.0 * h.kinetic);
  }
  if (!(ceiling > 0)) throw NoResonancesFound("select_resonances: no barrier on this grid");

  struct Candidate {
    cplx lambda;
    std::vector<cplx> vec;
    double loc;
  };
  std::vector<Candidate> cands;
  for (const auto& p : pairs) {
    const double E = p.value.real();
    if (!(E > 0.0) || !(E < ceiling)) continue;
    const double inwell = prob_in_well(p.vec, grid, x_T);
    const double whole = total_norm(p.vec, grid);
    const double loc = inwell / whole;
    if (loc < 0.5) continue;
    cands.push_back({p.value, p.vec, loc});
  }
  if (cands.empty()) throw NoResonancesFound("select_resonances: no localized states below the barrier");
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.lambda.real() < b.lambda.real(); });
  if (max_count > 0 && (int)cands.size() > max_count) cands.resize(max_count);

  std::vector<ResonantState> states;
  for (auto& c : cands) {
    // refine in quadruple precision on the interior vector
    std::vector<cplx> v(c.vec.begin() + 1, c.vec.end() - 1);
    cplx lambda = c.lambda;
    const double res = refine_eigenpair_quad(h.diag, h.kinetic, lambda, v);
    if (res > 1e-8 * h.inf_norm())
      throw SolverFailure("select_resonances: refinement failed near E = " +
                          std::to_string(lambda.real()));
    const double gamma = -2.0 * lambda.imag() / hbar;
    if (!(gamma > 0)) continue;  // not decaying: not a resonance

    ResonantState st;
    st.eps = lambda;
    st.E = lambda.real();
    st.Gamma = gamma;
    st.localization = c.loc;
    st.psi.assign(grid.n, cplx(0));
    std::copy(v.begin(), v.end(), st.psi.begin() + 1);

    // unit norm on (x_min, x_T], then real positive at the node nearest x_T
    const double pw = prob_in_well(st.psi, grid, x_T);
    const double scale = 1.0 / std::sqrt(pw);
    const cplx at_t = st.psi[grid.index_near(x_T)];
    const double mag = std::abs(at_t);
    cplx phase = mag > 0 ? std::conj(at_t) / mag : cplx(1, 0);
    for (auto& z : st.psi) z *= scale * phase;

    const cplx k = std::sqrt(2.0 * mass * st.eps);
    st.k_abs = std::abs(k);
    st.delta = std::arg(k);
    st.k_re = k.real();
    st.A = std::sqrt(mass * st.Gamma / st.k_re);
    states.push_back(std::move(st));
  }
  if (states.empty()) throw NoResonancesFound("select_resonances: all candidates rejected");

  std::sort(states.begin(), states.end(),
            [](const ResonantState& a, const ResonantState& b) { return a.E < b.E; });
  for (int i = 0; i < (int)states.size(); ++i) states[i].n = i;
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    const double dE = states[i + 1].E - states[i].E;
    if (dE < hbar * states[i].Gamma || dE < hbar * states[i + 1].Gamma)
      throw DuplicateLevel("select_resonances: unresolved pair near E = " +
                           std::to_string(states[i].E));
  }
  return states;
}

}  // namespace mwell
