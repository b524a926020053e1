#include "quadprec.hpp"

#include <quadmath.h>

#include <cmath>

namespace mwell {

namespace {

struct qcplx {
  __float128 re = 0, im = 0;
};

inline qcplx operator+(qcplx a, qcplx b) { return {a.re + b.re, a.im + b.im}; }
inline qcplx operator-(qcplx a, qcplx b) { return {a.re - b.re, a.im - b.im}; }
inline qcplx operator*(qcplx a, qcplx b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline qcplx operator*(__float128 s, qcplx a) { return {s * a.re, s * a.im}; }
inline qcplx conj(qcplx a) { return {a.re, -a.im}; }
inline __float128 abs2(qcplx a) { return a.re * a.re + a.im * a.im; }
inline __float128 qabs(qcplx a) { return sqrtq(abs2(a)); }
inline qcplx operator/(qcplx a, qcplx b) {
  const __float128 d = abs2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline qcplx from(cplx z) { return {(__float128)z.real(), (__float128)z.imag()}; }
inline cplx to_double(qcplx z) { return cplx((double)z.re, (double)z.im); }

// tridiagonal solve (T - lambda) x = rhs with partial pivoting, quad precision
bool solve_shifted(const std::vector<qcplx>& d, __float128 off, qcplx lambda,
                   std::vector<qcplx>& x) {
  const int n = (int)d.size();
  std::vector<qcplx> dl(n, qcplx{off, 0}), dg(n), du(n, qcplx{off, 0}), du2(n, qcplx{0, 0});
  for (int i = 0; i < n; ++i) dg[i] = d[i] - lambda;
  dl[n - 1] = du[n - 1] = qcplx{0, 0};
  // forward elimination with row swaps
  for (int i = 0; i < n - 1; ++i) {
    if (qabs(dg[i]) >= qabs(dl[i])) {
      if (abs2(dg[i]) == 0) return false;
      const qcplx m = dl[i] / dg[i];
      dg[i + 1] = dg[i + 1] - m * du[i];
      x[i + 1] = x[i + 1] - m * x[i];
      dl[i] = qcplx{0, 0};
    } else {
      const qcplx m = dg[i] / dl[i];
      qcplx t = dg[i + 1];
      dg[i] = dl[i];
      dg[i + 1] = du[i] - m * t;
      du[i] = t;
      if (i + 1 < n - 1) {
        du2[i] = du[i + 1];
        du[i + 1] = qcplx{0, 0} - m * du[i + 1];
      }
      std::swap(x[i], x[i + 1]);
      x[i + 1] = x[i + 1] - m * x[i];
    }
  }
  if (abs2(dg[n - 1]) == 0) return false;
  x[n - 1] = x[n - 1] / dg[n - 1];
  if (n >= 2) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dg[n - 2];
  for (int i = n - 3; i >= 0; --i)
    x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dg[i];
  return true;
}

}  // namespace

double refine_eigenpair_quad(const std::vector<cplx>& diag, double kinetic, cplx& lambda,
                             std::vector<cplx>& v, int max_iter) {
  const int n = (int)diag.size();
  std::vector<qcplx> d(n), x(n);
  for (int i = 0; i < n; ++i) d[i] = from(diag[i]);
  const __float128 off = -(__float128)kinetic;
  for (int i = 0; i < n; ++i) x[i] = from(v[i]);
  qcplx lam = from(lambda);

  auto normalize = [&](std::vector<qcplx>& y) {
    __float128 s = 0;
    for (auto& z : y) s += abs2(z);
    s = sqrtq(s);
    for (auto& z : y) z = qcplx{z.re / s, z.im / s};
  };
  auto residual = [&](const std::vector<qcplx>& y, qcplx l) {
    __float128 s = 0;
    for (int i = 0; i < n; ++i) {
      qcplx r = (d[i] - l) * y[i];
      if (i > 0) r = r + qcplx{off, 0} * y[i - 1];
      if (i + 1 < n) r = r + qcplx{off, 0} * y[i + 1];
      s += abs2(r);
    }
    return sqrtq(s);
  };

  normalize(x);
  __float128 res_prev = residual(x, lam);
  for (int it = 0; it < max_iter; ++it) {
    std::vector<qcplx> y = x;
    if (!solve_shifted(d, off, lam, y)) {
      // exactly singular shift: nudge off by one part in 1e30
      lam.re += fabsq(lam.re) * 1e-30Q + 1e-30Q;
      y = x;
      if (!solve_shifted(d, off, lam, y)) break;
    }
    normalize(y);
    // bilinear Rayleigh quotient: for complex symmetric T the left eigenvector
    // is the transpose of the right one, giving cubic convergence
    qcplx num{0, 0}, den{0, 0};
    for (int i = 0; i < n; ++i) {
      qcplx ty = (d[i] * y[i]);
      if (i > 0) ty = ty + qcplx{off, 0} * y[i - 1];
      if (i + 1 < n) ty = ty + qcplx{off, 0} * y[i + 1];
      num = num + y[i] * ty;
      den = den + y[i] * y[i];
    }
    qcplx lam_new = lam;
    if (sqrtq(abs2(den)) > 0.1Q) {
      lam_new = num / den;
    } else {
      // quasi-null bilinear norm: fall back to the Hermitian quotient
      qcplx hnum{0, 0};
      for (int i = 0; i < n; ++i) {
        qcplx ty = d[i] * y[i];
        if (i > 0) ty = ty + qcplx{off, 0} * y[i - 1];
        if (i + 1 < n) ty = ty + qcplx{off, 0} * y[i + 1];
        hnum = hnum + conj(y[i]) * ty;
      }
      lam_new = hnum;  // y has unit Hermitian norm
    }
    const __float128 res = residual(y, lam_new);
    if (res <= res_prev || it == 0) {
      x = y;
      lam = lam_new;
      res_prev = res;
    } else {
      break;  // stagnated at the quad precision floor
    }
    if (res < 1e-28Q * qabs(lam)) break;
  }

  for (int i = 0; i < n; ++i) v[i] = to_double(x[i]);
  lambda = to_double(lam);
  return (double)res_prev;
}

}  // namespace mwell
