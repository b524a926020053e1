#include "mwell/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mwell {

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: n < 1");
  x.resize(n);
  w.resize(n);
  // Newton iteration on Legendre polynomials, nodes seeded by the Chebyshev
  // approximation; standard and accurate to machine precision.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

const GaussLegendre& gauss_legendre(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const auto& gl = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += gl.w[i] * f(mid + half * gl.x[i]);
  return acc * half;
}

double integrate_sqrt_reg(const std::function<double(double)>& f, double a, double b, int n) {
  if (!(b > a)) return 0.0;
  const auto& gl = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  // left half: x = a + u^2, dx = 2u du
  {
    const double umax = std::sqrt(mid - a);
    for (int i = 0; i < n; ++i) {
      const double u = 0.5 * umax * (gl.x[i] + 1.0);
      acc += 0.5 * umax * gl.w[i] * f(a + u * u) * 2.0 * u;
    }
  }
  // right half: x = b - u^2
  {
    const double umax = std::sqrt(b - mid);
    for (int i = 0; i < n; ++i) {
      const double u = 0.5 * umax * (gl.x[i] + 1.0);
      acc += 0.5 * umax * gl.w[i] * f(b - u * u) * 2.0 * u;
    }
  }
  return acc;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("bisect: root not bracketed");
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = (int)x_.size();
  if (n < 3 || y_.size() != x_.size()) throw std::invalid_argument("CubicSpline: bad input");
  std::vector<double> h(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    h[i] = x_[i + 1] - x_[i];
    if (!(h[i] > 0)) throw std::invalid_argument("CubicSpline: x not increasing");
  }
  // second derivatives sigma at the nodes; not-a-knot ends avoid the
  // artificial flattening a natural spline forces on the boundary intervals
  std::vector<double> sigma(n, 0.0);
  if (n == 3) {
    // single parabola through three points
    const double d1 = (y_[1] - y_[0]) / h[0], d2 = (y_[2] - y_[1]) / h[1];
    const double s = 2.0 * (d2 - d1) / (h[0] + h[1]);
    sigma[0] = sigma[1] = sigma[2] = s;
  } else {
    const int m = n - 2;  // unknowns sigma_1 .. sigma_{n-2}
    std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
    for (int i = 1; i <= n - 2; ++i)
      rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
    for (int i = 2; i <= n - 3; ++i) {
      sub[i - 1] = h[i - 1];
      diag[i - 1] = 2.0 * (h[i - 1] + h[i]);
      sup[i - 1] = h[i];
    }
    // sigma_0 eliminated through sigma_0 h1 = sigma_1 (h0 + h1) - sigma_2 h0
    diag[0] = 2.0 * (h[0] + h[1]) + h[0] * (h[0] + h[1]) / h[1];
    sup[0] = h[1] - h[0] * h[0] / h[1];
    // mirrored elimination of sigma_{n-1}
    const double ha = h[n - 2], hb = h[n - 3];
    diag[m - 1] = 2.0 * (hb + ha) + ha * (ha + hb) / hb;
    sub[m - 1] = hb - ha * ha / hb;
    // Thomas sweep
    for (int i = 1; i < m; ++i) {
      const double w = sub[i] / diag[i - 1];
      diag[i] -= w * sup[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    sigma[n - 2] = rhs[m - 1] / diag[m - 1];
    for (int i = m - 2; i >= 0; --i)
      sigma[i + 1] = (rhs[i] - sup[i] * sigma[i + 2]) / diag[i];
    sigma[0] = ((h[0] + h[1]) * sigma[1] - h[0] * sigma[2]) / h[1];
    sigma[n - 1] = ((ha + hb) * sigma[n - 2] - ha * sigma[n - 3]) / hb;
  }
  b_.resize(n - 1);
  c_.resize(n - 1);
  d_.resize(n - 1);
  for (int j = 0; j < n - 1; ++j) {
    c_[j] = 0.5 * sigma[j];
    d_[j] = (sigma[j + 1] - sigma[j]) / (6.0 * h[j]);
    b_[j] = (y_[j + 1] - y_[j]) / h[j] - h[j] * (2.0 * sigma[j] + sigma[j + 1]) / 6.0;
  }
}

int CubicSpline::interval(double x) const {
  int lo = 0, hi = (int)x_.size() - 1;
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return (int)x_.size() - 2;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (x_[mid] <= x ? lo : hi) = mid;
  }
  return lo;
}

double CubicSpline::operator()(double x) const {
  const int j = interval(x);
  const double t = x - x_[j];
  return y_[j] + t * (b_[j] + t * (c_[j] + t * d_[j]));
}

cplx CubicSpline::operator()(cplx x) const {
  const int j = interval(x.real());
  const cplx t = x - x_[j];
  return y_[j] + t * (b_[j] + t * (c_[j] + t * d_[j]));
}

TridiagLU::TridiagLU(std::vector<cplx> lower, std::vector<cplx> diag, std::vector<cplx> upper)
    : n_((int)diag.size()), dl_(std::move(lower)), d_(std::move(diag)), du_(std::move(upper)) {
  if ((int)dl_.size() != n_ - 1 || (int)du_.size() != n_ - 1)
    throw std::invalid_argument("TridiagLU: size mismatch");
  du_.resize(n_, cplx(0));
  du2_.assign(n_, cplx(0));
  piv_.assign(n_, 0);
  // LU with partial pivoting on a tridiagonal matrix (two superdiagonals fill in)
  for (int i = 0; i < n_ - 1; ++i) {
    if (std::abs(d_[i]) >= std::abs(dl_[i])) {
      piv_[i] = 0;
      if (d_[i] == cplx(0)) {
        singular_ = true;
        return;
      }
      const cplx m = dl_[i] / d_[i];
      dl_[i] = m;
      d_[i + 1] -= m * du_[i];
    } else {
      piv_[i] = 1;
      const cplx m = d_[i] / dl_[i];
      d_[i] = dl_[i];
      dl_[i] = m;
      const cplx tmp = du_[i];
      du_[i] = d_[i + 1];
      d_[i + 1] = tmp - m * d_[i + 1];
      if (i + 1 < n_ - 1) {
        du2_[i] = du_[i + 1];
        du_[i + 1] = -m * du_[i + 1];
      }
    }
  }
  if (d_[n_ - 1] == cplx(0)) singular_ = true;
}

bool TridiagLU::solve(std::vector<cplx>& rhs) const {
  if (singular_ || (int)rhs.size() != n_) return false;
  for (int i = 0; i < n_ - 1; ++i) {
    if (piv_[i]) std::swap(rhs[i], rhs[i + 1]);
    rhs[i + 1] -= dl_[i] * rhs[i];
  }
  rhs[n_ - 1] /= d_[n_ - 1];
  if (n_ >= 2) rhs[n_ - 2] = (rhs[n_ - 2] - du_[n_ - 2] * rhs[n_ - 1]) / d_[n_ - 2];
  for (int i = n_ - 3; i >= 0; --i)
    rhs[i] = (rhs[i] - du_[i] * rhs[i + 1] - du2_[i] * rhs[i + 2]) / d_[i];
  return true;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace mwell
