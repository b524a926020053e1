#ifndef MWELL_NUMERICS_HPP
#define MWELL_NUMERICS_HPP

#include <complex>
#include <functional>
#include <vector>

namespace mwell {

using cplx = std::complex<double>;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n);
};

/// Cached rule (rules are reused heavily when tabulating actions).
const GaussLegendre& gauss_legendre(int n);

/// Plain Gauss-Legendre quadrature of f over (a, b).
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

/// Quadrature of f over (a, b) where f may behave like a square root
/// (or an inverse square root) of the distance to either endpoint.
/// Each half interval is mapped with u^2 = |x - endpoint|, which makes the
/// integrand smooth for linear turning points.
double integrate_sqrt_reg(const std::function<double(double)>& f, double a, double b, int n);

/// Bisection to absolute tolerance xtol; requires f(lo)*f(hi) <= 0.
double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol);

/// Natural cubic spline with evaluation for real and complex arguments.
/// Complex evaluation selects the interval by the real part and evaluates the
/// local cubic there (used as an analytic continuation with a finite trust
/// region; the caller is responsible for enforcing it).
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  cplx operator()(cplx x) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  int interval(double x) const;
  std::vector<double> x_, y_, b_, c_, d_;  // y + polynomial coefficients per interval
};

/// Tridiagonal LU with partial pivoting, factored once and solved many times.
/// Row i of the matrix is [lower[i-1], diag[i], upper[i]].
class TridiagLU {
 public:
  TridiagLU(std::vector<cplx> lower, std::vector<cplx> diag, std::vector<cplx> upper);
  /// Solve in place; returns false if a pivot was exactly zero.
  bool solve(std::vector<cplx>& rhs) const;
  bool singular() const { return singular_; }

 private:
  int n_ = 0;
  bool singular_ = false;
  std::vector<cplx> du_, du2_, dl_, d_;
  std::vector<int> piv_;
};

/// FNV-1a hash of a byte string, for run manifests.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace mwell

#endif
