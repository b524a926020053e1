#include "mwell/observables.hpp"

#include <cmath>

#include "mwell/errors.hpp"

namespace mwell {

double current_at(std::span<const cplx> psi, const Grid& grid, double x, double mass,
                  double hbar) {
  if ((int)psi.size() != grid.n) throw OutOfGrid("current_at: psi size != grid.n");
  if (x < grid.x_min + 2.0 * grid.h() || x > grid.x_max - 2.0 * grid.h())
    throw OutOfGrid("current_at: probe point too close to the grid boundary");
  const int i = grid.index_near(x);
  const cplx dpsi = (psi[i + 1] - psi[i - 1]) / (2.0 * grid.h());
  return hbar / mass * std::imag(std::conj(psi[i]) * dpsi);
}

double prob_in_well(std::span<const cplx> psi, const Grid& grid, double x_T) {
  if ((int)psi.size() != grid.n) throw OutOfGrid("prob_in_well: psi size != grid.n");
  if (!grid.contains(x_T)) throw OutOfGrid("prob_in_well: x_T outside the grid");
  const int iT = grid.index_near(x_T);
  long double acc = 0.0L;
  for (int i = 0; i <= iT; ++i) {
    const long double p = (long double)std::norm(psi[i]);
    acc += (i == 0 || i == iT) ? 0.5L * p : p;
  }
  return (double)(acc * (long double)grid.h());
}

double total_norm(std::span<const cplx> psi, const Grid& grid) {
  if ((int)psi.size() != grid.n) throw OutOfGrid("total_norm: psi size != grid.n");
  long double acc = 0.0L;
  for (int i = 0; i < grid.n; ++i) {
    const long double p = (long double)std::norm(psi[i]);
    acc += (i == 0 || i == grid.n - 1) ? 0.5L * p : p;
  }
  return (double)(acc * (long double)grid.h());
}

cplx inner_to(std::span<const cplx> a, std::span<const cplx> b, const Grid& grid, double x_T) {
  if ((int)a.size() != grid.n || (int)b.size() != grid.n)
    throw OutOfGrid("inner_to: vector size != grid.n");
  if (!grid.contains(x_T)) throw OutOfGrid("inner_to: x_T outside the grid");
  const int iT = grid.index_near(x_T);
  long double re = 0.0L, im = 0.0L;
  for (int i = 0; i <= iT; ++i) {
    const cplx t = std::conj(a[i]) * b[i];
    const long double wgt = (i == 0 || i == iT) ? 0.5L : 1.0L;
    re += wgt * (long double)t.real();
    im += wgt * (long double)t.imag();
  }
  return cplx((double)(re * (long double)grid.h()), (double)(im * (long double)grid.h()));
}

}  // namespace mwell
