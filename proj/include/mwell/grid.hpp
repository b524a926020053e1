#ifndef MWELL_GRID_HPP
#define MWELL_GRID_HPP

#include <cmath>
#include <stdexcept>

namespace mwell {

/// Uniform spatial grid with n points from x_min to x_max inclusive.
struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  int n = 0;

  Grid() = default;
  Grid(double xmin, double xmax, int npts) : x_min(xmin), x_max(xmax), n(npts) {
    if (n < 16 || !(x_max > x_min)) throw std::invalid_argument("Grid: need n >= 16 and x_max > x_min");
  }

  /// Grid with spacing as close as possible to h (n is derived).
  static Grid from_step(double xmin, double xmax, double h) {
    if (!(h > 0)) throw std::invalid_argument("Grid: h must be positive");
    const int npts = (int)std::lround((xmax - xmin) / h) + 1;
    return Grid(xmin, xmax, npts);
  }

  double h() const { return (x_max - x_min) / (n - 1); }
  double x(int i) const { return x_min + h() * i; }
  int index_near(double xq) const {
    int i = (int)std::lround((xq - x_min) / h());
    if (i < 0) i = 0;
    if (i > n - 1) i = n - 1;
    return i;
  }
  bool contains(double xq) const { return xq >= x_min && xq <= x_max; }
};

}  // namespace mwell

#endif
