#ifndef MWELL_OBSERVABLES_HPP
#define MWELL_OBSERVABLES_HPP

#include <span>
#include <vector>

#include "mwell/grid.hpp"
#include "mwell/numerics.hpp"

namespace mwell {

/// Probability current (hbar/m) Im[psi* d_x psi] at the grid node nearest x,
/// with a central difference derivative. Requires x at least 2h inside the grid.
double current_at(std::span<const cplx> psi, const Grid& grid, double x, double mass,
                  double hbar);

/// Trapezoidal integral of |psi|^2 from x_min to x_T (snapped to the nearest
/// grid node). The accumulation is compensated so that exponentially small
/// overlaps are not drowned in rounding noise.
double prob_in_well(std::span<const cplx> psi, const Grid& grid, double x_T);

/// Trapezoidal norm over the whole grid.
double total_norm(std::span<const cplx> psi, const Grid& grid);

/// Trapezoidal inner product <a|b> over (x_min, x_T].
cplx inner_to(std::span<const cplx> a, std::span<const cplx> b, const Grid& grid, double x_T);

}  // namespace mwell

#endif
