#ifndef MWELL_HAMILTONIAN_HPP
#define MWELL_HAMILTONIAN_HPP

#include <vector>

#include "mwell/grid.hpp"
#include "mwell/numerics.hpp"
#include "mwell/potential.hpp"

namespace mwell {

enum class Boundary { hard_wall, cap };

/// Tridiagonal Hamiltonian over the interior grid nodes with Dirichlet
/// conditions at both grid ends. The kinetic part is the 3-point second
/// difference; the diagonal carries the potential, whose imaginary part is
/// kept only under the cap boundary tag.
struct Hamiltonian {
  Grid grid;
  Boundary bc = Boundary::hard_wall;
  double mass = 1.0;
  double hbar = 1.0;
  double kinetic = 0.0;           // hbar^2 / (2 m h^2), the off-diagonal is -kinetic
  std::vector<cplx> diag;         // size grid.n - 2 (interior nodes)

  int interior() const { return (int)diag.size(); }
  bool is_real() const { return bc == Boundary::hard_wall; }

  /// Row-sum norm, used for residual tolerances.
  double inf_norm() const;

  /// y = H x on interior vectors.
  void apply(const std::vector<cplx>& x, std::vector<cplx>& y) const;
};

/// Assemble from a Potential. Throws GridTooCoarse when the spacing cannot
/// resolve the oscillator length (h > 0.2 sqrt(hbar / m omega)), and rejects
/// grids that do not enclose the well (Re V(x_min) >= 3 V_b) or that end
/// before the absorber under cap boundaries.
Hamiltonian assemble(const Potential& pot, const Grid& grid, Boundary bc);

/// Assemble from potential samples on the grid (one value per grid node,
/// boundary nodes included but unused). Used for free-particle and custom
/// references in tests.
Hamiltonian assemble_from_samples(const std::vector<cplx>& v, const Grid& grid, Boundary bc,
                                  double mass, double hbar);

}  // namespace mwell

#endif
