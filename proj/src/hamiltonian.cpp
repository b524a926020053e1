#include "mwell/hamiltonian.hpp"

#include <cmath>

#include "mwell/errors.hpp"

namespace mwell {

double Hamiltonian::inf_norm() const {
  double worst = 0.0;
  for (int i = 0; i < interior(); ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += kinetic;
    if (i + 1 < interior()) row += kinetic;
    worst = std::max(worst, row);
  }
  return worst;
}

void Hamiltonian::apply(const std::vector<cplx>& x, std::vector<cplx>& y) const {
  const int n = interior();
  y.resize(n);
  for (int i = 0; i < n; ++i) {
    cplx acc = diag[i] * x[i];
    if (i > 0) acc -= kinetic * x[i - 1];
    if (i + 1 < n) acc -= kinetic * x[i + 1];
    y[i] = acc;
  }
}

Hamiltonian assemble_from_samples(const std::vector<cplx>& v, const Grid& grid, Boundary bc,
                                  double mass, double hbar) {
  if ((int)v.size() != grid.n) throw std::invalid_argument("assemble: sample count != grid.n");
  Hamiltonian h;
  h.grid = grid;
  h.bc = bc;
  h.mass = mass;
  h.hbar = hbar;
  const double dx = grid.h();
  h.kinetic = hbar * hbar / (2.0 * mass * dx * dx);
  h.diag.resize(grid.n - 2);
  for (int i = 1; i < grid.n - 1; ++i) {
    cplx vi = v[i];
    if (bc == Boundary::hard_wall) vi = cplx(vi.real(), 0.0);
    h.diag[i - 1] = 2.0 * h.kinetic + vi;
  }
  return h;
}

Hamiltonian assemble(const Potential& pot, const Grid& grid, Boundary bc) {
  const auto& s = pot.spec();
  const double d = std::sqrt(s.hbar / (s.m * s.omega));
  if (grid.h() > 0.2 * d)
    throw GridTooCoarse("assemble: h > 0.2 oscillator lengths, low-lying states unresolved");
  if (pot.real_part(grid.x_min) < 3.0 * s.V_b)
    throw std::invalid_argument("assemble: grid must start deep in the left harmonic arm");
  if (bc == Boundary::cap && !(grid.x_max > s.x_cap))
    throw std::invalid_argument("assemble: cap grid must extend past the absorber onset");
  std::vector<cplx> v(grid.n);
  for (int i = 0; i < grid.n; ++i) v[i] = pot.eval(grid.x(i));
  return assemble_from_samples(v, grid, bc, s.m, s.hbar);
}

}  // namespace mwell
