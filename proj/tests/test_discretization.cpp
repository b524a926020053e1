#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "mwell/errors.hpp"
#include "mwell/hamiltonian.hpp"
#include "mwell/observables.hpp"
#include "mwell/spectral.hpp"

using namespace mwell;

namespace {

Hamiltonian pure_harmonic(double x_half, double h, Boundary bc) {
  Grid g = Grid::from_step(-x_half, x_half, h);
  std::vector<cplx> v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = 0.5 * g.x(i) * g.x(i);
  return assemble_from_samples(v, g, bc, 1.0, 1.0);
}

}  // namespace

TEST_CASE("free particle spectrum equals the discrete Laplacian closed form") {
  Grid g = Grid::from_step(0.0, 10.0, 10.0 / 63.0);
  std::vector<cplx> v(g.n, cplx(0));
  auto h = assemble_from_samples(v, g, Boundary::hard_wall, 1.0, 1.0);
  auto pairs = eigendecompose(h);
  REQUIRE((int)pairs.size() == g.n - 2);
  const double length = g.x_max - g.x_min;
  for (int j = 1; j <= g.n - 2; ++j) {
    const double k = M_PI * j / length;
    const double exact = 2.0 / (g.h() * g.h()) * std::pow(std::sin(0.5 * k * g.h()), 2);
    CHECK(pairs[j - 1].value.real() == doctest::Approx(exact).epsilon(1e-10));
    CHECK(pairs[j - 1].value.imag() == 0.0);
  }
}

TEST_CASE("harmonic ground state at h = d/20 within 1e-4 relative") {
  auto h = pure_harmonic(12.0, 0.05, Boundary::hard_wall);
  auto pairs = eigendecompose(h);
  CHECK(pairs[0].value.real() == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("second order convergence of the lowest harmonic level") {
  auto coarse = pure_harmonic(12.0, 0.08, Boundary::hard_wall);
  auto fine = pure_harmonic(12.0, 0.04, Boundary::hard_wall);
  const double e_coarse = eigendecompose(coarse)[0].value.real();
  const double e_fine = eigendecompose(fine)[0].value.real();
  const double ratio = std::abs(e_coarse - 0.5) / std::abs(e_fine - 0.5);
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("hard wall assembly is purely real") {
  Potential pot(fixtures::compact_spec());
  auto h = assemble(pot, fixtures::compact_grid(), Boundary::hard_wall);
  for (const auto& d : h.diag) CHECK(d.imag() == 0.0);
  CHECK(h.is_real());
}

TEST_CASE("cap assembly has non-positive imaginary diagonal") {
  Potential pot(fixtures::compact_spec());
  auto h = assemble(pot, fixtures::compact_grid(), Boundary::cap);
  bool any_negative = false;
  for (const auto& d : h.diag) {
    CHECK(d.imag() <= 0.0);
    any_negative |= d.imag() < 0.0;
  }
  CHECK(any_negative);
}

TEST_CASE("grid validation") {
  Potential pot(fixtures::compact_spec());
  CHECK_THROWS_AS(assemble(pot, Grid::from_step(-12.0, 36.9, 0.25), Boundary::cap),
                  GridTooCoarse);
  // must start deep in the left arm: V(x_min) >= 3 V_b needs |x_min| >= sqrt(6) L
  CHECK_THROWS_AS(assemble(pot, Grid::from_step(-7.0, 36.9, 0.02), Boundary::cap),
                  std::invalid_argument);
  // cap grid must reach past the absorber onset
  CHECK_THROWS_AS(assemble(pot, Grid::from_step(-12.0, 15.0, 0.02), Boundary::cap),
                  std::invalid_argument);
}

TEST_CASE("current of a plane wave is hbar k / m to second order") {
  Grid g = Grid::from_step(-10.0, 10.0, 0.02);
  const double k = 1.7;
  std::vector<cplx> psi(g.n);
  for (int i = 0; i < g.n; ++i) psi[i] = std::polar(1.0, k * g.x(i));
  const double j = current_at(psi, g, 0.0, 1.0, 1.0);
  const double kh = k * g.h();
  CHECK(j == doctest::Approx(k * std::sin(kh) / kh));  // central difference closed form
  CHECK(std::abs(j - k) < k * kh * kh / 6.0 * 1.01);
}

TEST_CASE("real wavefunctions carry no current") {
  Grid g = Grid::from_step(-10.0, 10.0, 0.05);
  std::vector<cplx> psi(g.n);
  for (int i = 0; i < g.n; ++i) psi[i] = std::exp(-0.5 * g.x(i) * g.x(i)) * (1.0 + g.x(i));
  CHECK(current_at(psi, g, 0.3, 1.0, 1.0) == 0.0);
}

TEST_CASE("boosted Gaussian carries hbar k / m at its peak") {
  Grid g = Grid::from_step(-10.0, 10.0, 0.01);
  const double k = 0.9;
  std::vector<cplx> psi(g.n);
  for (int i = 0; i < g.n; ++i)
    psi[i] = std::polar(std::exp(-0.5 * g.x(i) * g.x(i)), k * g.x(i));
  CHECK(current_at(psi, g, 0.0, 1.0, 1.0) == doctest::Approx(k).epsilon(1e-4));
}

TEST_CASE("current probe must stay inside the grid") {
  Grid g = Grid::from_step(0.0, 10.0, 0.1);
  std::vector<cplx> psi(g.n, cplx(1.0, 0.0));
  CHECK_THROWS_AS(current_at(psi, g, 0.05, 1.0, 1.0), OutOfGrid);
  CHECK_THROWS_AS(current_at(psi, g, 9.95, 1.0, 1.0), OutOfGrid);
}

TEST_CASE("prob_in_well basics") {
  Grid g = Grid::from_step(-20.0, 20.0, 0.01);
  std::vector<cplx> psi(g.n);
  // normalized Gaussian centered at -10, fully left of x_T = 5
  for (int i = 0; i < g.n; ++i)
    psi[i] = std::pow(M_PI, -0.25) * std::exp(-0.5 * std::pow(g.x(i) + 10.0, 2));
  CHECK(prob_in_well(psi, g, 5.0) == doctest::Approx(1.0).epsilon(1e-8));

  std::vector<cplx> zero(g.n, cplx(0));
  CHECK(prob_in_well(zero, g, 5.0) == 0.0);

  // half of a Gaussian split at its center
  for (int i = 0; i < g.n; ++i)
    psi[i] = std::pow(M_PI, -0.25) * std::exp(-0.5 * g.x(i) * g.x(i));
  CHECK(prob_in_well(psi, g, 0.0) == doctest::Approx(0.5).epsilon(1e-8));

  CHECK_THROWS_AS(prob_in_well(psi, g, 25.0), OutOfGrid);
}
