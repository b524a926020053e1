#include "mwell/decomposition.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>

#include "mwell/errors.hpp"
#include "mwell/observables.hpp"

namespace mwell {

OverlapMatrix overlap(std::span<const ResonantState> states, const Grid& grid, double x_T) {
  const int n = (int)states.size();
  if (n < 1) throw IndexMismatch("overlap: need at least one state");
  OverlapMatrix ovl;
  ovl.size = n;
  ovl.s.resize((std::size_t)n * n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      ovl.s[(std::size_t)m * n + k] = inner_to(states[m].psi, states[k].psi, grid, x_T);

  Eigen::MatrixXcd S(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) S(m, k) = ovl.at(m, k);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
  const auto& sv = svd.singularValues();
  ovl.condition = sv(0) / sv(n - 1);
  if (!(ovl.condition < 1e6))
    throw IllConditioned("overlap: condition estimate " + std::to_string(ovl.condition));
  return ovl;
}

std::vector<cplx> project(std::span<const cplx> psi0, std::span<const ResonantState> states,
                          const OverlapMatrix& ovl, const Grid& grid, double x_T) {
  const int n = (int)states.size();
  if (ovl.size != n) throw IndexMismatch("project: overlap size != basis size");
  if (!(ovl.condition < 1e6)) throw IllConditioned("project: overlap flagged ill-conditioned");
  Eigen::MatrixXcd S(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) S(m, k) = ovl.at(m, k);
  Eigen::VectorXcd b(n);
  for (int m = 0; m < n; ++m) b(m) = inner_to(states[m].psi, psi0, grid, x_T);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(S);
  Eigen::VectorXcd c = lu.solve(b);
  c += lu.solve(b - S * c);  // one refinement pass
  const double rel = (S * c - b).norm() / std::max(b.norm(), 1e-300);
  if (rel > 1e-10) throw IllConditioned("project: solve residual " + std::to_string(rel));
  return std::vector<cplx>(c.data(), c.data() + n);
}

CoherentCoefficients coherent_coefficients(cplx alpha, int n_max) {
  if (n_max < 0) throw std::invalid_argument("coherent_coefficients: n_max < 0");
  CoherentCoefficients out;
  out.c.resize(n_max + 1);
  const double a2 = std::norm(alpha);
  const double phase = std::arg(alpha);
  long double mass = 0.0L;
  for (int n = 0; n <= n_max; ++n) {
    const double lg = -0.5 * a2 + 0.5 * n * std::log(a2 > 0 ? a2 : 1.0) -
                      0.5 * std::lgamma(n + 1.0);
    const double mag = (a2 == 0.0 && n > 0) ? 0.0 : std::exp(lg);
    out.c[n] = std::polar(mag, phase * n);
    mass += (long double)mag * mag;
  }
  out.truncation_mass = (double)(1.0L - mass);
  return out;
}

int default_coherent_n_max(cplx alpha, int basis_size) {
  const double a2 = std::norm(alpha);
  long double mass = 0.0L;
  for (int n = 0; n < 512; ++n) {
    const double lg = -a2 + n * std::log(a2 > 0 ? a2 : 1.0) - std::lgamma(n + 1.0);
    mass += (long double)((a2 == 0.0 && n > 0) ? 0.0 : std::exp(lg));
    if ((double)(1.0L - mass) < 1e-8) return std::min(n, basis_size - 1);
  }
  return basis_size - 1;
}

std::vector<cplx> coherent_wavefunction(cplx alpha, const Potential& pot, const Grid& grid) {
  const auto& s = pot.spec();
  const double d = std::sqrt(s.hbar / (s.m * s.omega));
  const double xbar = std::sqrt(2.0) * d * alpha.real();
  const double pbar = std::sqrt(2.0) * (s.hbar / d) * alpha.imag();
  if (xbar + 3.0 * d > s.L)
    throw DisplacementTooLarge("coherent_wavefunction: displaced packet reaches the barrier");
  std::vector<cplx> psi(grid.n);
  const double norm0 = std::pow(M_PI * d * d, -0.25);
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const double gauss = norm0 * std::exp(-(x - xbar) * (x - xbar) / (2.0 * d * d));
    psi[i] = std::polar(gauss, (pbar * x - 0.5 * xbar * pbar) / s.hbar);
  }
  // unit trapezoidal norm on the grid
  const double nn = total_norm(psi, grid);
  const double inv = 1.0 / std::sqrt(nn);
  for (auto& z : psi) z *= inv;
  return psi;
}

namespace {
// splitmix64, a fixed portable generator
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace

std::vector<cplx> random_phase_state(std::span<const double> magnitudes, std::uint64_t seed) {
  std::vector<cplx> c(magnitudes.size());
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    const double u = (double)(splitmix64(state) >> 11) * 0x1.0p-53;  // [0, 1)
    c[i] = std::polar(magnitudes[i], 2.0 * M_PI * u);
  }
  return c;
}

std::vector<cplx> synthesize(std::span<const cplx> c, std::span<const ResonantState> states) {
  if (c.size() != states.size()) throw IndexMismatch("synthesize: coefficient/basis mismatch");
  if (states.empty()) return {};
  std::vector<cplx> psi(states[0].psi.size(), cplx(0));
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += c[k] * states[k].psi[i];
  return psi;
}

}  // namespace mwell
