#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "mwell/config.hpp"
#include "mwell/csv.hpp"
#include "mwell/decomposition.hpp"
#include "mwell/errors.hpp"

using namespace mwell;

TEST_CASE("defaults parse and round-trip through JSON") {
  RunConfig cfg = RunConfig::from_json_text("{}");
  CHECK(cfg.potential.L == 6.0);
  CHECK(cfg.x_T == doctest::Approx(7.9));
  RunConfig again = RunConfig::from_json_text(cfg.to_json_text());
  CHECK(again.hash() == cfg.hash());
}

TEST_CASE("missing required field is reported by name") {
  const char* text = R"({"potential": {"m": 1.0, "omega": 1.0}})";
  try {
    RunConfig::from_json_text(text);
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(std::string(e.what()).find("potential.L") != std::string::npos);
  }
}

TEST_CASE("bad values are rejected with context") {
  CHECK_THROWS_AS(RunConfig::from_json_text("{\"evolution\": {\"bc\": \"open\"}}"),
                  ConfigInvalid);
  CHECK_THROWS_AS(RunConfig::from_json_text("{\"name\": \"../escape\"}"), ConfigInvalid);
  CHECK_THROWS_AS(RunConfig::from_json_text("not json"), ConfigInvalid);
  // potential violating the junction continuity is a config error too
  const char* bad = R"({"potential": {"m": 1, "omega": 1, "L": 6, "V_b": 17,
    "w": 0.9, "x_cap": 56.9, "eta": 3e-4, "delta": 0.3}})";
  CHECK_THROWS_AS(RunConfig::from_json_text(bad), ConfigInvalid);
}

TEST_CASE("alpha accepts a number or a pair") {
  auto a = RunConfig::from_json_text(R"({"state": {"alpha": 2.0}})");
  CHECK(a.state.alpha == cplx(2.0, 0.0));
  auto b = RunConfig::from_json_text(R"({"state": {"alpha": [1.0, 0.5]}})");
  CHECK(b.state.alpha == cplx(1.0, 0.5));
}

TEST_CASE("config hash changes with any field") {
  RunConfig cfg = RunConfig::from_json_text("{}");
  RunConfig other = cfg;
  other.state.seed = 43;
  CHECK(cfg.hash() != other.hash());
}

TEST_CASE("csv writes are stable and read back") {
  const std::string path = "test_config_tmp.csv";
  CsvTable t;
  t.header = {"t", "value"};
  t.columns = {{0.0, 0.1, 0.2}, {1.0, -2.5e-13, 3.14159265358979}};
  write_csv(path, t);
  write_csv(path + "2", t);
  // byte identical across writes
  std::ifstream f1(path), f2(path + "2");
  std::string s1((std::istreambuf_iterator<char>(f1)), {});
  std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);
  auto back = read_csv(path);
  REQUIRE(back.header.size() == 2);
  CHECK(back.header[1] == "value");
  CHECK(back.columns[1][2] == doctest::Approx(3.14159265358979).epsilon(1e-14));
  std::filesystem::remove(path);
  std::filesystem::remove(path + "2");
}

TEST_CASE("coherent coefficients: paper values and recurrence") {
  auto cc = coherent_coefficients(cplx(1.1, 0.0), 12);
  CHECK(std::norm(cc.c[5]) == doctest::Approx(6.5e-3).epsilon(0.032));
  CHECK(std::norm(cc.c[5]) == doctest::Approx(0.006445391209530028).epsilon(1e-12));
  // Poisson recurrence |c_{n+1}/c_n|^2 = |alpha|^2/(n+1), exact in log space
  for (int n = 0; n + 1 <= 12; ++n)
    CHECK(std::norm(cc.c[n + 1]) / std::norm(cc.c[n]) ==
          doctest::Approx(1.21 / (n + 1)).epsilon(1e-12));
  // peak of the distribution sits at n = 1 for alpha = 1.1
  int arg = 0;
  for (int n = 0; n <= 12; ++n)
    if (std::norm(cc.c[n]) > std::norm(cc.c[arg]) * (1.0 + 1e-12)) arg = n;
  CHECK(arg == 1);

  auto c0 = coherent_coefficients(cplx(0.0, 0.0), 4);
  CHECK(std::abs(c0.c[0] - cplx(1, 0)) < 1e-15);
  for (int n = 1; n <= 4; ++n) CHECK(std::abs(c0.c[n]) == 0.0);
}

TEST_CASE("alpha = 2: the distribution peaks at n = 4 and reaches E/V_b ~ 0.53") {
  auto cc = coherent_coefficients(cplx(2.0, 0.0), 16);
  // Poisson mode with integer rate: n = 3 and n = 4 tie; the mode convention
  // takes the larger index
  int arg = 0;
  for (int n = 0; n <= 16; ++n)
    if (std::norm(cc.c[n]) >= std::norm(cc.c[arg]) * (1.0 - 1e-12)) arg = n;
  CHECK(arg == 4);
  CHECK(std::norm(cc.c[3]) == doctest::Approx(std::norm(cc.c[4])).epsilon(1e-12));
  // the tenth level (n = 9) sits just above half the barrier parameter
  CHECK((9.5 / 18.0) == doctest::Approx(0.5278).epsilon(2e-3));
}

TEST_CASE("coherent truncation bookkeeping") {
  auto cc = coherent_coefficients(cplx(1.1, 0.0), 20);
  CHECK(cc.truncation_mass < 1e-12);
  CHECK(cc.truncation_mass >= 0.0);
  auto tight = coherent_coefficients(cplx(1.1, 0.0), 2);
  CHECK(tight.truncation_mass > 0.05);
  CHECK(default_coherent_n_max(cplx(1.1, 0.0), 24) <= 14);
  CHECK(default_coherent_n_max(cplx(1.1, 0.0), 24) >= 10);
  CHECK(default_coherent_n_max(cplx(1.1, 0.0), 8) == 7);
}

TEST_CASE("coherent wavefunction: ground state, displacement, Poisson weights") {
  Potential pot(fixtures::well_spec());
  Grid g = Grid::from_step(-12.0, 16.0, 0.01);

  auto ground = coherent_wavefunction(cplx(0.0, 0.0), pot, g);
  for (int i = 0; i < g.n; i += 50) {
    const double x = g.x(i);
    const double expected = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    CHECK(std::abs(ground[i] - cplx(expected, 0)) < 1e-6);
  }

  auto moved = coherent_wavefunction(cplx(1.1, 0.0), pot, g);
  int peak = 0;
  for (int i = 0; i < g.n; ++i)
    if (std::abs(moved[i]) > std::abs(moved[peak])) peak = i;
  CHECK(g.x(peak) == doctest::Approx(std::sqrt(2.0) * 1.1).epsilon(1e-2));

  // overlaps with oscillator eigenfunctions reproduce the Poisson weights;
  // Hermite functions built by the standard recurrence
  std::vector<std::vector<double>> phi(6, std::vector<double>(g.n));
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    phi[0][i] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    phi[1][i] = std::sqrt(2.0) * x * phi[0][i];
    for (int n = 2; n < 6; ++n)
      phi[n][i] = std::sqrt(2.0 / n) * x * phi[n - 1][i] -
                  std::sqrt((n - 1.0) / n) * phi[n - 2][i];
  }
  auto cc = coherent_coefficients(cplx(1.1, 0.0), 5);
  for (int n = 0; n < 6; ++n) {
    cplx acc(0, 0);
    for (int i = 0; i < g.n; ++i) acc += phi[n][i] * moved[i] * g.h();
    CHECK(std::norm(acc) == doctest::Approx(std::norm(cc.c[n])).epsilon(1e-4));
  }

  CHECK_THROWS_AS(coherent_wavefunction(cplx(3.0, 0.0), pot, g), DisplacementTooLarge);
}

TEST_CASE("random phases: deterministic, magnitude preserving, uniform") {
  std::vector<double> mags = {0.5, 0.3, 0.8, 0.1, 0.0, 0.9};
  auto a = random_phase_state(mags, 12345);
  auto b = random_phase_state(mags, 12345);
  auto c = random_phase_state(mags, 54321);
  REQUIRE(a.size() == mags.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(std::abs(a[i]) == doctest::Approx(mags[i]).epsilon(1e-15));
    differs |= a[i] != c[i];
  }
  CHECK(differs);
  // crude uniformity check on a long draw
  std::vector<double> ones(20000, 1.0);
  auto big = random_phase_state(ones, 7);
  double mean_cos = 0.0, mean_sin = 0.0;
  for (const auto& z : big) {
    mean_cos += z.real();
    mean_sin += z.imag();
  }
  CHECK(std::abs(mean_cos / big.size()) < 0.02);
  CHECK(std::abs(mean_sin / big.size()) < 0.02);
}
