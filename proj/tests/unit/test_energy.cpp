#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nanomc/energy.hpp"
#include "nanomc/error.hpp"
#include "nanomc/grid.hpp"
#include "nanomc/params.hpp"
#include "nanomc/release.hpp"

using Catch::Approx;
using namespace nanomc;
using namespace nanomc::energy;

namespace {

constexpr double kPi = std::numbers::pi;

release::PumpGeometry table_geometry() { return release::default_geometry(PumpParams{}); }

}  // namespace

TEST_CASE("pressure difference vanishes for a stationary rotor", "[energy]") {
  auto g = table_geometry();
  g.omega = 0.0;
  const auto p = pressure_difference(g, 8.51e-4);
  CHECK(p.delta_p == 0.0);
  CHECK(p.velocity == 0.0);
  CHECK(p.path_length > 0.0);
}

TEST_CASE("pressure difference at the reference pump geometry", "[energy]") {
  const auto g = table_geometry();
  const auto p = pressure_difference(g, 8.51e-4);
  const double omega = 500.0 * 2.0 * kPi / 60.0;
  CHECK(omega == Approx(52.36).epsilon(1e-4));
  CHECK(p.velocity == Approx(omega * 1.785e-3).epsilon(1e-12));
  CHECK(p.velocity == Approx(0.0935).epsilon(2e-3));
  CHECK(p.path_length == Approx(kPi / 2.0 * 1.785e-3).epsilon(1e-12));
  CHECK(p.path_length == Approx(2.804e-3).epsilon(1e-3));
  CHECK(g.h == Approx(1.19e-4).epsilon(1e-12));
  CHECK(p.delta_p == Approx(6.0 * 8.51e-4 * p.velocity * p.path_length / (1.19e-4 * 1.19e-4)).epsilon(1e-12));
  CHECK(p.delta_p == Approx(94.5).epsilon(2e-3));
}

TEST_CASE("pressure difference scales as the inverse square of channel height", "[energy]") {
  auto g = table_geometry();
  const double p1 = pressure_difference(g, 8.51e-4).delta_p;
  g.h *= 2.0;
  const double p2 = pressure_difference(g, 8.51e-4).delta_p;
  CHECK(p1 / p2 == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("pressure difference is linear in viscosity and rotor speed", "[energy]") {
  auto g = table_geometry();
  const double base = pressure_difference(g, 8.51e-4).delta_p;
  CHECK(pressure_difference(g, 3.0 * 8.51e-4).delta_p == Approx(3.0 * base).epsilon(1e-12));
  g.omega *= 2.5;
  CHECK(pressure_difference(g, 8.51e-4).delta_p == Approx(2.5 * base).epsilon(1e-12));
}

TEST_CASE("pressure difference rejects invalid inputs", "[energy]") {
  auto g = table_geometry();
  CHECK_THROWS_AS(pressure_difference(g, 0.0), DomainError);
  g.h = 0.0;
  CHECK_THROWS_AS(pressure_difference(g, 8.51e-4), DomainError);
}

TEST_CASE("operating flow is the drag-driven flow", "[energy]") {
  const auto g = table_geometry();
  const double expected = g.omega * g.h * (g.r2 * g.r2 - g.r1 * g.r1) / 4.0;
  CHECK(operating_flow(g, 8.51e-4) == Approx(expected).epsilon(1e-12));
}

TEST_CASE("energy trace is exact and linear in time", "[energy]") {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double dp = 1e3 * u(eng);
    const double q = 1e-8 * u(eng);
    std::vector<double> t{0.0};
    for (int k = 0; k < 20; ++k) t.push_back(t.back() + 0.5 * u(eng));
    const auto tr = energy_trace(1.0, dp, q, t);
    REQUIRE(tr.energy.size() == t.size());
    CHECK(tr.power() >= 0.0);
    CHECK(tr.energy.front() == 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(tr.energy[i] == Approx(dp * q * t[i]).epsilon(1e-14));
      if (i > 0) {
        CHECK(tr.energy[i] >= tr.energy[i - 1]);
        CHECK(tr.energy[i] - tr.energy[i - 1] == Approx(dp * q * (t[i] - t[i - 1])).epsilon(1e-9).margin(1e-30));
      }
    }
  }
}

TEST_CASE("energy trace rejects malformed time grids", "[energy]") {
  const std::vector<double> negative{-1.0, 0.0, 1.0};
  const std::vector<double> decreasing{0.0, 2.0, 1.0};
  CHECK_THROWS_AS(energy_trace(1.0, 1.0, 1.0, negative), ConfigError);
  CHECK_THROWS_AS(energy_trace(1.0, 1.0, 1.0, decreasing), ConfigError);
  const std::vector<double> repeated{0.0, 1.0, 1.0};
  CHECK_NOTHROW(energy_trace(1.0, 1.0, 1.0, repeated));
}

TEST_CASE("energy at double rotor speed is four times larger", "[energy]") {
  const auto sc = default_scenario();
  const std::vector<double> rpm{500.0, 1000.0};
  const auto t = grid::arange(0.0, 10.0, 0.5);
  const auto tr = energy_sweep(release::Variable::rpm, rpm, t, sc);
  REQUIRE(tr.size() == 2);
  CHECK(tr[1].power() / tr[0].power() == Approx(4.0).epsilon(1e-12));
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(tr[1].energy[k] / tr[0].energy[k] == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("energy sweeps are ordered in the swept variable", "[energy]") {
  const auto sc = default_scenario();
  const auto t = grid::arange(0.0, 10.0, 1.0);
  const auto check = [&](release::Variable v, const std::vector<double>& g, int direction) {
    const auto tr = energy_sweep(v, g, t, sc);
    REQUIRE(tr.size() == g.size());
    for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
      CHECK(tr[i].power() >= 0.0);
      for (std::size_t k = 1; k < t.size(); ++k) {
        CHECK((tr[i + 1].energy[k] - tr[i].energy[k]) * direction > 0.0);
      }
    }
  };
  check(release::Variable::rpm, grid::arange(100.0, 1000.0, 100.0), 1);
  check(release::Variable::radius_ratio, grid::arange(0.1, 0.95, 0.05), 1);
  check(release::Variable::aspect_ratio, grid::arange(0.1, 2.0, 0.1), -1);
}

TEST_CASE("energy sweep uses the effective viscosity of the scenario fluid", "[energy]") {
  const auto sc = default_scenario();
  const double mu = release::fluid_from_scenario(sc).mu_eff();
  const std::vector<double> rpm{500.0};
  const std::vector<double> t{0.0, 1.0};
  const auto tr = energy_sweep(release::Variable::rpm, rpm, t, sc);
  const auto g = release::rpm_geometry(sc.pump, 500.0);
  CHECK(tr[0].delta_p == Approx(pressure_difference(g, mu).delta_p).epsilon(1e-12));
  CHECK(tr[0].q == Approx(operating_flow(g, mu)).epsilon(1e-12));
  CHECK(tr[0].energy[1] == Approx(tr[0].delta_p * tr[0].q).epsilon(1e-12));
}

TEST_CASE("energy sweep rejects invalid grids", "[energy]") {
  const auto sc = default_scenario();
  const std::vector<double> t{0.0, 1.0};
  const std::vector<double> empty;
  CHECK_THROWS_AS(energy_sweep(release::Variable::rpm, empty, t, sc), ConfigError);
  CHECK_THROWS_AS(energy_sweep(release::Variable::rpm, std::vector<double>{500.0}, empty, sc), ConfigError);
  CHECK_THROWS_AS(energy_sweep(release::Variable::radius_ratio, std::vector<double>{1.2}, t, sc), ConfigError);
  CHECK_THROWS_AS(energy_sweep(release::Variable::rpm, std::vector<double>{-10.0}, t, sc), ConfigError);
}
