#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "nanomc/error.hpp"
#include "nanomc/params.hpp"
#include "nanomc/release.hpp"

using Catch::Approx;
using namespace nanomc;
using namespace nanomc::release;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoltzmann = 1.3807e-23;
constexpr double kAvogadro = 6.02214076e23;

// Pressure factor written for the swapped orientation, where the series runs
// in tanh(n pi a / 2); algebraically identical to the direct form.
double pressure_factor_swapped(double a) {
  double s = 0.0;
  for (int n = 1; n < 200001; n += 2) s += std::tanh(n * kPi * a / 2.0) / std::pow(n, 5);
  return 1.0 / (a * a) - 192.0 / (std::pow(kPi, 5) * a * a * a) * s;
}

PumpGeometry table_geometry() { return default_geometry(PumpParams{}); }

double simpson(auto f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("Stokes-Einstein diffusion of zinc in water", "[release]") {
  const auto f = water(8.509e-4, 300.0);
  const double d = diffusion_coefficient(142e-12, f);
  CHECK(d == Approx(kBoltzmann * 300.0 / (6.0 * kPi * 8.509e-4 * 142e-12)).epsilon(1e-14));
  CHECK(d == Approx(1.82e-9).epsilon(5e-3));
  CHECK(diffusion_coefficient(284e-12, f) == Approx(d / 2.0).epsilon(1e-14));
  CHECK(diffusion_coefficient(142e-12, water(2.0 * 8.509e-4, 300.0)) == Approx(d / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(diffusion_coefficient(0.0, f), DomainError);
}

TEST_CASE("gas-kinetic species viscosity", "[release]") {
  const double m = 65.38e-3 / kAvogadro;
  CHECK(m == Approx(1.086e-25).epsilon(1e-3));
  const double mu = species_viscosity(m, 284e-12, 300.0);
  CHECK(mu == Approx(std::sqrt(m * kBoltzmann * 300.0) / (std::pow(kPi, 1.5) * 284e-12 * 284e-12)).epsilon(1e-14));
  CHECK(mu == Approx(4.7e-5).epsilon(0.02));
  CHECK(species_viscosity(m, 284e-12, 1200.0) == Approx(2.0 * mu).epsilon(1e-14));
  CHECK(species_viscosity(m, 568e-12, 300.0) == Approx(mu / 4.0).epsilon(1e-14));
  CHECK_THROWS_AS(species_viscosity(0.0, 284e-12, 300.0), DomainError);
}

TEST_CASE("effective viscosity of the stored mixture", "[release]") {
  const auto f = fluid_from_scenario(default_scenario());
  CHECK(f.mu_eff() >= f.mu_water);
  CHECK(f.total_fraction() == Approx(1.0).epsilon(1e-9));
  for (const auto& c : f.components) CHECK(c.volume_fraction >= 0.0);
  double expect = f.mu_water;
  for (const auto& c : f.components) expect += c.volume_fraction * c.viscosity_pa_s;
  CHECK(f.mu_eff() == Approx(expect).epsilon(1e-14));
}

TEST_CASE("geometry views are consistent", "[release]") {
  const auto g = table_geometry();
  CHECK(g.r1 == 1.19e-3);
  CHECK(g.r2 == 2.38e-3);
  CHECK(g.h == Approx(0.119e-3).epsilon(1e-12));
  CHECK(g.aspect_ratio() == Approx(0.1).epsilon(1e-12));
  CHECK(g.radius_ratio() == Approx(0.5).epsilon(1e-12));
  CHECK(g.rpm() == Approx(500.0).epsilon(1e-12));
  const auto r = radius_ratio_geometry(PumpParams{}, 0.8);
  CHECK(r.radius_ratio() == Approx(0.8).epsilon(1e-12));
  CHECK(r.r2 == 2.38e-3);
  CHECK(r.aspect_ratio() == Approx(0.1).epsilon(1e-12));
  const auto a = aspect_ratio_geometry(PumpParams{}, 1.5);
  CHECK(a.aspect_ratio() == Approx(1.5).epsilon(1e-12));
  CHECK(a.radius_ratio() == Approx(0.9).epsilon(1e-12));
  CHECK(a.h == Approx(0.119e-3).epsilon(1e-12));
  PumpGeometry bad = g;
  bad.r1 = bad.r2;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = g;
  bad.delta_theta = 7.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("quadratic pump flow", "[release]") {
  const auto g = table_geometry();
  const double q = pump_flow_quadratic(g, 8.509e-4, 0.0);
  const double omega = 500.0 * 2.0 * kPi / 60.0;
  CHECK(q == Approx(omega * 0.119e-3 * (2.38e-3 * 2.38e-3 - 1.19e-3 * 1.19e-3) / 4.0).epsilon(1e-14));
  CHECK(q == Approx(6.62e-9).epsilon(2e-3));
  PumpGeometry still = g;
  still.omega = 0.0;
  CHECK(pump_flow_quadratic(still, 8.509e-4, 0.0) == 0.0);
  const double q2 = pump_flow_quadratic(rpm_geometry(PumpParams{}, 250.0), 8.509e-4, 0.0);
  const double q4 = pump_flow_quadratic(rpm_geometry(PumpParams{}, 750.0), 8.509e-4, 0.0);
  CHECK((q4 - q2) / 500.0 == Approx(q / 500.0).epsilon(1e-12));
  CHECK(pump_flow_quadratic(g, 8.509e-4, 50.0) < q);
}

TEST_CASE("radius shape factors", "[release]") {
  CHECK(curvature_pressure_factor(0.5) == Approx(0.5 * (1.5 / -0.5) * std::log(0.5)).epsilon(1e-15));
  CHECK(curvature_pressure_factor(0.5) == Approx(1.0397).epsilon(1e-4));
  CHECK(std::abs(curvature_pressure_factor(0.999) - 1.0) < 1e-3);
  CHECK_THROWS_AS(curvature_pressure_factor(1.0), DomainError);
  CHECK(shape_factors(table_geometry()).f_dr == 1.0);
}

TEST_CASE("aspect shape factors approach one for thin channels", "[release]") {
  std::size_t terms = 0;
  CHECK(std::abs(drag_shape_factor(1e-3, &terms) - 1.0) < 1e-2);
  CHECK(terms > 500);
  CHECK(std::abs(pressure_shape_factor(1e-3) - 1.0) < 1e-2);
  double prev = 2.0;
  for (double a = 0.05; a <= 3.0; a += 0.05) {
    const double f = drag_shape_factor(a);
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("pressure shape factor agrees across both series orientations", "[release]") {
  for (const double a : {0.3, 0.5, 1.0, 2.0, 5.0}) {
    CHECK(pressure_shape_factor(a) == Approx(pressure_factor_swapped(a)).epsilon(0).margin(1e-9));
  }
}

TEST_CASE("drag shape factor matches the grouped hyperbolic series", "[release]") {
  for (const double a : {0.1, 0.7, 2.0}) {
    // Past x = 40 the hyperbolic ratio is 1 in double precision; evaluating it
    // further overflows n^3 sinh(x).
    double s = 0.0;
    int n = 1;
    for (; n * kPi * a <= 40.0; ++n) {
      const double x = n * kPi * a;
      const double sign = std::pow(-1.0, n) - 1.0;
      s += sign * sign * (std::cosh(x) - 1.0) / (std::pow(n, 3) * std::sinh(x));
    }
    double tail = 0.0;
    const int last = 400001;
    for (n += (n % 2 == 0); n <= last; n += 2) tail += 4.0 / std::pow(n, 3);
    tail += 1.0 / (static_cast<double>(last) * last);
    CHECK(drag_shape_factor(a) == Approx(4.0 / (std::pow(kPi, 3) * a) * (s + tail)).epsilon(1e-8));
  }
}

TEST_CASE("general flow reduces to the drag flow for thin wide channels", "[release]") {
  const double r2 = 2.38e-3;
  const double r1 = 0.99 * r2;
  PumpGeometry g{r1, r2, 1e-3 * (r2 - r1), kPi / 2.0, 500.0 * 2.0 * kPi / 60.0};
  const double qg = pump_flow_general(g, 8.509e-4, 996.64, 0.0).q;
  const double qq = pump_flow_quadratic(g, 8.509e-4, 0.0);
  CHECK(std::abs(qg - qq) / qq < 0.01);
}

TEST_CASE("general flow without pressure is independent of the fluid", "[release]") {
  const auto g = aspect_ratio_geometry(PumpParams{}, 0.7);
  const auto a = pump_flow_general(g, 8.509e-4, 996.64, 0.0);
  const auto b = pump_flow_general(g, 3e-3, 1500.0, 0.0);
  CHECK(a.euler == 0.0);
  CHECK(a.q_star == Approx(0.5 * a.factors.f_da).epsilon(1e-15));
  CHECK(a.q_star == b.q_star);
  CHECK(pump_flow_general(g, 8.509e-4, 996.64, 20.0).q < a.q);
  double prev = 1.0;
  for (double ar = 0.1; ar <= 2.0; ar += 0.1) {
    const double qs = pump_flow_general(aspect_ratio_geometry(PumpParams{}, ar), 8.509e-4, 996.64, 0.0).q_star;
    CHECK(qs < prev);
    prev = qs;
  }
}

TEST_CASE("advected plume stays normalised", "[release]") {
  const double u = 1e-3;
  const double d = 1.82e-9;
  for (const double t : {0.01, 1.0, 100.0}) {
    const double sd = std::sqrt(2.0 * d * t);
    const double total = simpson([&](double x) { return concentration_profile(x, t, u, d, 3.0); }, u * t - 12 * sd,
                                 u * t + 12 * sd, 20000);
    CHECK(std::abs(total - 3.0) < 3e-6);
    CHECK(concentration_profile(u * t, t, u, d, 3.0) > concentration_profile(u * t + 0.1 * sd, t, u, d, 3.0));
    CHECK(concentration_profile(u * t + 0.1 * sd, t, u, d, 3.0) ==
          Approx(concentration_profile(u * t - 0.1 * sd, t, u, d, 3.0)).epsilon(1e-12));
  }
  const double t = 2.0;
  const double sd = std::sqrt(2.0 * d * t);
  const double var = simpson([&](double x) { return x * x * concentration_profile(x, t, 0.0, d, 1.0); }, -12 * sd,
                             12 * sd, 20000);
  CHECK(var == Approx(2.0 * d * t).epsilon(1e-6));
  CHECK_THROWS_AS(concentration_profile(0.0, 0.0, u, d, 1.0), DomainError);
}

TEST_CASE("pure advection releases on the first step past the outlet", "[release]") {
  for (const bool skip : {true, false}) {
    SimulationOptions opt;
    opt.particles = 100;
    opt.dt = 0.01;
    opt.skip_ahead = skip;
    const auto r = simulate_release_times(0.3, 0.0, 1.0, opt);
    for (double t : r.times) CHECK(t == Approx(std::ceil(1.0 / (0.3 * 0.01)) * 0.01).epsilon(1e-12));
    CHECK(r.std == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("advection-dominated release matches L/u", "[release]") {
  SimulationOptions opt;
  opt.particles = 2000;
  opt.dt = 1e-3;
  const auto r = simulate_release(0.01, 1e-9, 0.012, opt);
  CHECK(r.peclet > 1e3);
  CHECK(std::abs(r.t_sim_mean - r.t_analytic) / r.t_analytic < 0.05);
  opt.dt = 5e-4;
  const auto h = simulate_release(0.01, 1e-9, 0.012, opt);
  CHECK(std::abs(h.t_sim_mean - r.t_sim_mean) / r.t_sim_mean < 0.01);
}

TEST_CASE("skip-ahead matches plain stepping", "[release]") {
  SimulationOptions opt;
  opt.particles = 3000;
  opt.dt = 1e-3;
  opt.seed = 4;
  const auto fast = simulate_release_times(1e-3, 1e-8, 1e-3, opt);
  opt.skip_ahead = false;
  opt.seed = 5;
  const auto plain = simulate_release_times(1e-3, 1e-8, 1e-3, opt);
  const double se = std::sqrt((fast.std * fast.std + plain.std * plain.std) / 3000.0);
  CHECK(std::abs(fast.mean - plain.mean) < 4.0 * se);
  CHECK(std::abs(fast.std / plain.std - 1.0) < 0.1);
  // First-passage mean of drifted Brownian motion is L / u.
  CHECK(std::abs(plain.mean - 1.0) < 4.0 * plain.std / std::sqrt(3000.0) + 1e-3);
}

TEST_CASE("release simulation is deterministic and thread independent", "[release]") {
  SimulationOptions opt;
  opt.particles = 500;
  opt.dt = 1e-3;
  opt.seed = 9;
  const auto a = simulate_release_times(0.01, 1e-8, 0.012, opt);
  opt.threads = 3;
  const auto b = simulate_release_times(0.01, 1e-8, 0.012, opt);
  CHECK(a.times == b.times);
  opt.task = 1;
  const auto c = simulate_release_times(0.01, 1e-8, 0.012, opt);
  CHECK(c.times != a.times);
}

TEST_CASE("release simulation preconditions", "[release]") {
  SimulationOptions opt;
  CHECK_THROWS_AS(simulate_release_times(0.0, 0.0, 0.012, opt), NeverReleasesError);
  CHECK_THROWS_AS(simulate_release_times(-1.0, 0.0, 0.012, opt), NeverReleasesError);
  opt.dt = 0.1;
  CHECK_THROWS_AS(simulate_release_times(0.01, 1e-9, 0.012, opt), DomainError);
  opt.dt = 1e-4;
  opt.particles = 10;
  CHECK_THROWS_AS(simulate_release_times(0.01, 1e-9, 0.012, opt), DomainError);
}

TEST_CASE("release sweep rows use the channel mean velocity", "[release]") {
  const auto sc = default_scenario();
  SimulationOptions opt;
  opt.particles = 200;
  const std::vector<double> grid{0.3, 0.6, 0.9};
  const auto rows = release_sweep(Variable::radius_ratio, grid, sc, opt);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    const auto g = radius_ratio_geometry(sc.pump, r.x);
    CHECK(r.result.u == Approx(r.result.q / (g.w() * g.h)).epsilon(1e-14));
    CHECK(r.result.path_length == 12e-3);
  }
  CHECK(rows[1].result.q < rows[0].result.q);
  CHECK(rows[1].result.u > rows[0].result.u);
}

TEST_CASE("release sweep grids are range checked", "[release]") {
  CHECK_THROWS_AS(check_grid(Variable::radius_ratio, std::vector<double>{1.0}), ConfigError);
  CHECK_THROWS_AS(check_grid(Variable::rpm, std::vector<double>{-5.0}), ConfigError);
  CHECK_THROWS_AS(check_grid(Variable::aspect_ratio, std::vector<double>{0.0}), ConfigError);
  CHECK_THROWS_AS(check_grid(Variable::rpm, std::vector<double>{}), ConfigError);
  CHECK_THROWS_AS(parse_variable("height"), ConfigError);
  CHECK(variable_name(parse_variable("aspect_ratio")) == "aspect_ratio");
}
