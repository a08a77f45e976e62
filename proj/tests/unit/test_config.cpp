#include "catch_amalgamated.hpp"

#include <string>

#include "nanomc/config.hpp"
#include "nanomc/error.hpp"
#include "nanomc/params.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using namespace nanomc;
using namespace nanomc::config;

namespace {

std::string message_of(const std::string& content) {
  try {
    parse(content, "test.conf");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string scenario_error(const std::string& content) {
  try {
    to_scenario(parse(content, "test.conf"));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse errors carry file, line and column", "[config]") {
  CHECK_THAT(message_of("rpm = 500\n  no_equals_here\n"), ContainsSubstring("test.conf:2:3: expected key=value"));
  CHECK_THAT(message_of("# comment\nrpm = fast\n"), ContainsSubstring("test.conf:2:7"));
  CHECK_THAT(message_of("rpm = 500\nrpm = 600\n"), ContainsSubstring("test.conf:2: duplicate key 'rpm'"));
  CHECK_THAT(message_of("rpm = 500\nrpm = 600\n"), ContainsSubstring("first set on line 1"));
  CHECK_THAT(message_of("colour = 3\n"), ContainsSubstring("test.conf:1: unknown key 'colour'"));
  CHECK_THAT(message_of("rpm =\n"), ContainsSubstring("test.conf:1:6: missing value"));
  CHECK_THAT(message_of("k_on_hg = 1e7\n"), ContainsSubstring("unknown key 'k_on_hg'"));
}

TEST_CASE("comments, blank lines and carriage returns are ignored", "[config]") {
  const auto ps = parse("\n# header\r\nrpm = 750   # trailing\r\n\n  cov=0.2\n", "x.conf");
  CHECK(ps.get("rpm") == 750.0);
  CHECK(ps.get("cov") == 0.2);
  CHECK(ps.line_of("rpm") == 3);
  CHECK(ps.line_of("cov") == 5);
}

TEST_CASE("correlation keys are accepted in either order", "[config]") {
  const auto a = parse("rho_cd_zn = 0.5\n", "x.conf");
  CHECK(a.get("rho_zn_cd") == 0.5);
  const auto b = parse("rho_zn_in = 0.1\n", "x.conf");
  CHECK(b.get("rho_in_zn") == 0.1);
}

TEST_CASE("out-of-range correlation is rejected naming key and line", "[config]") {
  const auto ps = parse("cov = 0.1\nrho_zn_cd = 1.5\n", "x.conf");
  const auto rep = validate(ps);
  CHECK_FALSE(rep.ok());
  const auto* f = rep.first_failure();
  REQUIRE(f);
  CHECK_THAT(f->message, ContainsSubstring("rho_zn_cd"));
  CHECK(f->line == 2);
  CHECK_THAT(scenario_error("cov = 0.1\nrho_zn_cd = 1.5\n"), ContainsSubstring("rho_zn_cd"));
  CHECK_THAT(scenario_error("cov = 0.1\nrho_zn_cd = 1.5\n"), ContainsSubstring("line 2"));
}

TEST_CASE("correlations that are individually valid but jointly indefinite are rejected", "[config]") {
  const auto rep = validate(parse("rho_zn_cd = 0.9\nrho_in_zn = 0.9\nrho_in_cd = -0.9\n", "x.conf"));
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.first_failure());
  CHECK_THAT(rep.first_failure()->name, ContainsSubstring("positive semi-definite"));
}

TEST_CASE("bit concentrations must be ordered", "[config]") {
  const auto rep = validate(parse("bit0_kd_multiple = 5\nbit1_kd_multiple = 4\n", "x.conf"));
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.first_failure());
  CHECK(rep.first_failure()->name == "bit concentrations ordered");
  CHECK(rep.first_failure()->line == 1);
}

TEST_CASE("validation failures for ranges, counts and species", "[config]") {
  const auto fails = [](const std::string& content, const std::string& name) {
    const auto rep = validate(parse(content, "x.conf"));
    REQUIRE_FALSE(rep.ok());
    CHECK_THAT(rep.first_failure()->name, ContainsSubstring(name));
  };
  fails("affinity_ratio = 1.5\n", "affinity_ratio");
  fails("affinity_ratio = 0\n", "affinity_ratio");
  fails("cov = -0.1\n", "cov");
  fails("num_events = 10.5\n", "num_events");
  fails("particles = 50\n", "particles");
  fails("seed = -1\n", "seed");
  fails("temperature = 0\n", "temperature");
  fails("metals = zn, cd, xx\n", "metal xx");
  fails("detected = cd\nmetals = zn\n", "detected metal");
  fails("metals = zn, zn\n", "distinct");
  fails("outer_radius = 3.5\n", "fits inside the device");
  fails("inner_radius = 2.5\n", "pump geometry valid");
  fails("dt = 1\n", "advection");
}

TEST_CASE("an affinity ratio of one makes the interval scheme degenerate", "[config]") {
  const auto rep = validate(parse("affinity_ratio = 1\n", "x.conf"));
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.first_failure());
  CHECK(rep.first_failure()->name == "interval thresholds strictly increasing");
}

TEST_CASE("a metal without tabulated rates must be given explicitly", "[config]") {
  const std::string base = "metals = zn, cd, hg\n";
  CHECK_FALSE(validate(parse(base, "x.conf")).ok());
  const auto ps = parse(base + "k_on_hg = 3e7\nkd_hg = 4e-6\nmean_hg_kd_multiple = 1\n", "x.conf");
  const auto rep = validate(ps);
  INFO(rep.text());
  CHECK(rep.ok());
  const auto sc = to_scenario(ps);
  CHECK(sc.num_metals() == 3);
  CHECK(sc.species[2].name == "hg");
  CHECK(sc.species[2].k_off == Approx(120.0).epsilon(1e-12));
}

TEST_CASE("default parameter set reproduces the default scenario", "[config]") {
  const ParameterSet ps;
  const auto rep = validate(ps);
  INFO(rep.text());
  REQUIRE(rep.ok());
  const auto a = to_scenario(ps);
  const auto b = default_scenario();
  REQUIRE(a.species.size() == b.species.size());
  for (std::size_t i = 0; i < a.species.size(); ++i) {
    CHECK(a.species[i].name == b.species[i].name);
    CHECK(a.species[i].k_on == b.species[i].k_on);
    CHECK(a.species[i].k_off == Approx(b.species[i].k_off).epsilon(1e-14));
    CHECK(a.species[i].atomic_radius_m == b.species[i].atomic_radius_m);
    CHECK(a.mean_kd_multiple[i] == b.mean_kd_multiple[i]);
  }
  CHECK(a.detected == b.detected);
  CHECK(a.correlations.isApprox(b.correlations, 0.0));
  CHECK(a.reception_volume_l == b.reception_volume_l);
  CHECK(a.affinity_ratio == b.affinity_ratio);
  CHECK(a.cov == b.cov);
  CHECK(a.bit0_kd_multiple == b.bit0_kd_multiple);
  CHECK(a.bit1_kd_multiple == b.bit1_kd_multiple);
  CHECK(a.saturation_bit0_kd_multiple == b.saturation_bit0_kd_multiple);
  CHECK(a.saturation_bit1_kd_multiple == b.saturation_bit1_kd_multiple);
  CHECK(a.num_events == b.num_events);
  CHECK(a.outer_samples == b.outer_samples);
  CHECK(a.interval_v == b.interval_v);
  CHECK(a.seed == b.seed);
  CHECK(a.temperature_k == b.temperature_k);
  CHECK(a.constants.boltzmann_si == Approx(b.constants.boltzmann_si).epsilon(1e-12));
  CHECK(a.constants.avogadro == b.constants.avogadro);
  CHECK(a.fluid.water_viscosity_pa_s == Approx(b.fluid.water_viscosity_pa_s).epsilon(1e-12));
  CHECK(a.fluid.water_density_kg_m3 == Approx(b.fluid.water_density_kg_m3).epsilon(1e-12));
  CHECK(a.fluid.water_volume_fraction == b.fluid.water_volume_fraction);
  CHECK(a.device.radius_m == Approx(b.device.radius_m).epsilon(1e-12));
  CHECK(a.device.length_m == Approx(b.device.length_m).epsilon(1e-12));
  CHECK(a.pump.inner_radius_m == Approx(b.pump.inner_radius_m).epsilon(1e-12));
  CHECK(a.pump.outer_radius_m == Approx(b.pump.outer_radius_m).epsilon(1e-12));
  CHECK(a.pump.rpm == b.pump.rpm);
  CHECK(a.pump.delta_theta_rad == b.pump.delta_theta_rad);
  CHECK(a.pump.aspect_ratio == b.pump.aspect_ratio);
  CHECK(a.release.particles == b.release.particles);
  CHECK(a.release.dt_s == b.release.dt_s);
}

TEST_CASE("overrides reach the scenario in SI units", "[config]") {
  const auto sc = to_scenario(parse("inner_radius = 1.0\nwater_viscosity = 0.001\nrpm = 250\n", "x.conf"));
  CHECK(sc.pump.inner_radius_m == Approx(1e-3).epsilon(1e-12));
  CHECK(sc.fluid.water_viscosity_pa_s == Approx(1e-3).epsilon(1e-12));  // 1 g/(mm s) = 1 Pa s
  CHECK(sc.pump.rpm == 250.0);
}

TEST_CASE("parameter report lists values, units and provenance", "[config]") {
  const auto ps = parse("rpm = 600\n\ncov = 0.15\n", "my.conf");
  const auto j = params_json(ps);
  REQUIRE(j.contains("parameters"));
  REQUIRE(j.contains("derived"));
  bool saw_rpm = false;
  bool saw_default = false;
  for (const auto& e : j["parameters"]) {
    if (e["key"] == "rpm") {
      saw_rpm = true;
      CHECK(e["value"].get<double>() == 600.0);
      CHECK(e["unit"] == "rpm");
      CHECK(e["provenance"] == "config:my.conf:1");
    }
    if (e["key"] == "cov") CHECK(e["provenance"] == "config:my.conf:3");
    if (e["key"] == "k_on_zn") {
      saw_default = true;
      CHECK(e["value"].get<double>() == 5.1e7);
      CHECK(e["provenance"] == "default");
    }
  }
  CHECK(saw_rpm);
  CHECK(saw_default);
  bool saw_koff = false;
  for (const auto& e : j["derived"]) {
    if (e["key"] == "k_off_in") {
      saw_koff = true;
      CHECK(e["value"].get<double>() == Approx(1530.0).epsilon(1e-12));
    }
  }
  CHECK(saw_koff);
}

TEST_CASE("default parameter report matches the tabulated values exactly", "[config]") {
  const auto j = params_json(ParameterSet{});
  const auto value = [&](const std::string& key) {
    for (const auto& e : j["parameters"]) {
      if (e["key"] == key) return e["value"].get<double>();
    }
    FAIL("missing key " << key);
    return 0.0;
  };
  CHECK(value("k_on_zn") == 5.1e7);
  CHECK(value("kd_zn") == 6e-6);
  CHECK(value("k_on_cd") == 5.7e7);
  CHECK(value("kd_cd") == 5.1e-6);
  CHECK(value("k_on_in") == 4e7);
  CHECK(value("boltzmann") == 1.3807e-14);
  CHECK(value("water_viscosity") == 0.0008509);
  CHECK(value("inner_radius") == 1.19);
  CHECK(value("outer_radius") == 2.38);
  CHECK(value("rpm") == 500.0);
  CHECK(value("reception_volume") == 4e-12);
  CHECK(value("rho_zn_cd") == 0.7);
  CHECK(value("rho_in_zn") == 0.2);
  CHECK(value("rho_in_cd") == 0.2);
}

TEST_CASE("missing configuration file is reported", "[config]") {
  CHECK_THROWS(load("/nonexistent/path/to/scenario.conf"));
}
