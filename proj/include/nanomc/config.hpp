#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nanomc/detection.hpp"
#include "nanomc/error.hpp"
#include "nanomc/estimator.hpp"
#include "nanomc/grid.hpp"
#include "nanomc/io.hpp"
#include "nanomc/params.hpp"
#include "nanomc/release.hpp"
#include "nanomc/units.hpp"

/// Flat key=value scenario files. Values are written in the units listed by
/// the schema (lengths in mm, viscosity in g/(mm s), ...) and converted to SI
/// when a Scenario is built.
namespace nanomc::config {

struct Entry {
  std::string key;
  std::string unit;
  double value = std::numeric_limits<double>::quiet_NaN();
  std::string text;  // set for list/name entries
  bool is_text = false;
  std::string provenance = "default";
  std::size_t line = 0;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      auto t = trim(s.substr(begin, i - begin));
      if (!t.empty()) out.push_back(std::move(t));
      begin = i + 1;
    }
  }
  return out;
}

struct RawLine {
  std::string key;
  std::string value;
  std::size_t line = 0;
  std::size_t value_column = 0;
};

}  // namespace detail

/// Known metal rates; other metals must be given explicitly.
struct MetalDefaults {
  std::string_view name;
  double k_on;
  double kd;
  double mean_kd_multiple;
};

inline constexpr MetalDefaults kMetalDefaults[] = {
    {"zn", 5.1e7, 6e-6, 0.0},
    {"cd", 5.7e7, 5.1e-6, 3.0},
};

class ParameterSet {
 public:
  ParameterSet() : ParameterSet(std::vector<std::string>{"zn", "cd"}, "zn") {}

  ParameterSet(std::vector<std::string> metals, std::string detected)
      : metals_(std::move(metals)), detected_(std::move(detected)) {
    text("metals", join(metals_));
    text("detected", detected_);
    num("boltzmann", "mm^2 g/(K s^2)", 1.3807e-14);
    num("avogadro", "1/mol", 6.02214076e23);
    num("temperature", "K", 300.0);
    num("water_viscosity", "g/(mm s)", 0.0008509);
    num("water_density", "g/mm^3", 996.64e-6);
    num("water_volume_fraction", "1", 0.9);
    num("device_radius", "mm", 3.0);
    num("device_length", "mm", 12.0);
    num("inner_radius", "mm", 1.19);
    num("outer_radius", "mm", 2.38);
    num("rpm", "rpm", 500.0);
    num("delta_theta", "rad", std::numbers::pi / 2.0);
    num("aspect_ratio", "1", 0.1);
    for (const auto& m : metals_) {
      const MetalDefaults* d = nullptr;
      for (const auto& md : kMetalDefaults) {
        if (md.name == m) d = &md;
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      num("k_on_" + m, "1/(M s)", d ? d->k_on : nan);
      num("kd_" + m, "M", d ? d->kd : nan);
      if (m != detected_) num("mean_" + m + "_kd_multiple", "1", d ? d->mean_kd_multiple : nan);
    }
    num("affinity_ratio", "1", 0.2);
    num("k_on_in", "1/(M s)", 4e7);
    num("mean_in_kd_multiple", "1", 2.0);
    num("reception_volume", "L", 4e-12);
    num("bit0_kd_multiple", "1", 4.0);
    num("bit1_kd_multiple", "1", 5.0);
    num("saturation_bit0_kd_multiple", "1", 39.0);
    num("saturation_bit1_kd_multiple", "1", 40.0);
    num("cov", "1", 0.1);
    const auto names = species_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        num(rho_key(names[i], names[j]), "1", default_rho(names[i], names[j]));
      }
    }
    num("num_events", "1", 100000.0);
    num("outer_samples", "1", 10000.0);
    num("interval_v", "1", 3.0);
    num("seed", "1", 1.0);
    num("particles", "1", 10000.0);
    num("dt", "s", 1e-4);
  }

  const std::vector<std::string>& metals() const { return metals_; }
  const std::string& detected() const { return detected_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Interferer first, then metals; the order used for correlation keys.
  std::vector<std::string> species_names() const {
    std::vector<std::string> n{"in"};
    n.insert(n.end(), metals_.begin(), metals_.end());
    return n;
  }

  std::string rho_key(const std::string& a, const std::string& b) const {
    const auto names = species_names();
    const auto ia = std::find(names.begin(), names.end(), a) - names.begin();
    const auto ib = std::find(names.begin(), names.end(), b) - names.begin();
    return ia <= ib ? "rho_" + a + "_" + b : "rho_" + b + "_" + a;
  }

  Entry* find(std::string_view key) {
    for (auto& e : entries_) {
      if (e.key == key) return &e;
    }
    // Correlation keys are accepted in either order.
    if (key.starts_with("rho_")) {
      const auto rest = key.substr(4);
      for (const auto& a : species_names()) {
        if (rest.size() > a.size() + 1 && rest.starts_with(a) && rest[a.size()] == '_') {
          const std::string b(rest.substr(a.size() + 1));
          const auto canon = rho_key(a, b);
          for (auto& e : entries_) {
            if (e.key == canon) return &e;
          }
        }
      }
    }
    return nullptr;
  }
  const Entry* find(std::string_view key) const { return const_cast<ParameterSet*>(this)->find(key); }

  double get(std::string_view key) const {
    const auto* e = find(key);
    if (!e) throw ConfigError("no parameter named '" + std::string(key) + "'");
    return e->value;
  }

  std::size_t line_of(std::string_view key) const {
    const auto* e = find(key);
    return e ? e->line : 0;
  }

  void set(std::string_view key, double value, std::string provenance, std::size_t line = 0) {
    auto* e = find(key);
    if (!e || e->is_text) throw ConfigError("unknown parameter '" + std::string(key) + "'");
    e->value = value;
    e->provenance = std::move(provenance);
    e->line = line;
  }

  void mark_text(std::string_view key, std::string provenance, std::size_t line) {
    auto* e = find(key);
    e->provenance = std::move(provenance);
    e->line = line;
  }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
  }

  static double default_rho(const std::string& a, const std::string& b) {
    const auto is = [&](std::string_view x, std::string_view y) { return (a == x && b == y) || (a == y && b == x); };
    if (is("zn", "cd")) return 0.7;
    if (is("in", "zn") || is("in", "cd")) return 0.2;
    return 0.0;
  }

  void num(std::string key, std::string unit, double v) {
    entries_.push_back({std::move(key), std::move(unit), v, {}, false, "default", 0});
  }
  void text(std::string key, std::string v) {
    entries_.push_back({std::move(key), "", std::numeric_limits<double>::quiet_NaN(), std::move(v), true, "default", 0});
  }

  std::vector<std::string> metals_;
  std::string detected_;
  std::vector<Entry> entries_;
};

inline ParameterSet parse(std::string_view content, const std::string& source) {
  std::vector<detail::RawLine> raw;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string body = line;
    if (const auto hash = body.find('#'); hash != std::string::npos) body.resize(hash);
    if (detail::trim(body).empty()) continue;
    const auto eq = body.find('=');
    const auto where = source + ":" + std::to_string(line_no);
    if (eq == std::string::npos) {
      const auto col = body.find_first_not_of(" \t") + 1;
      throw ConfigError(where + ":" + std::to_string(col) + ": expected key=value");
    }
    auto key = detail::trim(std::string_view(body).substr(0, eq));
    auto value = detail::trim(std::string_view(body).substr(eq + 1));
    const auto value_col = body.find_first_not_of(" \t", eq + 1);
    if (key.empty()) throw ConfigError(where + ":1: missing key before '='");
    if (value.empty()) throw ConfigError(where + ":" + std::to_string(eq + 2) + ": missing value for '" + key + "'");
    for (const auto& r : raw) {
      if (r.key == key) {
        throw ConfigError(where + ": duplicate key '" + key + "' (first set on line " + std::to_string(r.line) + ")");
      }
    }
    raw.push_back({key, value, line_no, value_col == std::string::npos ? eq + 2 : value_col + 1});
  }

  std::vector<std::string> metals{"zn", "cd"};
  std::string detected = "zn";
  const detail::RawLine* metals_line = nullptr;
  const detail::RawLine* detected_line = nullptr;
  for (const auto& r : raw) {
    if (r.key == "metals") {
      metals = detail::split_list(r.value);
      metals_line = &r;
    } else if (r.key == "detected") {
      detected = r.value;
      detected_line = &r;
    }
  }
  ParameterSet ps(metals, detected);
  const auto provenance = [&](const detail::RawLine& r) { return "config:" + source + ":" + std::to_string(r.line); };
  if (metals_line) ps.mark_text("metals", provenance(*metals_line), metals_line->line);
  if (detected_line) ps.mark_text("detected", provenance(*detected_line), detected_line->line);
  for (const auto& r : raw) {
    if (r.key == "metals" || r.key == "detected") continue;
    const auto* e = ps.find(r.key);
    const auto where = source + ":" + std::to_string(r.line);
    if (!e || e->is_text) throw ConfigError(where + ": unknown key '" + r.key + "'");
    double v = 0.0;
    try {
      v = grid::parse_number(r.value, "value of '" + r.key + "'");
    } catch (const ConfigError& err) {
      throw ConfigError(where + ":" + std::to_string(r.value_column) + ": " + err.what());
    }
    ps.set(r.key, v, provenance(r), r.line);
  }
  return ps;
}

inline ParameterSet load(const std::filesystem::path& path) { return parse(io::read_file(path), path.string()); }

struct Check {
  std::string name;
  bool ok = true;
  std::string message;
  std::size_t line = 0;
};

struct Report {
  std::vector<Check> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  }
  const Check* first_failure() const {
    for (const auto& c : checks) {
      if (!c.ok) return &c;
    }
    return nullptr;
  }
  std::string text() const {
    std::string s;
    for (const auto& c : checks) {
      s += c.ok ? "PASS " : "FAIL ";
      s += c.name;
      if (!c.ok) {
        s += ": " + c.message;
        if (c.line) s += " (line " + std::to_string(c.line) + ")";
      }
      s += '\n';
    }
    return s;
  }
};

namespace detail {

inline bool is_count(double v, double min) { return std::isfinite(v) && v >= min && v == std::floor(v) && v < 9e18; }

}  // namespace detail

inline Scenario build_unchecked(const ParameterSet& ps);

inline Report validate(const ParameterSet& ps) {
  Report rep;
  const auto add = [&](std::string name, bool ok, std::string msg, std::size_t line = 0) {
    rep.checks.push_back({std::move(name), ok, ok ? std::string{} : std::move(msg), line});
  };
  const auto positive = [&](std::string_view key) {
    const double v = ps.get(key);
    const bool ok = std::isfinite(v) && v > 0.0;
    add(std::string(key) + " positive", ok,
        std::isnan(v) ? std::string(key) + " is missing" : std::string(key) + " must be positive", ps.line_of(key));
    return ok;
  };

  bool species_ok = !ps.metals().empty();
  add("metals listed", species_ok, "at least one metal is required", ps.line_of("metals"));
  for (const auto& m : ps.metals()) {
    const bool known = find_metal(m).has_value();
    add("metal " + m + " has known radius and mass", known, "no atomic radius or molar mass for '" + m + "'",
        ps.line_of("metals"));
    species_ok = species_ok && known;
  }
  {
    auto sorted = ps.metals();
    std::sort(sorted.begin(), sorted.end());
    const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
                          std::find(sorted.begin(), sorted.end(), "in") == sorted.end();
    add("metal names distinct", distinct, "metal names must be distinct and must not be 'in'", ps.line_of("metals"));
    species_ok = species_ok && distinct;
  }
  const bool detected_ok =
      std::find(ps.metals().begin(), ps.metals().end(), ps.detected()) != ps.metals().end();
  add("detected metal listed", detected_ok, "detected metal '" + ps.detected() + "' is not among the metals",
      ps.line_of("detected"));
  species_ok = species_ok && detected_ok;

  bool rates_ok = true;
  for (const auto& m : ps.metals()) {
    rates_ok = positive("k_on_" + m) && rates_ok;
    rates_ok = positive("kd_" + m) && rates_ok;
  }
  rates_ok = positive("k_on_in") && rates_ok;
  for (const char* k : {"boltzmann", "avogadro", "temperature", "water_viscosity", "water_density",
                        "reception_volume", "device_radius", "device_length", "inner_radius", "outer_radius", "rpm",
                        "delta_theta", "aspect_ratio", "interval_v", "dt"}) {
    positive(k);
  }

  {
    const double eta = ps.get("affinity_ratio");
    add("affinity_ratio in (0, 1]", eta > 0.0 && eta <= 1.0, "affinity ratio must lie in (0, 1]",
        ps.line_of("affinity_ratio"));
  }
  {
    const double phi = ps.get("water_volume_fraction");
    add("water_volume_fraction in (0, 1]", phi > 0.0 && phi <= 1.0, "water volume fraction must lie in (0, 1]",
        ps.line_of("water_volume_fraction"));
  }
  {
    const double c = ps.get("cov");
    add("cov non-negative", c >= 0.0 && std::isfinite(c), "coefficient of variation must be non-negative",
        ps.line_of("cov"));
  }
  for (const auto& m : ps.metals()) {
    if (m == ps.detected()) continue;
    const auto key = "mean_" + m + "_kd_multiple";
    const double v = ps.get(key);
    add(key + " non-negative", v >= 0.0, std::isnan(v) ? key + " is missing" : key + " must be non-negative",
        ps.line_of(key));
  }
  {
    const double v = ps.get("mean_in_kd_multiple");
    add("mean_in_kd_multiple non-negative", v >= 0.0, "mean_in_kd_multiple must be non-negative",
        ps.line_of("mean_in_kd_multiple"));
  }
  {
    const double b0 = ps.get("bit0_kd_multiple");
    const double b1 = ps.get("bit1_kd_multiple");
    add("bit concentrations ordered", b0 > 0.0 && b1 > b0, "bit1 concentration must exceed bit0 concentration (> 0)",
        ps.line_of(b0 >= b1 ? "bit0_kd_multiple" : "bit1_kd_multiple"));
    const double s0 = ps.get("saturation_bit0_kd_multiple");
    const double s1 = ps.get("saturation_bit1_kd_multiple");
    add("saturation bit concentrations ordered", s0 > 0.0 && s1 > s0,
        "saturation bit1 concentration must exceed saturation bit0 concentration (> 0)",
        ps.line_of(s0 >= s1 ? "saturation_bit0_kd_multiple" : "saturation_bit1_kd_multiple"));
  }

  bool rho_ok = true;
  const auto names = ps.species_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      const auto key = ps.rho_key(names[i], names[j]);
      const double r = ps.get(key);
      const bool ok = r >= -1.0 && r <= 1.0;
      if (!ok) {
        add("correlation " + key + " in [-1, 1]", false, key + " = " + csv::format(r) + " is outside [-1, 1]",
            ps.line_of(key));
      }
      rho_ok = rho_ok && ok;
    }
  }
  if (rho_ok) add("correlations in [-1, 1]", true, "");
  if (rho_ok && species_ok) {
    Eigen::MatrixXd rho = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(names.size()),
                                                    static_cast<Eigen::Index>(names.size()));
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            rho(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = ps.get(ps.rho_key(names[i], names[j]));
      }
    }
    add("correlation matrix positive semi-definite", detection::is_psd(rho),
        "correlation matrix is not positive semi-definite");
  } else {
    add("correlation matrix positive semi-definite", false, "not checked: correlation entries or species invalid");
  }

  for (const char* k : {"num_events", "outer_samples"}) {
    add(std::string(k) + " is a positive integer", detail::is_count(ps.get(k), 1.0),
        std::string(k) + " must be a positive integer", ps.line_of(k));
  }
  add("particles is an integer >= 100", detail::is_count(ps.get("particles"), 100.0),
      "particles must be an integer of at least 100", ps.line_of("particles"));
  add("seed is a non-negative integer", detail::is_count(ps.get("seed"), 0.0), "seed must be a non-negative integer",
      ps.line_of("seed"));

  if (species_ok && rates_ok && rep.ok()) {
    const Scenario sc = build_unchecked(ps);
    std::vector<double> k_offs;
    for (const auto& s : sc.species) k_offs.push_back(s.k_off);
    try {
      const estimator::IntervalEstimator est(k_offs, sc.interval_v);
      add("interval thresholds strictly increasing", true, "");
      add("interval scheme well conditioned", true, "");
    } catch (const DegenerateSchemeError& e) {
      add("interval thresholds strictly increasing", false, e.what(), ps.line_of("affinity_ratio"));
    } catch (const IllConditionedSchemeError& e) {
      add("interval thresholds strictly increasing", true, "");
      add("interval scheme well conditioned", false, e.what(), ps.line_of("affinity_ratio"));
    }
    try {
      const auto g = release::default_geometry(sc.pump);
      add("pump geometry valid", true, "");
      add("pump fits inside the device", g.r2 < sc.device.radius_m, "outer channel radius exceeds the device radius",
          ps.line_of("outer_radius"));
      double max_radius = 0.0;
      for (const auto& s : sc.species) max_radius = std::max(max_radius, s.atomic_radius_m);
      add("device radius exceeds particle radius", sc.device.radius_m > max_radius,
          "device radius must exceed every particle radius", ps.line_of("device_radius"));
      const auto fluid = release::fluid_from_scenario(sc);
      const double u = release::pump_flow_quadratic(g, fluid.mu_eff(), 0.0) / (g.w() * g.h);
      add("release time step resolves advection", sc.release.dt_s <= 0.01 * sc.device.length_m / u,
          "dt must not exceed 1% of the advection time L/u", ps.line_of("dt"));
    } catch (const DomainError& e) {
      add("pump geometry valid", false, e.what(), ps.line_of("inner_radius"));
    }
  }
  return rep;
}

inline Scenario build_unchecked(const ParameterSet& ps) {
  Scenario sc;
  sc.constants.boltzmann_si = units::to_si(ps.get("boltzmann"), units::Kind::boltzmann);
  sc.constants.avogadro = ps.get("avogadro");
  sc.constants.temperature_default = ps.get("temperature");
  sc.temperature_k = ps.get("temperature");
  for (const auto& m : ps.metals()) sc.species.push_back(make_metal(m, ps.get("k_on_" + m), ps.get("kd_" + m)));
  LigandSpecies in;
  in.name = "in";
  in.k_on = ps.get("k_on_in");
  in.is_interferer = true;
  sc.species.push_back(in);
  sc.detected = *sc.index_of(ps.detected());
  sc.reception_volume_l = ps.get("reception_volume");
  sc.affinity_ratio = ps.get("affinity_ratio");
  sc.cov = ps.get("cov");
  const auto n = static_cast<Eigen::Index>(sc.species.size());
  sc.correlations = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = ps.get(ps.rho_key(sc.species[static_cast<std::size_t>(i)].name,
                                         sc.species[static_cast<std::size_t>(j)].name));
      sc.correlations(i, j) = sc.correlations(j, i) = r;
    }
  }
  sc.mean_kd_multiple.assign(sc.species.size(), 0.0);
  for (std::size_t i = 0; i < sc.num_metals(); ++i) {
    if (i != sc.detected) sc.mean_kd_multiple[i] = ps.get("mean_" + sc.species[i].name + "_kd_multiple");
  }
  sc.mean_kd_multiple[sc.interferer()] = ps.get("mean_in_kd_multiple");
  sc.bit0_kd_multiple = ps.get("bit0_kd_multiple");
  sc.bit1_kd_multiple = ps.get("bit1_kd_multiple");
  sc.saturation_bit0_kd_multiple = ps.get("saturation_bit0_kd_multiple");
  sc.saturation_bit1_kd_multiple = ps.get("saturation_bit1_kd_multiple");
  sc.num_events = static_cast<std::size_t>(ps.get("num_events"));
  sc.outer_samples = static_cast<std::size_t>(ps.get("outer_samples"));
  sc.interval_v = ps.get("interval_v");
  sc.seed = static_cast<std::uint64_t>(ps.get("seed"));
  sc.device.radius_m = units::to_si(ps.get("device_radius"), units::Kind::length);
  sc.device.length_m = units::to_si(ps.get("device_length"), units::Kind::length);
  sc.fluid.water_viscosity_pa_s = units::to_si(ps.get("water_viscosity"), units::Kind::viscosity);
  sc.fluid.water_density_kg_m3 = units::to_si(ps.get("water_density"), units::Kind::density);
  sc.fluid.water_volume_fraction = ps.get("water_volume_fraction");
  sc.pump.inner_radius_m = units::to_si(ps.get("inner_radius"), units::Kind::length);
  sc.pump.outer_radius_m = units::to_si(ps.get("outer_radius"), units::Kind::length);
  sc.pump.rpm = ps.get("rpm");
  sc.pump.delta_theta_rad = ps.get("delta_theta");
  sc.pump.aspect_ratio = ps.get("aspect_ratio");
  sc.release.particles = static_cast<std::size_t>(ps.get("particles"));
  sc.release.dt_s = ps.get("dt");
  sc.refresh_interferer();
  return sc;
}

/// Validated conversion to SI; throws ConfigError naming the first failure.
inline Scenario to_scenario(const ParameterSet& ps) {
  const auto rep = validate(ps);
  if (const auto* f = rep.first_failure()) {
    std::string msg = "invalid scenario: " + f->name + ": " + f->message;
    if (f->line) msg += " (line " + std::to_string(f->line) + ")";
    throw ConfigError(msg);
  }
  return build_unchecked(ps);
}

/// Resolved parameters with units and provenance, including derived rates.
inline nlohmann::ordered_json params_json(const ParameterSet& ps) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  auto& params = out["parameters"] = nlohmann::ordered_json::array();
  for (const auto& e : ps.entries()) {
    nlohmann::ordered_json j;
    j["key"] = e.key;
    if (e.is_text) {
      j["value"] = e.text;
    } else {
      j["value"] = e.value;
    }
    j["unit"] = e.unit;
    j["provenance"] = e.provenance;
    params.push_back(std::move(j));
  }
  const auto rep = validate(ps);
  if (rep.ok()) {
    const auto sc = build_unchecked(ps);
    auto& derived = out["derived"] = nlohmann::ordered_json::array();
    const auto push = [&](std::string key, double v, std::string unit, std::string how) {
      derived.push_back({{"key", std::move(key)}, {"value", v}, {"unit", std::move(unit)},
                         {"provenance", "derived: " + std::move(how)}});
    };
    for (std::size_t i = 0; i < sc.num_metals(); ++i) {
      const auto& s = sc.species[i];
      push("k_off_" + s.name, s.k_off, "1/s", "k_on_" + s.name + " * kd_" + s.name);
    }
    const auto& in = sc.species[sc.interferer()];
    push("k_off_in", in.k_off, "1/s", "max metal k_off / affinity_ratio");
    push("kd_in", in.k_d(), "M", "k_off_in / k_on_in");
    push("channel_height", units::from_si(sc.pump.channel_height_m(), units::Kind::length), "mm",
         "aspect_ratio * (outer_radius - inner_radius)");
    push("boltzmann_si", sc.constants.boltzmann_si, "J/K", "boltzmann converted to SI");
  }
  return out;
}

}  // namespace nanomc::config
