#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nanomc/capacity.hpp"
#include "nanomc/config.hpp"
#include "nanomc/csv.hpp"
#include "nanomc/detection.hpp"
#include "nanomc/energy.hpp"
#include "nanomc/grid.hpp"
#include "nanomc/io.hpp"
#include "nanomc/release.hpp"
#include "nanomc/rng.hpp"
#include "nanomc/trends.hpp"

/// Dataset regeneration for every figure, with trend checks and a manifest.
namespace nanomc::reproduce {

inline constexpr std::string_view kDetectionHeader = "x,bep,pb_bit0,pb_bit1,lambda,mean0,var0,mean1,var1";
inline constexpr std::string_view kReleaseHeader = "x,Q_m3s,u_ms,t_analytic_s,t_sim_mean_s,t_sim_std_s";
inline constexpr std::string_view kEnergyHeader = "variable,t_s,deltaP_Pa,Q_m3s,E_J";
inline constexpr std::string_view kCapacityHeader = "mix,r_m,m,C_TM";
inline constexpr std::string_view kMixSweepHeader = "varied,fraction,mix,r_m,m,C_TM";

inline std::string capacity_csv(std::span<const capacity::CapacityRow> rows) {
  csv::Writer w(kCapacityHeader);
  for (const auto& r : rows) {
    w.raw({r.mix, csv::format(r.average_radius_m), csv::format(r.rings), csv::format(r.capacity)});
  }
  return w.str();
}

inline std::string mix_sweep_csv(std::span<const capacity::MixSweepRow> rows) {
  csv::Writer w(kMixSweepHeader);
  for (const auto& r : rows) {
    w.raw({r.varied, csv::format(r.fraction), r.result.mix, csv::format(r.result.average_radius_m),
           csv::format(r.result.rings), csv::format(r.result.capacity)});
  }
  return w.str();
}

inline std::string detection_csv(std::span<const detection::SweepRow> rows) {
  csv::Writer w(kDetectionHeader);
  for (const auto& r : rows) {
    const auto& d = r.result;
    w.row({r.x, d.bep, d.pb_bit0, d.pb_bit1, d.lambda, d.mean0, d.var0, d.mean1, d.var1});
  }
  return w.str();
}

inline std::string release_csv(std::span<const release::SweepRow> rows) {
  csv::Writer w(kReleaseHeader);
  for (const auto& r : rows) {
    const auto& s = r.result;
    w.row({r.x, s.q, s.u, s.t_analytic, s.t_sim_mean, s.t_sim_std});
  }
  return w.str();
}

inline std::string energy_csv(std::span<const energy::EnergyTrace> traces) {
  csv::Writer w(kEnergyHeader);
  for (const auto& tr : traces) {
    for (std::size_t k = 0; k < tr.times.size(); ++k) w.row({tr.x, tr.times[k], tr.delta_p, tr.q, tr.energy[k]});
  }
  return w.str();
}

/// Default grids of the regenerated datasets.
struct Grids {
  std::vector<std::string> fig4_metals{"zn", "cd", "hg"};
  std::vector<double> fig4_fractions = grid::arange(0.0, 1.0, 0.1);
  std::vector<double> fig6_rpm = grid::arange(100.0, 1000.0, 100.0);
  std::vector<double> fig6_radius = grid::arange(0.1, 0.96, 0.05);
  std::vector<double> fig6_aspect = grid::arange(0.1, 2.0, 0.1);
  std::vector<double> fig6_times = grid::arange(0.0, 10.0, 0.1);
  std::vector<double> fig7_rpm = grid::arange(50.0, 1000.0, 50.0);
  std::vector<double> fig7_radius = grid::arange(0.1, 0.96, 0.05);
  std::vector<double> fig7_aspect = grid::arange(0.1, 2.0, 0.1);
  std::vector<double> fig8_affinity = grid::linspace(0.1, 1.0, 10);
  std::vector<double> fig9_ratio = grid::linspace(0.1, 0.99, 19);
  std::vector<double> fig10_interferer = grid::linspace(5e-5, 1e-3, 20);
  std::vector<double> fig10_etas{0.2, 0.5, 0.8};
};

struct Options {
  std::filesystem::path outdir = ".";
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::size_t particles = 10000;
  double dt = 1e-4;
  std::string command_line;
  Grids grids{};
};

struct Artifact {
  std::string file;
  std::string sha256;
  std::size_t bytes = 0;
};

struct Outcome {
  std::string figure;
  std::vector<Artifact> artifacts;
  trends::Checks checks;
  std::vector<std::string> substreams;
  double duration_s = 0.0;

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.ok) return false;
    }
    return true;
  }
};

inline const std::vector<std::string>& figures() {
  static const std::vector<std::string> f{"fig4", "fig6", "fig7", "fig8", "fig9", "fig10"};
  return f;
}

namespace detail {

inline void emit(Outcome& o, const Options& opt, const std::string& name, const std::string& content) {
  const auto path = opt.outdir / name;
  io::write_atomic(path, content);
  o.artifacts.push_back({name, io::sha256_hex(content), content.size()});
}

inline void append(trends::Checks& into, const trends::Checks& more) { into.insert(into.end(), more.begin(), more.end()); }

inline double radius_of(const std::string& metal) { return find_metal(metal)->atomic_radius_pm; }

inline void run_fig4(Outcome& o, const Scenario& sc, const Options& opt) {
  const auto& metals = opt.grids.fig4_metals;
  const auto rows = capacity::mix_sweep(metals, opt.grids.fig4_fractions, sc.device.radius_m, sc.device.length_m);
  emit(o, opt, "fig4.csv", mix_sweep_csv(rows));
  append(o.checks, trends::fig4(rows));
  const std::size_t per = opt.grids.fig4_fractions.size();
  for (std::size_t k = 0; k < metals.size(); ++k) {
    double others = 0.0;
    for (std::size_t j = 0; j < metals.size(); ++j) {
      if (j != k) others += radius_of(metals[j]);
    }
    others /= static_cast<double>(metals.size() - 1);
    const std::span<const capacity::MixSweepRow> block(rows.data() + k * per, per);
    o.checks.push_back(trends::fig4_block(block, radius_of(metals[k]), others));
  }
}

inline void run_fig6(Outcome& o, const Scenario& sc, const Options& opt) {
  const auto& t = opt.grids.fig6_times;
  const auto a = energy::energy_sweep(release::Variable::rpm, opt.grids.fig6_rpm, t, sc);
  const auto b = energy::energy_sweep(release::Variable::radius_ratio, opt.grids.fig6_radius, t, sc);
  const auto c = energy::energy_sweep(release::Variable::aspect_ratio, opt.grids.fig6_aspect, t, sc);
  emit(o, opt, "fig6a.csv", energy_csv(a));
  emit(o, opt, "fig6b.csv", energy_csv(b));
  emit(o, opt, "fig6c.csv", energy_csv(c));
  append(o.checks, trends::fig6("fig6a", a, 1));
  append(o.checks, trends::fig6("fig6b", b, 1));
  append(o.checks, trends::fig6("fig6c", c, -1));
  const double rpm500[] = {500.0};
  const double rpm1000[] = {1000.0};
  o.checks.push_back(trends::rpm_energy_ratio(energy::energy_sweep(release::Variable::rpm, rpm500, t, sc).front(),
                                              energy::energy_sweep(release::Variable::rpm, rpm1000, t, sc).front()));
}

inline release::SimulationOptions release_options(const Options& opt, std::string_view label) {
  release::SimulationOptions s;
  s.particles = opt.particles;
  s.dt = opt.dt;
  s.threads = opt.threads;
  s.seed = rng::substream_seed(opt.seed, label);
  return s;
}

inline void run_fig7(Outcome& o, const Scenario& sc, const Options& opt) {
  const auto a = release::release_sweep(release::Variable::rpm, opt.grids.fig7_rpm, sc, release_options(opt, "fig7a"));
  const auto b = release::release_sweep(release::Variable::radius_ratio, opt.grids.fig7_radius, sc,
                                        release_options(opt, "fig7b"));
  const auto c = release::release_sweep(release::Variable::aspect_ratio, opt.grids.fig7_aspect, sc,
                                        release_options(opt, "fig7c"));
  emit(o, opt, "fig7a.csv", release_csv(a));
  emit(o, opt, "fig7b.csv", release_csv(b));
  emit(o, opt, "fig7c.csv", release_csv(c));
  append(o.checks, trends::fig7a(a));
  append(o.checks, trends::fig7b(b));
  append(o.checks, trends::fig7c(c));
  o.substreams = {"release/particle <- fig7a", "release/particle <- fig7b", "release/particle <- fig7c"};
}

inline void run_fig8(Outcome& o, const Scenario& sc, const Options& opt) {
  const auto rows = detection::sweep(detection::Experiment::affinity, opt.grids.fig8_affinity, sc, false, opt.threads);
  emit(o, opt, "fig8.csv", detection_csv(rows));
  append(o.checks, trends::fig8(rows));
  o.substreams = {"detect/outer"};
}

inline void run_fig9(Outcome& o, const Scenario& sc, const Options& opt) {
  const auto a = detection::sweep(detection::Experiment::bit_ratio, opt.grids.fig9_ratio, sc, false, opt.threads);
  const auto b = detection::sweep(detection::Experiment::bit_ratio, opt.grids.fig9_ratio, sc, true, opt.threads);
  emit(o, opt, "fig9a.csv", detection_csv(a));
  emit(o, opt, "fig9b.csv", detection_csv(b));
  append(o.checks, trends::fig9(a, b));
  o.substreams = {"detect/outer"};
}

inline void run_fig10(Outcome& o, const Scenario& sc, const Options& opt) {
  std::vector<std::vector<detection::SweepRow>> by_eta;
  for (double eta : opt.grids.fig10_etas) {
    by_eta.push_back(detection::sweep(detection::Experiment::interferer_mean, opt.grids.fig10_interferer,
                                      sc.with_affinity(eta), false, opt.threads));
    emit(o, opt, "fig10_eta" + csv::format(eta) + ".csv", detection_csv(by_eta.back()));
  }
  append(o.checks, trends::fig10(by_eta, opt.grids.fig10_etas));
  o.substreams = {"detect/outer"};
}

}  // namespace detail

inline Outcome run(std::string_view figure, const Scenario& base, const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  Scenario sc = base;
  sc.seed = opt.seed;
  Outcome o;
  o.figure = std::string(figure);
  if (figure == "fig4") {
    detail::run_fig4(o, sc, opt);
  } else if (figure == "fig6") {
    detail::run_fig6(o, sc, opt);
  } else if (figure == "fig7") {
    detail::run_fig7(o, sc, opt);
  } else if (figure == "fig8") {
    detail::run_fig8(o, sc, opt);
  } else if (figure == "fig9") {
    detail::run_fig9(o, sc, opt);
  } else if (figure == "fig10") {
    detail::run_fig10(o, sc, opt);
  } else {
    throw ConfigError("unknown figure '" + std::string(figure) + "'");
  }
  o.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

inline nlohmann::ordered_json manifest(const Outcome& o, const Options& opt, const config::ParameterSet& ps) {
  nlohmann::ordered_json m;
  m["figure"] = o.figure;
  m["command"] = opt.command_line;
  m["master_seed"] = opt.seed;
  m["threads"] = opt.threads;
  m["substreams"] = o.substreams;
  auto& arts = m["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& a : o.artifacts) arts.push_back({{"file", a.file}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  auto& checks = m["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : o.checks) {
    checks.push_back({{"figure", c.figure}, {"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  }
  m["duration_s"] = o.duration_s;
  m["scenario"] = config::params_json(ps);
  return m;
}

inline void write_manifest(const Outcome& o, const Options& opt, const config::ParameterSet& ps) {
  io::write_atomic(opt.outdir / ("manifest_" + o.figure + ".json"), manifest(o, opt, ps).dump(2) + "\n");
}

}  // namespace nanomc::reproduce
