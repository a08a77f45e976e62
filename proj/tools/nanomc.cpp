#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nanomc/capacity.hpp"
#include "nanomc/config.hpp"
#include "nanomc/detection.hpp"
#include "nanomc/energy.hpp"
#include "nanomc/estimator.hpp"
#include "nanomc/grid.hpp"
#include "nanomc/io.hpp"
#include "nanomc/kinetics.hpp"
#include "nanomc/release.hpp"
#include "nanomc/reproduce.hpp"

namespace {

using nlohmann::ordered_json;

struct Globals {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t threads = 1;
  bool print_params = false;
};

void emit(const Globals& g, const std::string& content) {
  if (g.out.empty() || g.out == "-") {
    std::cout << content;
  } else {
    nanomc::io::write_atomic(g.out, content);
  }
}

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json r = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<nanomc::capacity::MixEntry> parse_mix(const std::string& spec) {
  std::vector<nanomc::capacity::MixEntry> mix;
  for (const auto& item : nanomc::config::detail::split_list(spec)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw nanomc::ConfigError("mix entry '" + item + "' must look like name=fraction");
    mix.push_back({item.substr(0, eq), nanomc::grid::parse_number(item.substr(eq + 1), "mix fraction")});
  }
  if (mix.empty()) throw nanomc::ConfigError("mix is empty");
  return mix;
}

bool parse_switch(const std::string& s) {
  if (s == "on" || s == "true" || s == "1") return true;
  if (s == "off" || s == "false" || s == "0") return false;
  throw nanomc::ConfigError("expected on or off, got '" + s + "'");
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Molecular-communication nanomachine simulator"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Globals g;
  app.add_option("--scenario", g.scenario, "Scenario file (key=value)");
  app.add_option("--seed", g.seed, "Master seed (overrides the scenario)");
  app.add_option("--out", g.out, "Output file, or directory for reproduce");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--print-params", g.print_params, "Print the resolved parameters as JSON and exit");

  auto* cap = app.add_subcommand("capacity", "Molecular capacity for a species mix");
  std::string mix = "zn=1";
  double radius_mm = 3.0;
  double length_mm = 12.0;
  cap->add_option("--mix", mix, "Fractions, e.g. zn=0.4,cd=0.3,hg=0.3");
  cap->add_option("--radius-mm", radius_mm, "Device radius in mm");
  cap->add_option("--length-mm", length_mm, "Device length in mm");

  auto* kin = app.add_subcommand("kinetics", "Receptor binding kinetics");
  kin->require_subcommand(1);
  auto* kin_trace = kin->add_subcommand("trace", "Simulate a binding trace");
  auto* kin_steady = kin->add_subcommand("steady", "Steady-state occupancy");
  std::size_t cycles = 10000;
  int bit = 0;
  std::string saturation = "off";
  kin_trace->add_option("--cycles", cycles, "Binding cycles")->check(CLI::PositiveNumber);
  for (auto* sub : {kin_trace, kin_steady}) {
    sub->add_option("--bit", bit, "Transmitted bit selecting the detected-metal level")->check(CLI::Range(0, 1));
    sub->add_option("--saturation", saturation, "on|off");
  }

  auto* est = app.add_subcommand("estimate", "Estimate ligand ratios from a trace");
  std::string trace_path;
  est->add_option("--trace", trace_path, "Trace CSV (state,dwell_s)")->required();
  std::optional<double> eta;
  est->add_option("--eta", eta, "Affinity ratio override");

  auto* det = app.add_subcommand("detect", "Toxicity detection");
  det->require_subcommand(1);
  auto* det_sweep = det->add_subcommand("sweep", "BEP sweep");
  auto* det_point = det->add_subcommand("point", "BEP at the scenario operating point");
  std::string experiment = "bit_ratio";
  std::string det_grid = "0.1:0.99:19";
  std::size_t mc_bits = 0;
  std::string mc_mode = "multinomial";
  det_sweep->add_option("--experiment", experiment, "affinity | bit_ratio | interferer_mean");
  det_sweep->add_option("--grid", det_grid, "start:stop:count or a comma list");
  for (auto* sub : {det_sweep, det_point}) {
    sub->add_option("--saturation", saturation, "on|off");
    sub->add_option("--eta", eta, "Affinity ratio override");
  }
  det_point->add_option("--mc-bits", mc_bits, "Monte Carlo bits per level (0 = analytic only)");
  det_point->add_option("--mc-mode", mc_mode, "multinomial | trace");

  auto* rel = app.add_subcommand("release", "Molecule release");
  rel->require_subcommand(1);
  auto* rel_sweep = rel->add_subcommand("sweep", "Release-time sweep");
  std::string variable = "rpm";
  std::string rel_grid = "50:1000:50";
  std::optional<std::size_t> particles;
  std::optional<double> dt;
  rel_sweep->add_option("--variable", variable, "rpm | radius_ratio | aspect_ratio");
  rel_sweep->add_option("--grid", rel_grid, "start:stop:step or a comma list");
  rel_sweep->add_option("--particles", particles, "Brownian particles per point");
  rel_sweep->add_option("--dt", dt, "Time step in s");

  auto* en = app.add_subcommand("energy", "Micropump energy");
  en->require_subcommand(1);
  auto* en_sweep = en->add_subcommand("sweep", "Energy sweep");
  std::string en_grid = "100:1000:100";
  double t_max = 10.0;
  double t_step = 0.1;
  en_sweep->add_option("--variable", variable, "rpm | radius_ratio | aspect_ratio");
  en_sweep->add_option("--grid", en_grid, "start:stop:step or a comma list");
  en_sweep->add_option("--t-max", t_max, "Last time point in s");
  en_sweep->add_option("--t-step", t_step, "Time step of the energy trace in s");

  auto* rep = app.add_subcommand("reproduce", "Regenerate figure datasets");
  std::string figure = "all";
  rep->add_option("figure", figure, "fig4 | fig6 | fig7 | fig8 | fig9 | fig10 | all");
  rep->add_option("--particles", particles, "Brownian particles per point");
  rep->add_option("--dt", dt, "Time step in s");

  auto* val = app.add_subcommand("validate", "Check a scenario file");
  std::string validate_path;
  val->add_option("scenario_file", validate_path, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*val) {
      const auto ps = nanomc::config::load(validate_path);
      const auto report = nanomc::config::validate(ps);
      std::cout << report.text();
      return report.ok() ? 0 : 1;
    }

    const auto ps = g.scenario.empty() ? nanomc::config::ParameterSet{} : nanomc::config::load(g.scenario);
    if (g.print_params) {
      std::cout << nanomc::config::params_json(ps).dump(2) << "\n";
      return 0;
    }
    auto sc = nanomc::config::to_scenario(ps);
    if (g.seed) sc.seed = *g.seed;
    if (eta) sc = sc.with_affinity(*eta);
    const bool sat = parse_switch(saturation);

    if (*cap) {
      const auto m = parse_mix(mix);
      const auto row = nanomc::capacity::evaluate_mix(m, radius_mm * nanomc::units::metres_per_mm,
                                                     length_mm * nanomc::units::metres_per_mm);
      const nanomc::capacity::CapacityRow rows[] = {row};
      emit(g, nanomc::reproduce::capacity_csv(rows));
    } else if (*kin_trace || *kin_steady) {
      const auto binders = nanomc::kinetics::scenario_binders(sc, sc.concentrations(sc.bit_concentration(bit, sat)));
      const auto gen = nanomc::kinetics::build_generator(binders);
      if (*kin_trace) {
        emit(g, nanomc::io::trace_csv(nanomc::kinetics::simulate_trace(gen, cycles, sc.seed)));
      } else {
        const auto ss = nanomc::kinetics::steady_state(gen);
        ordered_json j;
        j["p_U"] = ss.p_unbound;
        j["p_B"] = ss.p_bound;
        ordered_json theta = ordered_json::object();
        for (std::size_t i = 0; i < gen.size(); ++i) theta[gen.states[i]] = ss.theta(static_cast<Eigen::Index>(i));
        j["theta"] = theta;
        emit(g, j.dump(2) + "\n");
      }
    } else if (*est) {
      // Trace states follow the generator order: interferer first, then metals.
      const auto binders = nanomc::kinetics::scenario_binders(sc, sc.concentrations(sc.bit_concentration(0)));
      std::vector<double> k_offs;
      ordered_json labels = ordered_json::array();
      for (const auto& b : binders) {
        k_offs.push_back(b.k_off);
        labels.push_back(b.label);
      }
      const nanomc::estimator::IntervalEstimator estimator(k_offs, sc.interval_v);
      const auto model = estimator.estimate(nanomc::io::read_bound_dwells(trace_path));
      ordered_json j;
      j["labels"] = labels;
      j["v"] = model.scheme.v;
      j["thresholds"] = model.scheme.thresholds;
      j["Q"] = matrix_json(model.q);
      j["condition"] = model.condition;
      j["n_b"] = model.n_b;
      j["M"] = model.m;
      j["alpha_hat"] = vector_json(model.alpha_hat);
      j["var_alpha"] = vector_json(model.var_alpha);
      j["alpha_hat_clipped"] = vector_json(model.clipped());
      j["clipped"] = model.was_clipped();
      emit(g, j.dump(2) + "\n");
    } else if (*det_sweep) {
      const auto e = nanomc::detection::parse_experiment(experiment);
      const auto grid = nanomc::grid::parse_count_grid(det_grid);
      emit(g, nanomc::reproduce::detection_csv(nanomc::detection::sweep(e, grid, sc, sat, g.threads)));
    } else if (*det_point) {
      const nanomc::detection::DetectionModel model(sc, sat);
      const auto r = model.evaluate();
      ordered_json j;
      j["affinity_ratio"] = sc.affinity_ratio;
      j["saturation"] = sat;
      j["num_events"] = sc.num_events;
      j["degenerate"] = r.degenerate;
      j["mean0"] = r.mean0;
      j["var0"] = r.var0;
      j["mean1"] = r.mean1;
      j["var1"] = r.var1;
      j["lambda"] = r.lambda;
      j["bep"] = r.bep;
      j["pb_bit0"] = r.pb_bit0;
      j["pb_bit1"] = r.pb_bit1;
      j["samples_used"] = r.samples_used;
      j["floor_rate"] = r.floor_rate;
      if (mc_bits > 0 && !r.degenerate) {
        const auto mode = mc_mode == "trace" ? nanomc::detection::SimulationMode::trace
                          : mc_mode == "multinomial"
                              ? nanomc::detection::SimulationMode::multinomial
                              : throw nanomc::ConfigError("unknown Monte Carlo mode '" + mc_mode + "'");
        const auto mc = model.simulate(mc_bits, r.lambda, mode, nanomc::rng::substream_seed(sc.seed, "detect/point"),
                                       g.threads);
        j["monte_carlo"] = {{"bits_per_level", mc.bits_per_level}, {"bep", mc.bep},
                            {"standard_error", nanomc::detection::bep_standard_error(r, mc_bits)},
                            {"errors0", mc.errors0}, {"errors1", mc.errors1},
                            {"mean0", mc.mean0}, {"var0", mc.var0}, {"skew0", mc.skew0},
                            {"excess_kurtosis0", mc.excess_kurtosis0}, {"mean1", mc.mean1}, {"var1", mc.var1},
                            {"skew1", mc.skew1}, {"excess_kurtosis1", mc.excess_kurtosis1}};
      }
      emit(g, j.dump(2) + "\n");
    } else if (*rel_sweep) {
      const auto v = nanomc::release::parse_variable(variable);
      const auto grid = nanomc::grid::parse_step_grid(rel_grid);
      nanomc::release::SimulationOptions opt;
      opt.particles = particles.value_or(sc.release.particles);
      opt.dt = dt.value_or(sc.release.dt_s);
      opt.seed = nanomc::rng::substream_seed(sc.seed, "release/sweep");
      opt.threads = g.threads;
      emit(g, nanomc::reproduce::release_csv(nanomc::release::release_sweep(v, grid, sc, opt)));
    } else if (*en_sweep) {
      const auto v = nanomc::release::parse_variable(variable);
      const auto grid = nanomc::grid::parse_step_grid(en_grid);
      if (!(t_max >= 0.0)) throw nanomc::ConfigError("--t-max must be non-negative");
      const auto times = nanomc::grid::arange(0.0, t_max, t_step);
      emit(g, nanomc::reproduce::energy_csv(nanomc::energy::energy_sweep(v, grid, times, sc)));
    } else if (*rep) {
      nanomc::reproduce::Options opt;
      opt.outdir = g.out.empty() ? std::filesystem::path(".") : std::filesystem::path(g.out);
      opt.seed = sc.seed;
      opt.threads = g.threads;
      opt.particles = particles.value_or(sc.release.particles);
      opt.dt = dt.value_or(sc.release.dt_s);
      opt.command_line = command_line(argc, argv);
      std::vector<std::string> figs;
      if (figure == "all") {
        figs = nanomc::reproduce::figures();
      } else {
        figs = {figure};
      }
      bool all_ok = true;
      for (const auto& f : figs) {
        const auto outcome = nanomc::reproduce::run(f, sc, opt);
        nanomc::reproduce::write_manifest(outcome, opt, ps);
        for (const auto& c : outcome.checks) {
          std::cout << (c.ok ? "PASS " : "FAIL ") << c.figure << ": " << c.name;
          if (!c.ok) std::cout << " [" << c.detail << "]";
          std::cout << "\n";
        }
        for (const auto& a : outcome.artifacts) std::cout << "wrote " << (opt.outdir / a.file).string() << "\n";
        all_ok = all_ok && outcome.ok();
      }
      return all_ok ? 0 : 1;
    } else {
      std::cout << app.help();
    }
    return 0;
  } catch (const nanomc::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const nanomc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
