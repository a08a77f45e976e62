#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nanomc/error.hpp"
#include "nanomc/params.hpp"
#include "nanomc/rng.hpp"

/// Receptor binding as a continuous-time Markov process with one unbound
/// state and one bound state per ligand class (star topology: every bound
/// state returns to U, there are no bound-to-bound transitions).
namespace nanomc::kinetics {

/// One bound state of the receptor.
struct Binder {
  std::string label;
  double k_on = 0.0;           // 1/(M s)
  double k_off = 0.0;          // 1/s
  double concentration = 0.0;  // M
};

struct GeneratorMatrix {
  std::vector<std::string> states;  // "U" followed by one "B_<label>" per binder
  Eigen::MatrixXd rates;
  std::vector<Binder> binders;      // binders[j] is state j + 1

  std::size_t size() const { return states.size(); }
};

inline GeneratorMatrix build_generator(std::span<const Binder> binders) {
  if (binders.empty()) throw DomainError("generator needs at least one bound state");
  const auto n = static_cast<Eigen::Index>(binders.size() + 1);
  GeneratorMatrix g;
  g.states.reserve(binders.size() + 1);
  g.states.emplace_back("U");
  g.rates = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < binders.size(); ++j) {
    const auto& b = binders[j];
    if (!(b.k_on > 0.0) || !(b.k_off > 0.0)) throw DomainError("binding rates must be positive (" + b.label + ")");
    if (b.concentration < 0.0 || !std::isfinite(b.concentration)) {
      throw DomainError("concentration must be non-negative (" + b.label + ")");
    }
    const auto s = static_cast<Eigen::Index>(j + 1);
    g.states.push_back("B_" + b.label);
    g.rates(0, s) = b.k_on * b.concentration;
    g.rates(s, 0) = b.k_off;
    g.rates(s, s) = -b.k_off;
  }
  g.rates(0, 0) = -g.rates.row(0).sum();
  g.binders.assign(binders.begin(), binders.end());
  return g;
}

/// Binders in generator order (interferer first, then metals) for a scenario
/// at the given per-species concentrations (species order).
inline std::vector<Binder> scenario_binders(const Scenario& sc, std::span<const double> concentrations) {
  if (concentrations.size() != sc.size()) throw DomainError("one concentration per species required");
  std::vector<Binder> out;
  const auto add = [&](std::size_t i) {
    const auto& s = sc.species[i];
    out.push_back({s.name, s.k_on, s.k_off, concentrations[i]});
  };
  add(sc.interferer());
  for (std::size_t i = 0; i < sc.num_metals(); ++i) add(i);
  return out;
}

struct SteadyState {
  Eigen::VectorXd theta;
  double p_unbound = 0.0;
  double p_bound = 0.0;
};

/// Solves theta R = 0 with theta e = 1.
inline SteadyState steady_state(const GeneratorMatrix& gen) {
  const Eigen::Index n = gen.rates.rows();
  Eigen::FullPivLU<Eigen::MatrixXd> rank_check(gen.rates);
  if (rank_check.rank() < n - 1) throw NumericError("generator rank deficiency exceeds one");
  // R^T theta = 0 with one balance equation replaced by normalization.
  Eigen::MatrixXd a = gen.rates.transpose();
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw NumericError("steady-state system is singular");
  SteadyState ss;
  ss.theta = lu.solve(rhs);
  for (Eigen::Index i = 0; i < n; ++i) ss.theta(i) = std::max(0.0, ss.theta(i));
  ss.theta /= ss.theta.sum();
  ss.p_unbound = ss.theta(0);
  ss.p_bound = 1.0 - ss.p_unbound;
  return ss;
}

/// Closed-form bound probability sum(c/K_D) / (1 + sum(c/K_D)).
inline double bound_probability(std::span<const double> concentrations, std::span<const double> k_ds) {
  if (concentrations.size() != k_ds.size()) throw DomainError("one K_D per concentration required");
  double occupancy = 0.0;
  for (std::size_t i = 0; i < k_ds.size(); ++i) {
    if (!(k_ds[i] > 0.0)) throw DomainError("dissociation constants must be positive");
    if (concentrations[i] < 0.0) throw DomainError("concentrations must be non-negative");
    occupancy += concentrations[i] / k_ds[i];
  }
  return occupancy / (1.0 + occupancy);
}

/// Unbound probability in rate form: prod(k_off) over
/// (prod(k_off) + sum_i k_on_i c_i prod_{j != i} k_off_j).
inline double unbound_probability_rates(std::span<const Binder> binders) {
  double all_off = 1.0;
  for (const auto& b : binders) all_off *= b.k_off;
  double denom = all_off;
  for (std::size_t i = 0; i < binders.size(); ++i) {
    double others = 1.0;
    for (std::size_t j = 0; j < binders.size(); ++j) {
      if (j != i) others *= binders[j].k_off;
    }
    denom += binders[i].k_on * binders[i].concentration * others;
  }
  return all_off / denom;
}

struct Interval {
  std::size_t state = 0;  // 0 = unbound, j + 1 = bound to binder j
  double dwell_s = 0.0;
};

struct BindingTrace {
  std::vector<std::string> labels;  // state labels, index-aligned with Interval::state
  std::vector<Interval> intervals;
  std::size_t num_cycles = 0;
  double total_unbound_s = 0.0;

  std::vector<double> bound_dwells() const {
    std::vector<double> out;
    out.reserve(num_cycles);
    for (const auto& iv : intervals) {
      if (iv.state != 0) out.push_back(iv.dwell_s);
    }
    return out;
  }
};

/// Exact (Gillespie-style) sampler of unbound/bound cycles.
class TraceSampler {
 public:
  explicit TraceSampler(const GeneratorMatrix& gen) {
    const Eigen::Index n = gen.rates.rows();
    total_on_ = -gen.rates(0, 0);
    if (!(total_on_ > 0.0)) throw DomainError("no ligand can bind: total on-rate is zero");
    double acc = 0.0;
    for (Eigen::Index j = 1; j < n; ++j) {
      acc += gen.rates(0, j);
      cumulative_.push_back(acc / total_on_);
      off_rates_.push_back(-gen.rates(j, j));
    }
    cumulative_.back() = 1.0;
  }

  /// Calls visit(state, dwell) for 2 * cycles intervals, starting unbound.
  template <class Visitor>
  void run(std::size_t cycles, rng::Engine& eng, Visitor&& visit) const {
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (std::size_t c = 0; c < cycles; ++c) {
      visit(std::size_t{0}, rng::standard_exponential(eng) / total_on_);
      const double u = pick(eng);
      const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      const auto j = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
          it - cumulative_.begin(), static_cast<std::ptrdiff_t>(cumulative_.size()) - 1));
      visit(j + 1, rng::standard_exponential(eng) / off_rates_[j]);
    }
  }

  double total_on_rate() const { return total_on_; }

 private:
  double total_on_ = 0.0;
  std::vector<double> cumulative_;
  std::vector<double> off_rates_;
};

inline BindingTrace simulate_trace(const GeneratorMatrix& gen, std::size_t cycles, rng::Engine& eng) {
  if (cycles < 1) throw DomainError("trace needs at least one cycle");
  TraceSampler sampler(gen);
  BindingTrace trace;
  trace.labels = gen.states;
  trace.num_cycles = cycles;
  trace.intervals.reserve(2 * cycles);
  sampler.run(cycles, eng, [&](std::size_t state, double dwell) {
    trace.intervals.push_back({state, dwell});
    if (state == 0) trace.total_unbound_s += dwell;
  });
  return trace;
}

inline BindingTrace simulate_trace(const GeneratorMatrix& gen, std::size_t cycles, std::uint64_t seed) {
  auto eng = rng::make_engine(seed, "kinetics/trace");
  return simulate_trace(gen, cycles, eng);
}

/// Bound-dwell density: mixture of exponentials weighted by ligand ratios.
inline double dwell_pdf(double tau_b, std::span<const double> ratios, std::span<const double> k_offs) {
  if (ratios.size() != k_offs.size()) throw DomainError("one ratio per unbinding rate required");
  double density = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) density += ratios[i] * k_offs[i] * std::exp(-k_offs[i] * tau_b);
  return density;
}

/// Log-likelihood of a trace split into the part informative about the total
/// concentration and the part informative about the ratios. The constant
/// normalization term is omitted; only differences and argmaxes are meaningful.
struct LogLikelihood {
  double unbound_term = 0.0;  // M ln(k_on c_tot) - T_u k_on c_tot
  double bound_term = 0.0;    // sum ln p(tau_b | alpha)
  static constexpr bool constant_omitted = true;

  double total() const { return unbound_term + bound_term; }
};

/// Assumes a common binding rate k_on for every ligand class. `ratios` and
/// `k_offs` are indexed like the trace's bound states (binder order).
inline LogLikelihood log_likelihood(const BindingTrace& trace, double k_on, double c_tot,
                                    std::span<const double> ratios, std::span<const double> k_offs) {
  if (!(k_on > 0.0) || !(c_tot > 0.0)) throw DomainError("k_on and c_tot must be positive");
  LogLikelihood ll;
  double total_unbound = 0.0;
  std::size_t bound_events = 0;
  for (const auto& iv : trace.intervals) {
    if (!(iv.dwell_s > 0.0)) throw DomainError("dwell times must be positive");
    if (iv.state == 0) {
      total_unbound += iv.dwell_s;
    } else {
      ll.bound_term += std::log(dwell_pdf(iv.dwell_s, ratios, k_offs));
      ++bound_events;
    }
  }
  const double rate = k_on * c_tot;
  ll.unbound_term = static_cast<double>(bound_events) * std::log(rate) - total_unbound * rate;
  return ll;
}

}  // namespace nanomc::kinetics
