#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "nanomc/error.hpp"
#include "nanomc/estimator.hpp"
#include "nanomc/kinetics.hpp"
#include "nanomc/parallel.hpp"
#include "nanomc/params.hpp"
#include "nanomc/rng.hpp"

/// Binary toxicity detection: Gaussian population of molecule counts,
/// conditioning on the detected metal, moment propagation through the
/// interval estimator, threshold choice and bit error probability.
namespace nanomc::detection {

struct PopulationModel {
  std::vector<std::string> labels;
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;

  Eigen::Index size() const { return mu.size(); }
};

/// Checks symmetry, unit diagonal and entries in [-1, 1]. Returns an empty
/// string when valid, otherwise the first violation.
inline std::string correlation_problem(const Eigen::MatrixXd& rho) {
  if (rho.rows() != rho.cols()) return "correlation matrix is not square";
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    if (std::abs(rho(i, i) - 1.0) > 1e-12) return "correlation diagonal entry " + std::to_string(i) + " is not 1";
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      if (!(rho(i, j) >= -1.0 && rho(i, j) <= 1.0)) {
        return "correlation entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside [-1, 1]";
      }
      if (std::abs(rho(i, j) - rho(j, i)) > 1e-12) return "correlation matrix is not symmetric";
    }
  }
  return {};
}

inline bool is_psd(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) return false;
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  return eig.eigenvalues().minCoeff() >= -1e-12 * scale;
}

/// Sigma_ij = rho_ij (cov mu_i)(cov mu_j).
inline PopulationModel make_population(std::vector<std::string> labels, const Eigen::VectorXd& mu, double cov,
                                       const Eigen::MatrixXd& rho) {
  if (rho.rows() != mu.size()) throw ModelError("correlation matrix does not match the mean vector");
  if (auto p = correlation_problem(rho); !p.empty()) throw ModelError(p);
  if (!(cov >= 0.0)) throw ModelError("coefficient of variation must be non-negative");
  PopulationModel pop;
  pop.labels = std::move(labels);
  pop.mu = mu;
  const Eigen::VectorXd sd = cov * mu.cwiseAbs();
  pop.sigma = rho.cwiseProduct(sd * sd.transpose());
  if (!is_psd(pop.sigma)) throw ModelError("population covariance is not positive semi-definite");
  return pop;
}

struct ConditionalPopulation {
  Eigen::Index conditioned_index = 0;
  double fixed_value = 0.0;
  std::vector<Eigen::Index> remaining;  // original indices of the free components
  Eigen::VectorXd mu_cond;
  Eigen::MatrixXd sigma_cond;
  Eigen::MatrixXd cholesky_factor;      // L L^T = sigma_cond
  bool triangular = true;               // false when sigma_cond is singular and a symmetric root is used

  Eigen::Index full_size() const { return static_cast<Eigen::Index>(remaining.size()) + 1; }
};

inline ConditionalPopulation condition(const PopulationModel& pop, Eigen::Index index, double s_star) {
  const Eigen::Index d = pop.size();
  if (index < 0 || index >= d) throw DomainError("conditioning index out of range");
  if (!is_psd(pop.sigma)) throw ModelError("population covariance is not positive semi-definite");
  const double s_ii = pop.sigma(index, index);
  if (!(s_ii > 0.0)) throw DegenerateConditioningError("conditioning on a component with zero variance");
  ConditionalPopulation c;
  c.conditioned_index = index;
  c.fixed_value = s_star;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (j != index) c.remaining.push_back(j);
  }
  const auto k = static_cast<Eigen::Index>(c.remaining.size());
  Eigen::VectorXd mu_r(k);
  Eigen::VectorXd s_ri(k);
  Eigen::MatrixXd s_rr(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    mu_r(a) = pop.mu(c.remaining[static_cast<std::size_t>(a)]);
    s_ri(a) = pop.sigma(c.remaining[static_cast<std::size_t>(a)], index);
    for (Eigen::Index b = 0; b < k; ++b) {
      s_rr(a, b) = pop.sigma(c.remaining[static_cast<std::size_t>(a)], c.remaining[static_cast<std::size_t>(b)]);
    }
  }
  c.mu_cond = mu_r + s_ri * ((s_star - pop.mu(index)) / s_ii);
  c.sigma_cond = s_rr - s_ri * s_ri.transpose() / s_ii;
  c.sigma_cond = 0.5 * (c.sigma_cond + c.sigma_cond.transpose());
  if (k == 0) return c;
  Eigen::LLT<Eigen::MatrixXd> llt(c.sigma_cond);
  if (llt.info() == Eigen::Success) {
    c.cholesky_factor = llt.matrixL();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c.sigma_cond);
    if (eig.info() != Eigen::Success) throw NumericError("conditional covariance factorization failed");
    c.cholesky_factor = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    c.triangular = false;
  }
  return c;
}

/// Count vector for one standard-normal draw z; negative entries floored at 0.
/// Returns whether any entry was floored.
inline bool realize(const ConditionalPopulation& c, const Eigen::Ref<const Eigen::VectorXd>& z,
                    Eigen::Ref<Eigen::VectorXd> out) {
  bool floored = false;
  out(c.conditioned_index) = std::max(0.0, c.fixed_value);
  if (c.remaining.empty()) return c.fixed_value < 0.0;
  const Eigen::VectorXd free = c.mu_cond + c.cholesky_factor * z;
  for (std::size_t a = 0; a < c.remaining.size(); ++a) {
    double v = free(static_cast<Eigen::Index>(a));
    if (v < 0.0) {
      v = 0.0;
      floored = true;
    }
    out(c.remaining[a]) = v;
  }
  return floored;
}

inline Eigen::MatrixXd standard_normals(std::size_t rows, Eigen::Index cols, rng::Engine& eng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::MatrixXd z(static_cast<Eigen::Index>(rows), cols);
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    for (Eigen::Index j = 0; j < cols; ++j) z(r, j) = n01(eng);
  }
  return z;
}

struct CountSamples {
  Eigen::MatrixXd counts;  // one full count vector per row
  std::size_t floored = 0;

  double floor_rate() const {
    return counts.rows() == 0 ? 0.0 : static_cast<double>(floored) / static_cast<double>(counts.rows());
  }
};

inline CountSamples sample_counts(const ConditionalPopulation& c, std::size_t n, rng::Engine& eng) {
  const auto k = static_cast<Eigen::Index>(c.remaining.size());
  const Eigen::MatrixXd z = standard_normals(n, k, eng);
  CountSamples s;
  s.counts.resize(static_cast<Eigen::Index>(n), c.full_size());
  Eigen::VectorXd row(c.full_size());
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    if (realize(c, z.row(r).transpose(), row)) ++s.floored;
    s.counts.row(r) = row.transpose();
  }
  return s;
}

inline CountSamples sample_counts(const ConditionalPopulation& c, std::size_t n, std::uint64_t seed) {
  auto eng = rng::make_engine(seed, "detect/samples");
  return sample_counts(c, n, eng);
}

/// Binding-event ratios k_on_i s_i / sum_j k_on_j s_j. Empty when no ligand
/// is present.
inline std::optional<Eigen::VectorXd> binding_ratios(const Eigen::VectorXd& counts, const Eigen::VectorXd& k_on) {
  Eigen::VectorXd w = counts.cwiseProduct(k_on);
  const double total = w.sum();
  if (!(total > 0.0)) return std::nullopt;
  return w / total;
}

/// Law of total expectation and variance over an empirical outer
/// distribution of (inner mean, inner variance) pairs.
class TotalMoments {
 public:
  void add(double inner_mean, double inner_variance) {
    ++n_;
    const double delta = inner_mean - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (inner_mean - mean_);
    inner_var_sum_ += inner_variance;
  }
  void reject() { ++rejected_; }

  std::size_t count() const { return n_; }
  std::size_t rejected() const { return rejected_; }
  double mean() const { return mean_; }
  double expected_inner_variance() const { return n_ ? inner_var_sum_ / static_cast<double>(n_) : 0.0; }
  double outer_variance() const { return n_ ? m2_ / static_cast<double>(n_) : 0.0; }
  double variance() const { return expected_inner_variance() + outer_variance(); }

 private:
  std::size_t n_ = 0;
  std::size_t rejected_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double inner_var_sum_ = 0.0;
};

struct RatioMoments {
  double mean = 0.0;
  double variance = 0.0;
  double inner_variance = 0.0;  // E[Var[kappa | s]]
  double outer_variance = 0.0;  // Var[E[kappa | s]]
  std::size_t samples_used = 0;
  std::size_t rejected = 0;
  double floor_rate = 0.0;
};

/// Minimizes the equal-prior error of two Gaussians. Uses the root of the
/// likelihood-equality quadratic whose density crossing separates the two
/// decision regions; it lies in (mean0, mean1) whenever such a root exists.
inline double optimal_threshold(double mean0, double var0, double mean1, double var1) {
  if (!(std::isfinite(mean0) && std::isfinite(mean1) && std::isfinite(var0) && std::isfinite(var1))) {
    throw DetectionSetupError("detection moments must be finite");
  }
  if (!(var0 > 0.0) || !(var1 > 0.0)) throw DetectionSetupError("detection variances must be positive");
  if (!(mean1 > mean0)) throw DetectionSetupError("bit-1 mean must exceed bit-0 mean");
  const double gamma = var1 - var0;
  if (std::abs(gamma) < 1e-12 * std::max(var0, var1)) return 0.5 * (mean0 + mean1);
  const double d = mean1 - mean0;
  const double log_ratio = std::log(var1 / var0);
  // s is the discriminant root; positive because gamma and log_ratio share a sign.
  const double s = std::sqrt(var0 * var1) * std::sqrt(d * d + gamma * log_ratio);
  const double x = mean0 * var1 - mean1 * var0;
  if (x >= 0.0) return (x + s) / gamma;
  // Same root, rewritten to avoid cancellation.
  return (mean0 * mean0 * var1 - mean1 * mean1 * var0 - var0 * var1 * log_ratio) / (x - s);
}

inline double bep(double mean0, double var0, double mean1, double var1, double lambda) {
  return 0.25 * (std::erfc((lambda - mean0) / std::sqrt(2.0 * var0)) +
                 std::erfc((mean1 - lambda) / std::sqrt(2.0 * var1)));
}

struct DetectionResult {
  double mean0 = 0.0;
  double var0 = 0.0;
  double mean1 = 0.0;
  double var1 = 0.0;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double bep = 0.5;
  double pb_bit0 = 0.0;
  double pb_bit1 = 0.0;
  std::size_t samples_used = 0;
  double floor_rate = 0.0;
  bool degenerate = false;  // estimator unavailable: classes not separable
};

enum class SimulationMode {
  multinomial,  // bin counts drawn directly from Multinomial(M, Q alpha)
  trace,        // explicit binding trace, then interval counting
};

struct MonteCarloResult {
  std::size_t bits_per_level = 0;
  std::size_t errors0 = 0;
  std::size_t errors1 = 0;
  double bep = 0.0;
  double mean0 = 0.0;
  double var0 = 0.0;
  double mean1 = 0.0;
  double var1 = 0.0;
  double skew0 = 0.0;
  double skew1 = 0.0;
  double excess_kurtosis0 = 0.0;
  double excess_kurtosis1 = 0.0;
  std::size_t rejected = 0;
};

namespace detail {

struct Shape {
  double mean = 0.0;
  double var = 0.0;
  double skew = 0.0;
  double excess_kurtosis = 0.0;
};

inline Shape shape_of(std::span<const double> xs) {
  Shape s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) s.mean += x;
  s.mean /= n;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double d = x - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  s.var = m2 * n / std::max(1.0, n - 1.0);
  if (m2 > 0.0) {
    s.skew = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return s;
}

inline void draw_multinomial(std::uint64_t m, const Eigen::VectorXd& p, rng::Engine& eng,
                             std::vector<std::uint64_t>& out) {
  out.assign(static_cast<std::size_t>(p.size()), 0);
  std::uint64_t left = m;
  double mass_left = 1.0;
  for (Eigen::Index i = 0; i + 1 < p.size() && left > 0; ++i) {
    const double q = mass_left > 0.0 ? std::clamp(p(i) / mass_left, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> b(left, q);
    const auto x = b(eng);
    out[static_cast<std::size_t>(i)] = x;
    left -= x;
    mass_left -= p(i);
  }
  out.back() += left;
}

}  // namespace detail

/// Fixed scenario (affinity, bit levels, saturation mode) with its estimator
/// and the two conditional populations.
class DetectionModel {
 public:
  DetectionModel(const Scenario& sc, bool saturation) : scenario_(sc), saturation_(saturation) {
    const auto d = static_cast<Eigen::Index>(sc.size());
    k_on_.resize(d);
    std::vector<double> k_offs(sc.size());
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < sc.size(); ++i) {
      k_on_(static_cast<Eigen::Index>(i)) = sc.species[i].k_on;
      k_offs[i] = sc.species[i].k_off;
      labels.push_back(sc.species[i].name);
    }
    if (sc.num_events < 1) throw ConfigError("number of binding events must be at least 1");
    try {
      estimator_.emplace(k_offs, sc.interval_v);
    } catch (const NumericError& e) {
      degenerate_reason_ = e.what();
    }
    for (int bit = 0; bit < 2; ++bit) {
      const auto c = sc.concentrations(sc.bit_concentration(bit, saturation));
      Eigen::VectorXd mu(d);
      for (Eigen::Index i = 0; i < d; ++i) mu(i) = c[static_cast<std::size_t>(i)] * sc.molecules_per_molar();
      const auto pop = make_population(labels, mu, sc.cov, sc.correlations);
      conditional_[bit] = condition(pop, static_cast<Eigen::Index>(sc.detected), mu(static_cast<Eigen::Index>(sc.detected)));
      std::vector<double> kds;
      for (const auto& s : sc.species) kds.push_back(s.k_d());
      pb_[bit] = kinetics::bound_probability(c, kds);
    }
  }

  const Scenario& scenario() const { return scenario_; }
  bool saturation() const { return saturation_; }
  bool degenerate() const { return !estimator_.has_value(); }
  const std::string& degenerate_reason() const { return degenerate_reason_; }
  const estimator::IntervalEstimator& estimator() const {
    if (!estimator_) throw DegenerateSchemeError(degenerate_reason_);
    return *estimator_;
  }
  const ConditionalPopulation& conditional(int bit) const { return conditional_[bit ? 1 : 0]; }
  double bound_probability(int bit) const { return pb_[bit ? 1 : 0]; }
  Eigen::Index free_dimensions() const { return static_cast<Eigen::Index>(conditional_[0].remaining.size()); }

  /// Moments of kappa = alpha_hat[detected] over the outer draws `z`
  /// (one row of standard normals per population sample).
  RatioMoments ratio_moments(int bit, const Eigen::MatrixXd& z) const {
    const auto& cond = conditional(bit);
    const auto k = static_cast<Eigen::Index>(scenario_.detected);
    const double m = static_cast<double>(scenario_.num_events);
    TotalMoments acc;
    std::size_t floored = 0;
    Eigen::VectorXd counts(cond.full_size());
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      if (realize(cond, z.row(r).transpose(), counts)) ++floored;
      const auto alpha = binding_ratios(counts, k_on_);
      if (!alpha) {
        acc.reject();
        continue;
      }
      double inner_var = std::numeric_limits<double>::infinity();
      if (estimator_) inner_var = estimator::component_variance(static_cast<std::size_t>(k), estimator_->q() * *alpha,
                                                                estimator_->w(), m);
      acc.add((*alpha)(k), inner_var);
    }
    RatioMoments out;
    out.mean = acc.mean();
    out.variance = acc.variance();
    out.inner_variance = acc.expected_inner_variance();
    out.outer_variance = acc.outer_variance();
    out.samples_used = acc.count();
    out.rejected = acc.rejected();
    out.floor_rate = z.rows() ? static_cast<double>(floored) / static_cast<double>(z.rows()) : 0.0;
    return out;
  }

  DetectionResult evaluate(const Eigen::MatrixXd& z) const {
    const auto r0 = ratio_moments(0, z);
    const auto r1 = ratio_moments(1, z);
    DetectionResult res;
    res.mean0 = r0.mean;
    res.var0 = r0.variance;
    res.mean1 = r1.mean;
    res.var1 = r1.variance;
    res.pb_bit0 = pb_[0];
    res.pb_bit1 = pb_[1];
    res.samples_used = r0.samples_used + r1.samples_used;
    res.floor_rate = 0.5 * (r0.floor_rate + r1.floor_rate);
    if (!estimator_) {
      res.degenerate = true;
      return res;
    }
    res.lambda = optimal_threshold(res.mean0, res.var0, res.mean1, res.var1);
    res.bep = bep(res.mean0, res.var0, res.mean1, res.var1, res.lambda);
    return res;
  }

  DetectionResult evaluate() const {
    auto eng = rng::make_engine(scenario_.seed, "detect/outer");
    return evaluate(standard_normals(scenario_.outer_samples, free_dimensions(), eng));
  }

  /// One estimate of kappa for a population drawn from normals `z`.
  std::optional<double> observe(int bit, const Eigen::Ref<const Eigen::VectorXd>& z, SimulationMode mode,
                                rng::Engine& eng) const {
    const auto& est = estimator();
    const auto& cond = conditional(bit);
    Eigen::VectorXd counts(cond.full_size());
    realize(cond, z, counts);
    const auto alpha = binding_ratios(counts, k_on_);
    if (!alpha) return std::nullopt;
    std::vector<std::uint64_t> n_b;
    if (mode == SimulationMode::multinomial) {
      detail::draw_multinomial(scenario_.num_events, est.q() * *alpha, eng, n_b);
    } else {
      std::vector<kinetics::Binder> binders;
      for (std::size_t i = 0; i < scenario_.size(); ++i) {
        const auto& s = scenario_.species[i];
        binders.push_back({s.name, s.k_on, s.k_off, counts(static_cast<Eigen::Index>(i)) / scenario_.molecules_per_molar()});
      }
      const auto gen = kinetics::build_generator(binders);
      kinetics::TraceSampler sampler(gen);
      n_b.assign(est.size(), 0);
      sampler.run(scenario_.num_events, eng, [&](std::size_t state, double dwell) {
        if (state != 0) ++n_b[est.bin_of(dwell)];
      });
    }
    const auto alpha_hat = est.ratios(n_b);
    return alpha_hat(static_cast<Eigen::Index>(scenario_.detected));
  }

  /// End-to-end bit decisions against threshold lambda: sample population,
  /// generate binding events, estimate kappa, decide.
  MonteCarloResult simulate(std::size_t bits_per_level, double lambda, SimulationMode mode, std::uint64_t seed,
                            std::size_t threads = 1) const {
    constexpr std::size_t kChunk = 256;
    const std::size_t chunks = (bits_per_level + kChunk - 1) / kChunk;
    std::vector<double> kappa[2];
    std::vector<std::uint8_t> ok[2];
    for (int bit = 0; bit < 2; ++bit) {
      kappa[bit].assign(bits_per_level, 0.0);
      ok[bit].assign(bits_per_level, 0);
    }
    for (int bit = 0; bit < 2; ++bit) {
      parallel_for(chunks, threads, [&](std::size_t chunk) {
        auto eng = rng::make_engine(seed, "detect/mc", static_cast<std::uint64_t>(bit), chunk);
        std::normal_distribution<double> n01(0.0, 1.0);
        Eigen::VectorXd z(free_dimensions());
        const std::size_t end = std::min(bits_per_level, (chunk + 1) * kChunk);
        for (std::size_t t = chunk * kChunk; t < end; ++t) {
          for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = n01(eng);
          if (const auto kap = observe(bit, z, mode, eng)) {
            kappa[bit][t] = *kap;
            ok[bit][t] = 1;
          }
        }
      });
    }
    MonteCarloResult res;
    res.bits_per_level = bits_per_level;
    detail::Shape shapes[2];
    for (int bit = 0; bit < 2; ++bit) {
      std::vector<double> kept;
      kept.reserve(bits_per_level);
      for (std::size_t t = 0; t < bits_per_level; ++t) {
        if (!ok[bit][t]) {
          ++res.rejected;
          continue;
        }
        kept.push_back(kappa[bit][t]);
        const bool decided_one = kappa[bit][t] > lambda;
        if (bit == 0 && decided_one) ++res.errors0;
        if (bit == 1 && !decided_one) ++res.errors1;
      }
      shapes[bit] = detail::shape_of(kept);
    }
    const double n = static_cast<double>(bits_per_level);
    res.bep = 0.5 * (static_cast<double>(res.errors0) / n + static_cast<double>(res.errors1) / n);
    res.mean0 = shapes[0].mean;
    res.var0 = shapes[0].var;
    res.skew0 = shapes[0].skew;
    res.excess_kurtosis0 = shapes[0].excess_kurtosis;
    res.mean1 = shapes[1].mean;
    res.var1 = shapes[1].var;
    res.skew1 = shapes[1].skew;
    res.excess_kurtosis1 = shapes[1].excess_kurtosis;
    return res;
  }

 private:
  Scenario scenario_;
  bool saturation_ = false;
  Eigen::VectorXd k_on_;
  std::optional<estimator::IntervalEstimator> estimator_;
  std::string degenerate_reason_;
  ConditionalPopulation conditional_[2];
  double pb_[2] = {0.0, 0.0};
};

/// Standard error of an empirical BEP under the analytic error rates.
inline double bep_standard_error(const DetectionResult& r, std::size_t bits_per_level) {
  const double p_fa = 0.5 * std::erfc((r.lambda - r.mean0) / std::sqrt(2.0 * r.var0));
  const double p_miss = 0.5 * std::erfc((r.mean1 - r.lambda) / std::sqrt(2.0 * r.var1));
  const double n = static_cast<double>(bits_per_level);
  return 0.5 * std::sqrt(p_fa * (1.0 - p_fa) / n + p_miss * (1.0 - p_miss) / n);
}

enum class Experiment { affinity, bit_ratio, interferer_mean };

inline Experiment parse_experiment(std::string_view s) {
  if (s == "affinity") return Experiment::affinity;
  if (s == "bit_ratio") return Experiment::bit_ratio;
  if (s == "interferer_mean") return Experiment::interferer_mean;
  throw ConfigError("unknown detection experiment '" + std::string(s) + "'");
}

inline void check_grid(Experiment e, std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("detection grid is empty");
  for (double x : grid) {
    const bool ok = e == Experiment::affinity    ? (x > 0.0 && x <= 1.0)
                    : e == Experiment::bit_ratio ? (x >= 0.1 - 1e-12 && x <= 0.99 + 1e-12)
                                                 : (x > 0.0 && std::isfinite(x));
    if (!ok) throw ConfigError("detection grid value " + std::to_string(x) + " outside the allowed range");
  }
}

/// Scenario for one grid point. For the interferer sweep, `x` is the absolute
/// mean interferer concentration in M.
inline Scenario sweep_point(Experiment e, const Scenario& base, double x, bool saturation) {
  switch (e) {
    case Experiment::affinity: return base.with_affinity(x);
    case Experiment::bit_ratio: return base.with_bit_ratio(x, saturation);
    case Experiment::interferer_mean: return base.with_interferer_mean(x);
  }
  return base;
}

struct SweepRow {
  double x = 0.0;
  DetectionResult result;
};

/// All grid points share one set of outer normals so trends are not masked
/// by sampling noise.
inline std::vector<SweepRow> sweep(Experiment e, std::span<const double> grid, const Scenario& base, bool saturation,
                                   std::size_t threads = 1) {
  check_grid(e, grid);
  const Scenario probe = sweep_point(e, base, grid.front(), saturation);
  auto eng = rng::make_engine(base.seed, "detect/outer");
  const Eigen::MatrixXd z =
      standard_normals(base.outer_samples, static_cast<Eigen::Index>(probe.size()) - 1, eng);
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const DetectionModel model(sweep_point(e, base, grid[i], saturation), saturation);
    rows[i] = {grid[i], model.evaluate(z)};
  });
  return rows;
}

}  // namespace nanomc::detection
