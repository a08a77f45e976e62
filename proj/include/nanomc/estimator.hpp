#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nanomc/error.hpp"

/// Method-of-moments estimation of ligand ratios from bound-dwell counts in
/// threshold-delimited intervals.
namespace nanomc::estimator {

/// Schemes whose bin-probability matrix exceeds this 2-norm condition number
/// are rejected.
inline constexpr double kMaxCondition = 1e8;

inline constexpr double kDefaultV = 3.0;

struct IntervalScheme {
  double v = kDefaultV;
  // Finite thresholds T_1 < ... < T_N; T_0 = 0 and T_{N+1} = inf are implicit.
  std::vector<double> thresholds;

  std::size_t bins() const { return thresholds.size() + 1; }
  double lower(std::size_t bin) const { return bin == 0 ? 0.0 : thresholds[bin - 1]; }
  double upper(std::size_t bin) const {
    return bin < thresholds.size() ? thresholds[bin] : std::numeric_limits<double>::infinity();
  }
};

/// T_l = v / (l-th largest k_off) for l = 1..n-1, giving one bin per ligand
/// class. Input order is irrelevant.
inline IntervalScheme interval_thresholds(std::span<const double> k_offs, double v = kDefaultV) {
  if (!(v > 0.0)) throw DomainError("interval constant v must be positive");
  if (k_offs.empty()) throw DomainError("at least one unbinding rate is required");
  std::vector<double> sorted(k_offs.begin(), k_offs.end());
  for (double k : sorted) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("unbinding rates must be positive and finite");
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1] - sorted[i] <= 1e-12 * sorted[i - 1]) {
      throw DegenerateSchemeError("two ligand classes share the unbinding rate " + std::to_string(sorted[i]));
    }
  }
  IntervalScheme s;
  s.v = v;
  for (std::size_t l = 0; l + 1 < sorted.size(); ++l) s.thresholds.push_back(v / sorted[l]);
  return s;
}

/// Q(l, j) = P(dwell of class j falls in bin l). Columns follow the order of
/// `k_offs`; each column sums to one.
inline Eigen::MatrixXd build_q(std::span<const double> k_offs, const IntervalScheme& scheme) {
  if (k_offs.size() != scheme.bins()) throw DomainError("one unbinding rate per bin required");
  const auto n = static_cast<Eigen::Index>(k_offs.size());
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double k = k_offs[static_cast<std::size_t>(j)];
    double survive_lower = 1.0;
    for (Eigen::Index l = 0; l < n; ++l) {
      const double hi = scheme.upper(static_cast<std::size_t>(l));
      const double survive_upper = std::isinf(hi) ? 0.0 : std::exp(-k * hi);
      q(l, j) = survive_lower - survive_upper;
      survive_lower = survive_upper;
    }
  }
  return q;
}

/// Bin index of one bound dwell; a dwell equal to T_l goes to the bin above.
inline std::size_t bin_of(const IntervalScheme& scheme, double dwell) {
  return static_cast<std::size_t>(std::upper_bound(scheme.thresholds.begin(), scheme.thresholds.end(), dwell) -
                                  scheme.thresholds.begin());
}

inline std::vector<std::uint64_t> count_events(std::span<const double> bound_dwells, const IntervalScheme& scheme) {
  std::vector<std::uint64_t> n(scheme.bins(), 0);
  for (double d : bound_dwells) ++n[bin_of(scheme, d)];
  return n;
}

inline double condition_number(const Eigen::MatrixXd& q) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  return smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
}

inline Eigen::VectorXd estimate_ratios(std::span<const std::uint64_t> n_b, const Eigen::MatrixXd& w, std::uint64_t m) {
  if (m < 1) throw DomainError("at least one binding event is required");
  if (static_cast<Eigen::Index>(n_b.size()) != w.cols()) throw DomainError("count vector does not match W");
  Eigen::VectorXd counts(w.cols());
  for (Eigen::Index i = 0; i < counts.size(); ++i) counts(i) = static_cast<double>(n_b[static_cast<std::size_t>(i)]);
  return w * counts / static_cast<double>(m);
}

/// Cov[alpha_hat] = W (diag(p) - p p^T) W^T / M with p = Q alpha.
inline Eigen::MatrixXd estimator_covariance(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& q,
                                            const Eigen::MatrixXd& w, double m) {
  if (!(m > 0.0)) throw DomainError("event count must be positive");
  const Eigen::VectorXd p = q * alpha;
  const Eigen::MatrixXd cov_counts = Eigen::MatrixXd(p.asDiagonal()) - p * p.transpose();
  return w * cov_counts * w.transpose() / m;
}

inline Eigen::VectorXd estimator_variance(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& q,
                                          const Eigen::MatrixXd& w, double m) {
  return estimator_covariance(alpha, q, w, m).diagonal();
}

/// Var[alpha_hat_l] alone, without forming the full covariance.
inline double component_variance(std::size_t l, const Eigen::VectorXd& p, const Eigen::MatrixXd& w, double m) {
  const auto row = w.row(static_cast<Eigen::Index>(l));
  const double first = row.dot(p);
  const double second = row.cwiseAbs2().dot(p);
  return (second - first * first) / m;
}

struct EstimatorModel {
  IntervalScheme scheme;
  std::vector<double> k_offs;  // column order of Q, row order of alpha_hat
  Eigen::MatrixXd q;
  Eigen::MatrixXd w;
  double condition = 0.0;
  std::vector<std::uint64_t> n_b;
  std::uint64_t m = 0;
  Eigen::VectorXd alpha_hat;   // unclipped; may leave [0, 1]
  Eigen::VectorXd var_alpha;   // plug-in with p = n_b / M

  /// Reporting view: clamped to [0, 1] and renormalized. Not for moments.
  Eigen::VectorXd clipped() const {
    Eigen::VectorXd c = alpha_hat.cwiseMax(0.0).cwiseMin(1.0);
    const double s = c.sum();
    if (s > 0.0) c /= s;
    return c;
  }
  bool was_clipped() const { return (alpha_hat.array() < 0.0).any() || (alpha_hat.array() > 1.0).any(); }
};

/// Precomputed Q, W and scheme for a fixed set of unbinding rates.
class IntervalEstimator {
 public:
  IntervalEstimator(std::span<const double> k_offs, double v = kDefaultV)
      : scheme_(interval_thresholds(k_offs, v)), k_offs_(k_offs.begin(), k_offs.end()) {
    q_ = build_q(k_offs_, scheme_);
    condition_ = condition_number(q_);
    if (!(condition_ <= kMaxCondition)) {
      throw IllConditionedSchemeError("bin-probability matrix condition number " + std::to_string(condition_) +
                                      " exceeds the limit");
    }
    w_ = q_.fullPivLu().inverse();
  }

  const IntervalScheme& scheme() const { return scheme_; }
  const std::vector<double>& k_offs() const { return k_offs_; }
  const Eigen::MatrixXd& q() const { return q_; }
  const Eigen::MatrixXd& w() const { return w_; }
  double condition() const { return condition_; }
  std::size_t size() const { return k_offs_.size(); }

  std::size_t bin_of(double dwell) const { return estimator::bin_of(scheme_, dwell); }

  Eigen::VectorXd bin_probabilities(const Eigen::VectorXd& alpha) const { return q_ * alpha; }

  Eigen::VectorXd ratios(std::span<const std::uint64_t> n_b) const {
    const auto m = std::accumulate(n_b.begin(), n_b.end(), std::uint64_t{0});
    return estimate_ratios(n_b, w_, m);
  }

  EstimatorModel estimate(std::span<const double> bound_dwells) const {
    return from_counts(count_events(bound_dwells, scheme_));
  }

  EstimatorModel from_counts(std::vector<std::uint64_t> n_b) const {
    EstimatorModel e;
    e.scheme = scheme_;
    e.k_offs = k_offs_;
    e.q = q_;
    e.w = w_;
    e.condition = condition_;
    e.m = std::accumulate(n_b.begin(), n_b.end(), std::uint64_t{0});
    e.n_b = std::move(n_b);
    e.alpha_hat = estimate_ratios(e.n_b, w_, e.m);
    Eigen::VectorXd p(static_cast<Eigen::Index>(e.n_b.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      p(i) = static_cast<double>(e.n_b[static_cast<std::size_t>(i)]) / static_cast<double>(e.m);
    }
    const Eigen::MatrixXd cov_counts = Eigen::MatrixXd(p.asDiagonal()) - p * p.transpose();
    e.var_alpha = (w_ * cov_counts * w_.transpose()).diagonal() / static_cast<double>(e.m);
    return e;
  }

  Eigen::VectorXd variance(const Eigen::VectorXd& alpha, double m) const {
    return estimator_variance(alpha, q_, w_, m);
  }

 private:
  IntervalScheme scheme_;
  std::vector<double> k_offs_;
  Eigen::MatrixXd q_;
  Eigen::MatrixXd w_;
  double condition_ = 0.0;
};

}  // namespace nanomc::estimator
