#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "nanomc/error.hpp"
#include "nanomc/params.hpp"

/// Molecular storage capacity of the rod-shaped device: molecules packed in
/// concentric rings across the cross-section, repeated along the length.
namespace nanomc::capacity {

/// Rings beyond this index are summed with the large-i expansion of
/// pi / asin(1/(2i)).
inline constexpr std::uint64_t kAsymptoticSwitchover = 100000;

inline double average_particle_radius(std::span<const double> fractions, std::span<const double> radii) {
  if (fractions.size() != radii.size() || fractions.empty()) {
    throw DomainError("fractions and radii must be non-empty and the same length");
  }
  double sum = 0.0;
  double r = 0.0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (fractions[i] < 0.0) throw DomainError("fractions must be non-negative");
    if (!(radii[i] > 0.0)) throw DomainError("radii must be positive");
    sum += fractions[i];
    r += fractions[i] * radii[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError("fractions must sum to 1");
  return r;
}

struct RingCount {
  std::uint64_t rings = 0;  // floor((R - r) / (2r))
  double exact = 0.0;       // (R - r) / (2r)
};

inline RingCount ring_count(double device_radius, double particle_radius) {
  if (!(particle_radius > 0.0)) throw DomainError("particle radius must be positive");
  if (device_radius < particle_radius) throw DomainError("device radius must be at least the particle radius");
  RingCount rc;
  rc.exact = (device_radius - particle_radius) / (2.0 * particle_radius);
  rc.rings = static_cast<std::uint64_t>(std::floor(rc.exact));
  return rc;
}

namespace detail {

inline double harmonic_asymptotic(double n) {
  const double n2 = n * n;
  return std::log(n) + std::numbers::egamma + 1.0 / (2.0 * n) - 1.0 / (12.0 * n2) + 1.0 / (120.0 * n2 * n2);
}

// sum_{i=from+1}^{to} pi / asin(1/(2i)) using
// pi/asin(x) = (pi/x)(1 - x^2/6 - 17 x^4/360 + O(x^6)), x = 1/(2i).
inline double ring_tail(std::uint64_t from, std::uint64_t to) {
  const double a = static_cast<double>(from);
  const double b = static_cast<double>(to);
  const double linear = std::numbers::pi * (b * (b + 1.0) - a * (a + 1.0));
  const double harmonic = harmonic_asymptotic(b) - harmonic_asymptotic(a);
  const double cubic = (1.0 / (2.0 * a * a) - 1.0 / (2.0 * b * b)) + (1.0 / (b * b * b) - 1.0 / (a * a * a)) / 2.0;
  return linear - std::numbers::pi / 12.0 * harmonic - 17.0 * std::numbers::pi / 2880.0 * cubic;
}

}  // namespace detail

/// Molecules per cross-sectional layer: 1 + sum_{i=1}^{m} pi / asin(1/(2i)).
inline double ring_series(std::uint64_t rings, std::uint64_t switchover = kAsymptoticSwitchover) {
  const std::uint64_t direct = rings < switchover ? rings : switchover;
  double sum = 1.0;
  for (std::uint64_t i = 1; i <= direct; ++i) {
    sum += std::numbers::pi / std::asin(1.0 / (2.0 * static_cast<double>(i)));
  }
  if (rings > direct) sum += detail::ring_tail(direct, rings);
  return sum;
}

inline double total_capacity(double device_radius, double device_length, double particle_radius) {
  if (!(device_length > 0.0)) throw DomainError("device length must be positive");
  const auto rc = ring_count(device_radius, particle_radius);
  return device_length / (2.0 * particle_radius) * ring_series(rc.rings);
}

struct CapacityRow {
  std::string mix;
  double average_radius_m = 0.0;
  std::uint64_t rings = 0;
  double capacity = 0.0;
};

struct MixEntry {
  std::string name;
  double fraction = 0.0;
};

inline CapacityRow evaluate_mix(std::span<const MixEntry> mix, double device_radius, double device_length) {
  std::vector<double> fractions;
  std::vector<double> radii;
  std::string label;
  for (const auto& e : mix) {
    auto props = find_metal(e.name);
    if (!props) throw ConfigError("unknown metal '" + e.name + "' in mix");
    fractions.push_back(e.fraction);
    radii.push_back(props->atomic_radius_pm * units::metres_per_pm);
    if (!label.empty()) label += '|';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s:%.6g", e.name.c_str(), e.fraction);
    label += buf;
  }
  CapacityRow row;
  row.mix = label;
  row.average_radius_m = average_particle_radius(fractions, radii);
  row.rings = ring_count(device_radius, row.average_radius_m).rings;
  row.capacity = total_capacity(device_radius, device_length, row.average_radius_m);
  return row;
}

struct MixSweepRow {
  std::string varied;
  double fraction = 0.0;
  CapacityRow result;
};

/// For each metal, raise its fraction over the grid while the remaining
/// metals share the rest equally.
inline std::vector<MixSweepRow> mix_sweep(std::span<const std::string> metals, std::span<const double> grid,
                                          double device_radius, double device_length) {
  if (metals.size() < 2) throw ConfigError("mix sweep needs at least two metals");
  std::vector<MixSweepRow> rows;
  for (const auto& varied : metals) {
    for (double x : grid) {
      if (x < 0.0 || x > 1.0) throw ConfigError("mix fractions must lie in [0, 1]");
      std::vector<MixEntry> mix;
      const double rest = (1.0 - x) / static_cast<double>(metals.size() - 1);
      for (const auto& m : metals) mix.push_back({m, m == varied ? x : rest});
      rows.push_back({varied, x, evaluate_mix(mix, device_radius, device_length)});
    }
  }
  return rows;
}

}  // namespace nanomc::capacity
