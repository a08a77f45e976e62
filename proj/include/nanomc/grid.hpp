#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "nanomc/error.hpp"

namespace nanomc::grid {

inline double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("cannot parse " + std::string(what) + " '" + std::string(text) + "' as a number");
  }
  return v;
}

/// Rounds to 12 significant digits so accumulated steps print cleanly.
inline double tidy(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) throw ConfigError("grid needs at least one point");
  if (count == 1) return {start};
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = tidy(start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return g;
}

/// start, start + step, ... up to stop; stop is appended when the last step
/// falls short of it.
inline std::vector<double> arange(double start, double stop, double step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  if (stop < start) throw ConfigError("grid stop must not be below start");
  const double eps = 1e-9 * step;
  std::vector<double> g;
  for (std::size_t k = 0;; ++k) {
    const double x = start + step * static_cast<double>(k);
    if (x > stop + eps) break;
    g.push_back(tidy(x));
  }
  if (g.back() < stop - eps) g.push_back(stop);
  return g;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(begin, i - begin));
      begin = i + 1;
    }
  }
  return parts;
}

inline std::vector<double> parse_triplet(std::string_view spec, bool count_form) {
  const auto parts = split(spec, ':');
  if (parts.size() == 1) return {parse_number(parts[0], "grid value")};
  if (parts.size() != 3) throw ConfigError("grid '" + std::string(spec) + "' must have the form start:stop:n");
  const double a = parse_number(parts[0], "grid start");
  const double b = parse_number(parts[1], "grid stop");
  const double c = parse_number(parts[2], count_form ? "grid count" : "grid step");
  if (count_form) {
    if (!(c >= 1.0) || c != std::floor(c)) throw ConfigError("grid count must be a positive integer");
    return linspace(a, b, static_cast<std::size_t>(c));
  }
  return arange(a, b, c);
}

}  // namespace detail

/// "start:stop:count" (inclusive, evenly spaced) or a comma list.
inline std::vector<double> parse_count_grid(std::string_view spec) {
  if (spec.find(',') != std::string_view::npos) {
    std::vector<double> g;
    for (auto p : detail::split(spec, ',')) g.push_back(parse_number(p, "grid value"));
    return g;
  }
  return detail::parse_triplet(spec, true);
}

/// "start:stop:step" or a comma list.
inline std::vector<double> parse_step_grid(std::string_view spec) {
  if (spec.find(',') != std::string_view::npos) {
    std::vector<double> g;
    for (auto p : detail::split(spec, ',')) g.push_back(parse_number(p, "grid value"));
    return g;
  }
  return detail::parse_triplet(spec, false);
}

}  // namespace nanomc::grid
