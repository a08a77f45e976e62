#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace nanomc::csv {

/// Shortest round-trip decimal form; locale independent.
inline std::string format(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string format(std::uint64_t v) { return std::to_string(v); }

class Writer {
 public:
  explicit Writer(std::string_view header) : text_(header) { text_ += '\n'; }

  Writer& row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) text_ += ',';
      text_ += format(v);
      first = false;
    }
    text_ += '\n';
    return *this;
  }

  /// Pre-formatted fields.
  Writer& raw(std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (auto f : fields) {
      if (!first) text_ += ',';
      text_ += f;
      first = false;
    }
    text_ += '\n';
    return *this;
  }

  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

}  // namespace nanomc::csv
