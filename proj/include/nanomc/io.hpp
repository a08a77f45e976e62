#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "nanomc/csv.hpp"
#include "nanomc/error.hpp"
#include "nanomc/grid.hpp"
#include "nanomc/kinetics.hpp"

namespace nanomc::io {

/// Writes to a sibling temporary file, then renames over the target.
inline void write_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw ConfigError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("cannot move output into place at '" + path.string() + "': " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw NumericError("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

inline std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

inline std::string trace_csv(const kinetics::BindingTrace& trace) {
  csv::Writer w("state,dwell_s");
  for (const auto& iv : trace.intervals) {
    const auto d = csv::format(iv.dwell_s);
    w.raw({trace.labels.at(iv.state), d});
  }
  return w.str();
}

/// Bound dwells of a state,dwell_s trace file. Unbound rows ("U") are
/// skipped after their dwell is validated.
inline std::vector<double> read_bound_dwells(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> dwells;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "state,dwell_s") throw ConfigError(path.string() + ":1: expected header 'state,dwell_s'");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": missing ','");
    const auto state = std::string_view(line).substr(0, comma);
    const double d = grid::parse_number(std::string_view(line).substr(comma + 1), "dwell");
    if (!(d > 0.0)) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": dwell times must be positive");
    }
    if (state != "U") dwells.push_back(d);
  }
  if (dwells.empty()) throw ConfigError(path.string() + ": trace has no bound intervals");
  return dwells;
}

}  // namespace nanomc::io
