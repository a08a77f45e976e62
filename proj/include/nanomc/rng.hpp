#pragma once

#include <cstdint>
#include <random>
#include <string_view>

/// Seeded random streams. A master seed fans out to named substreams keyed
/// by task identity, never by scheduling order.
namespace nanomc::rng {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t substream_seed(std::uint64_t master, std::string_view label, std::uint64_t task = 0,
                                       std::uint64_t index = 0) {
  std::uint64_t h = splitmix64(master ^ fnv1a(label));
  h = splitmix64(h ^ task);
  return splitmix64(h ^ (index * 0xd1342543de82ef95ULL));
}

inline Engine make_engine(std::uint64_t master, std::string_view label, std::uint64_t task = 0,
                          std::uint64_t index = 0) {
  return Engine(substream_seed(master, label, task, index));
}

/// Exp(1) draw that is strictly positive.
inline double standard_exponential(Engine& eng) {
  std::exponential_distribution<double> exp1(1.0);
  double x = exp1(eng);
  while (!(x > 0.0)) x = exp1(eng);
  return x;
}

}  // namespace nanomc::rng
