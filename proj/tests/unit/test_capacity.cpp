#include "catch_amalgamated.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "nanomc/capacity.hpp"
#include "nanomc/error.hpp"

using Catch::Approx;
using namespace nanomc;
using namespace nanomc::capacity;

namespace {

long double brute_series(std::uint64_t m) {
  long double s = 1.0L;
  for (std::uint64_t i = 1; i <= m; ++i) {
    s += std::numbers::pi_v<long double> / std::asin(1.0L / (2.0L * static_cast<long double>(i)));
  }
  return s;
}

}  // namespace

TEST_CASE("average radius is the fraction-weighted mean", "[capacity]") {
  const std::vector<double> zn{1.0};
  const std::vector<double> rz{142e-12};
  CHECK(average_particle_radius(zn, rz) == Approx(142e-12).epsilon(1e-14));
  const std::vector<double> half{0.5, 0.5};
  const std::vector<double> rzc{142e-12, 161e-12};
  CHECK(average_particle_radius(half, rzc) == Approx(151.5e-12).epsilon(1e-14));
  const std::vector<double> mix{0.2, 0.3, 0.5};
  const std::vector<double> same{1.7e-10, 1.7e-10, 1.7e-10};
  CHECK(average_particle_radius(mix, same) == Approx(1.7e-10).epsilon(1e-14));
}

TEST_CASE("average radius rejects unnormalized or negative fractions", "[capacity]") {
  const std::vector<double> r{1e-10, 2e-10};
  CHECK_THROWS_AS(average_particle_radius(std::vector<double>{0.5, 0.6}, r), DomainError);
  CHECK_THROWS_AS(average_particle_radius(std::vector<double>{1.5, -0.5}, r), DomainError);
  CHECK_THROWS_AS(average_particle_radius(std::vector<double>{1.0}, r), DomainError);
}

TEST_CASE("ring count floors the rings that fit along the radius", "[capacity]") {
  const double r = 1.3e-10;
  CHECK(ring_count(r, r).rings == 0);
  CHECK(ring_count(5.0 * r, r).rings == 2);
  CHECK(ring_count(5.0 * r, r).exact == Approx(2.0).epsilon(1e-14));
  // Integer picometre oracle: (3e9 pm - 142 pm) / 284 pm.
  const std::uint64_t oracle = (3'000'000'000ULL - 142ULL) / 284ULL;
  CHECK(oracle == 10'563'379ULL);
  CHECK(ring_count(3e-3, 142e-12).rings == oracle);
  CHECK_THROWS_AS(ring_count(1e-3, 0.0), DomainError);
  CHECK_THROWS_AS(ring_count(1e-10, 2e-10), DomainError);
}

TEST_CASE("six circles surround one", "[capacity]") {
  CHECK(std::numbers::pi / std::asin(0.5) == Approx(6.0).epsilon(1e-15));
  CHECK(ring_series(1) == Approx(7.0).epsilon(1e-15));
}

TEST_CASE("capacity small-device anchors", "[capacity]") {
  const double r = 1e-10;
  CHECK(total_capacity(r, 2.0 * r, r) == Approx(1.0).epsilon(1e-14));
  const double expected = 5.0 * (1.0 + 6.0 + std::numbers::pi / std::asin(0.25));
  CHECK(total_capacity(5.0 * r, 10.0 * r, r) == Approx(expected).epsilon(1e-13));
  CHECK(total_capacity(5.0 * r, 10.0 * r, r) == Approx(97.16).margin(0.01));
}

TEST_CASE("asymptotic tail matches brute-force summation", "[capacity]") {
  for (const std::uint64_t m : {10'000ULL, 100'000ULL}) {
    const long double direct = brute_series(m);
    for (const std::uint64_t switchover : {10ULL, 100ULL, 1000ULL}) {
      const double fast = ring_series(m, switchover);
      CHECK(std::abs(static_cast<long double>(fast) - direct) / direct < 1e-6L);
    }
  }
}

TEST_CASE("capacity strictly decreasing in particle radius", "[capacity]") {
  double prev = INFINITY;
  for (int i = 0; i < 100; ++i) {
    const double r = 100e-12 + i * 1e-12;
    const double c = total_capacity(3e-3, 12e-3, r);
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("mix evaluation uses table radii", "[capacity]") {
  const std::vector<MixEntry> mix{{"zn", 0.4}, {"cd", 0.3}, {"hg", 0.3}};
  const auto row = evaluate_mix(mix, 3e-3, 12e-3);
  CHECK(row.average_radius_m == Approx((0.4 * 142 + 0.3 * 161 + 0.3 * 171) * 1e-12).epsilon(1e-12));
  CHECK(row.rings == ring_count(3e-3, row.average_radius_m).rings);
  CHECK(row.capacity == Approx(total_capacity(3e-3, 12e-3, row.average_radius_m)).epsilon(1e-15));
  const std::vector<MixEntry> bad{{"zz", 1.0}};
  CHECK_THROWS_AS(evaluate_mix(bad, 3e-3, 12e-3), ConfigError);
}

TEST_CASE("raising the larger-metal fraction lowers capacity", "[capacity]") {
  const std::vector<std::string> metals{"zn", "cd", "hg"};
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  const auto rows = mix_sweep(metals, grid, 3e-3, 12e-3);
  REQUIRE(rows.size() == 33);
  for (std::size_t i = 1; i < 11; ++i) CHECK(rows[i].result.capacity > rows[i - 1].result.capacity);   // zn
  for (std::size_t i = 12; i < 22; ++i) CHECK(rows[i].result.capacity < rows[i - 1].result.capacity);  // cd
  for (std::size_t i = 23; i < 33; ++i) CHECK(rows[i].result.capacity < rows[i - 1].result.capacity);  // hg
}
