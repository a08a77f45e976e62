#pragma once

#include <numbers>
#include <string_view>

#include "nanomc/error.hpp"

/// Conversions between SI and the millimetre-gram-second system used by the
/// published parameter tables. SI is used everywhere internally; mm-g-s only
/// appears when reading configuration and writing reports.
namespace nanomc::units {

inline constexpr double metres_per_mm = 1e-3;
inline constexpr double metres_per_pm = 1e-12;
inline constexpr double kg_per_gram = 1e-3;

enum class Kind {
  length,      // mm <-> m
  mass,        // g <-> kg
  viscosity,   // g/(mm s) <-> Pa s
  density,     // g/mm^3 <-> kg/m^3
  pressure,    // g/(mm s^2) <-> Pa
  energy,      // g mm^2/s^2 <-> J
  flow_rate,   // mm^3/s <-> m^3/s
  boltzmann,   // mm^2 g/(K s^2) <-> J/K
};

/// Multiplicative factor taking a mm-g-s value to SI.
constexpr double si_factor(Kind kind) {
  constexpr double mm = metres_per_mm;
  constexpr double g = kg_per_gram;
  switch (kind) {
    case Kind::length: return mm;
    case Kind::mass: return g;
    case Kind::viscosity: return g / mm;
    case Kind::density: return g / (mm * mm * mm);
    case Kind::pressure: return g / mm;
    case Kind::energy: return g * mm * mm;
    case Kind::flow_rate: return mm * mm * mm;
    case Kind::boltzmann: return g * mm * mm;
  }
  return 1.0;
}

constexpr double to_si(double value, Kind kind) { return value * si_factor(kind); }
constexpr double from_si(double value, Kind kind) { return value / si_factor(kind); }

constexpr std::string_view mmgs_unit(Kind kind) {
  switch (kind) {
    case Kind::length: return "mm";
    case Kind::mass: return "g";
    case Kind::viscosity: return "g/(mm s)";
    case Kind::density: return "g/mm^3";
    case Kind::pressure: return "g/(mm s^2)";
    case Kind::energy: return "g mm^2/s^2";
    case Kind::flow_rate: return "mm^3/s";
    case Kind::boltzmann: return "mm^2 g/(K s^2)";
  }
  return "";
}

constexpr std::string_view si_unit(Kind kind) {
  switch (kind) {
    case Kind::length: return "m";
    case Kind::mass: return "kg";
    case Kind::viscosity: return "Pa s";
    case Kind::density: return "kg/m^3";
    case Kind::pressure: return "Pa";
    case Kind::energy: return "J";
    case Kind::flow_rate: return "m^3/s";
    case Kind::boltzmann: return "J/K";
  }
  return "";
}

constexpr double rpm_to_rad_per_s(double rpm) { return rpm * 2.0 * std::numbers::pi / 60.0; }
constexpr double rad_per_s_to_rpm(double omega) { return omega * 60.0 / (2.0 * std::numbers::pi); }

}  // namespace nanomc::units
