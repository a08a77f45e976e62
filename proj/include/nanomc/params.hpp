#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nanomc/error.hpp"
#include "nanomc/units.hpp"

namespace nanomc {

struct PhysicalConstants {
  double boltzmann_si = 1.3807e-23;  // J/K
  double avogadro = 6.02214076e23;   // 1/mol
  double temperature_default = 300.0;

  double boltzmann_mmgs() const { return units::from_si(boltzmann_si, units::Kind::boltzmann); }
};

/// One ligand class competing for the receptor. SI units throughout:
/// radius in m, molar mass in kg/mol, k_on in 1/(M s), k_off in 1/s.
struct LigandSpecies {
  std::string name;
  double atomic_radius_m = 0.0;
  double molar_mass_kg_per_mol = 0.0;
  double k_on = 0.0;
  double k_off = 0.0;
  bool is_interferer = false;

  double k_d() const { return k_off / k_on; }
  double diameter_m() const { return 2.0 * atomic_radius_m; }
  double molecule_mass_kg(double avogadro) const { return molar_mass_kg_per_mol / avogadro; }
};

struct MetalProperties {
  std::string_view name;
  double atomic_radius_pm;
  double molar_mass_g_per_mol;
};

/// Atomic radius and molar mass of the heavy metals the device targets.
inline constexpr std::array<MetalProperties, 5> kHeavyMetals{{
    {"zn", 142.0, 65.39},
    {"cu", 145.0, 63.55},
    {"cd", 161.0, 112.41},
    {"hg", 171.0, 200.59},
    {"pb", 154.0, 207.20},
}};

inline std::optional<MetalProperties> find_metal(std::string_view name) {
  for (const auto& m : kHeavyMetals) {
    if (m.name == name) return m;
  }
  return std::nullopt;
}

/// Interferer unbinding rate: the fastest metal unbinding rate divided by the
/// affinity ratio.
inline double derive_interferer_koff(std::span<const LigandSpecies> species, double affinity_ratio) {
  if (!(affinity_ratio > 0.0)) throw DomainError("affinity ratio must be positive");
  double max_koff = 0.0;
  bool any_metal = false;
  for (const auto& s : species) {
    if (s.is_interferer) continue;
    any_metal = true;
    max_koff = std::max(max_koff, s.k_off);
  }
  if (!any_metal) throw ConfigError("interferer k_off needs at least one metal species");
  return max_koff / affinity_ratio;
}

/// Mean molecule number for a molar concentration in a volume given in litres.
/// Real-valued; rounding is left to samplers.
inline double counts_from_concentration(double concentration_m, double volume_l,
                                        double avogadro = PhysicalConstants{}.avogadro) {
  if (concentration_m < 0.0) throw DomainError("concentration must be non-negative");
  if (!(volume_l > 0.0)) throw DomainError("volume must be positive");
  return concentration_m * volume_l * avogadro;
}

struct DeviceGeometry {
  double radius_m = 3e-3;
  double length_m = 12e-3;
};

struct FluidParams {
  double water_viscosity_pa_s = 8.509e-4;
  double water_density_kg_m3 = 996.64;
  double water_volume_fraction = 0.9;
};

struct PumpParams {
  double inner_radius_m = 1.19e-3;
  double outer_radius_m = 2.38e-3;
  double rpm = 500.0;
  double delta_theta_rad = std::numbers::pi / 2.0;
  double aspect_ratio = 0.1;  // channel height / channel width

  double channel_height_m() const { return aspect_ratio * (outer_radius_m - inner_radius_m); }
};

struct ReleaseParams {
  std::size_t particles = 10000;
  double dt_s = 1e-4;
};

/// Complete parameter set for one experiment. Species are ordered with the
/// metals first and the interferer last.
struct Scenario {
  PhysicalConstants constants{};
  double temperature_k = 300.0;
  std::vector<LigandSpecies> species;
  std::size_t detected = 0;
  double reception_volume_l = 4e-12;
  double affinity_ratio = 0.2;
  double cov = 0.1;
  Eigen::MatrixXd correlations;
  // Mean amount of each non-detected species as a multiple of its own K_D.
  std::vector<double> mean_kd_multiple;
  double bit0_kd_multiple = 4.0;
  double bit1_kd_multiple = 5.0;
  double saturation_bit0_kd_multiple = 39.0;
  double saturation_bit1_kd_multiple = 40.0;
  std::size_t num_events = 100000;
  std::size_t outer_samples = 10000;
  double interval_v = 3.0;
  std::uint64_t seed = 1;
  DeviceGeometry device{};
  FluidParams fluid{};
  PumpParams pump{};
  ReleaseParams release{};

  std::size_t size() const { return species.size(); }
  std::size_t interferer() const { return species.size() - 1; }
  std::size_t num_metals() const { return species.size() - 1; }
  const LigandSpecies& detected_species() const { return species.at(detected); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < species.size(); ++i) {
      if (species[i].name == name) return i;
    }
    return std::nullopt;
  }

  double bit_kd_multiple(int bit, bool saturation) const {
    if (saturation) return bit ? saturation_bit1_kd_multiple : saturation_bit0_kd_multiple;
    return bit ? bit1_kd_multiple : bit0_kd_multiple;
  }

  /// Concentration (M) of the detected metal when the given bit is sent.
  double bit_concentration(int bit, bool saturation = false) const {
    return bit_kd_multiple(bit, saturation) * detected_species().k_d();
  }

  /// Mean concentration (M) of a non-detected species.
  double mean_concentration(std::size_t i) const { return mean_kd_multiple.at(i) * species.at(i).k_d(); }

  double molecules_per_molar() const { return reception_volume_l * constants.avogadro; }

  /// Mean concentration vector in species order with the detected metal at
  /// the given level.
  std::vector<double> concentrations(double detected_concentration) const {
    std::vector<double> c(species.size());
    for (std::size_t i = 0; i < species.size(); ++i) {
      c[i] = i == detected ? detected_concentration : mean_concentration(i);
    }
    return c;
  }

  void refresh_interferer() {
    auto& in = species.at(interferer());
    in.k_off = derive_interferer_koff(species, affinity_ratio);
  }

  Scenario with_affinity(double eta) const {
    Scenario s = *this;
    s.affinity_ratio = eta;
    s.refresh_interferer();
    return s;
  }

  /// Fix the interferer mean at an absolute concentration (M).
  Scenario with_interferer_mean(double concentration_m) const {
    if (!(concentration_m > 0.0)) throw DomainError("interferer mean concentration must be positive");
    Scenario s = *this;
    s.mean_kd_multiple.at(s.interferer()) = concentration_m / s.species.at(s.interferer()).k_d();
    return s;
  }

  Scenario with_bit_ratio(double ratio, bool saturation) const {
    Scenario s = *this;
    if (saturation) {
      s.saturation_bit0_kd_multiple = ratio * s.saturation_bit1_kd_multiple;
    } else {
      s.bit0_kd_multiple = ratio * s.bit1_kd_multiple;
    }
    return s;
  }
};

inline LigandSpecies make_metal(std::string_view name, double k_on, double k_d) {
  auto props = find_metal(name);
  if (!props) throw ConfigError("unknown metal '" + std::string(name) + "'");
  LigandSpecies s;
  s.name = std::string(name);
  s.atomic_radius_m = props->atomic_radius_pm * units::metres_per_pm;
  s.molar_mass_kg_per_mol = props->molar_mass_g_per_mol * units::kg_per_gram;
  s.k_on = k_on;
  s.k_off = k_on * k_d;
  return s;
}

/// Zn (detected) + Cd + interferer reference scenario.
inline Scenario default_scenario() {
  Scenario s;
  s.species.push_back(make_metal("zn", 5.1e7, 6e-6));
  s.species.push_back(make_metal("cd", 5.7e7, 5.1e-6));
  LigandSpecies in;
  in.name = "in";
  in.k_on = 4e7;
  in.is_interferer = true;
  s.species.push_back(in);
  s.detected = 0;
  s.mean_kd_multiple = {0.0, 3.0, 2.0};
  s.correlations = Eigen::MatrixXd::Identity(3, 3);
  s.correlations(0, 1) = s.correlations(1, 0) = 0.7;
  s.correlations(0, 2) = s.correlations(2, 0) = 0.2;
  s.correlations(1, 2) = s.correlations(2, 1) = 0.2;
  s.refresh_interferer();
  return s;
}

}  // namespace nanomc
