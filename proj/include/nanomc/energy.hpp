#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nanomc/error.hpp"
#include "nanomc/params.hpp"
#include "nanomc/release.hpp"

namespace nanomc::energy {

struct PressureDrop {
  double velocity = 0.0;     // V = omega (R1 + R2) / 2
  double path_length = 0.0;  // dL = dtheta (R1 + R2) / 2
  double delta_p = 0.0;      // 6 mu V dL / h^2
};

inline PressureDrop pressure_difference(const release::PumpGeometry& g, double mu) {
  g.validate();
  if (!(mu > 0.0)) throw DomainError("viscosity must be positive");
  PressureDrop p;
  p.velocity = g.omega * (g.r1 + g.r2) / 2.0;
  p.path_length = g.delta_theta * (g.r1 + g.r2) / 2.0;
  p.delta_p = 6.0 * mu * p.velocity * p.path_length / (g.h * g.h);
  return p;
}

/// Drag-driven flow omega h (R2^2 - R1^2) / 4; the pressure drop is treated
/// as a loss and not fed back into the flow.
inline double operating_flow(const release::PumpGeometry& g, double mu) {
  return release::pump_flow_quadratic(g, mu, 0.0);
}

struct EnergyTrace {
  double x = 0.0;
  double delta_p = 0.0;
  double q = 0.0;
  std::vector<double> times;
  std::vector<double> energy;  // E(t) = dP Q t

  double power() const { return delta_p * q; }
};

inline EnergyTrace energy_trace(double x, double delta_p, double q, std::span<const double> times) {
  EnergyTrace tr{x, delta_p, q, {times.begin(), times.end()}, {}};
  tr.energy.reserve(times.size());
  double prev = -1.0;
  for (double t : times) {
    if (t < 0.0) throw ConfigError("energy time grid must be non-negative");
    if (t < prev) throw ConfigError("energy time grid must be non-decreasing");
    prev = t;
    tr.energy.push_back(delta_p * q * t);
  }
  return tr;
}

inline std::vector<EnergyTrace> energy_sweep(release::Variable v, std::span<const double> grid,
                                             std::span<const double> times, const Scenario& sc) {
  release::check_grid(v, grid);
  if (times.empty()) throw ConfigError("energy time grid is empty");
  const double mu = release::fluid_from_scenario(sc).mu_eff();
  std::vector<EnergyTrace> out;
  for (double x : grid) {
    const auto g = release::sweep_geometry(v, sc.pump, x);
    out.push_back(energy_trace(x, pressure_difference(g, mu).delta_p, operating_flow(g, mu), times));
  }
  return out;
}

}  // namespace nanomc::energy
