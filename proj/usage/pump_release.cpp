// Micropump operating point: flow, pressure loss, power, and the release
// time of zinc over the device length.

#include <iostream>

#include "nanomc/energy.hpp"
#include "nanomc/params.hpp"
#include "nanomc/release.hpp"
#include "nanomc/rng.hpp"

int main() {
  const auto sc = nanomc::default_scenario();
  const auto fluid = nanomc::release::fluid_from_scenario(sc);
  const double mu = fluid.mu_eff();
  for (const double rpm : {100.0, 500.0, 1000.0}) {
    const auto g = nanomc::release::rpm_geometry(sc.pump, rpm);
    const double q = nanomc::energy::operating_flow(g, mu);
    const auto drop = nanomc::energy::pressure_difference(g, mu);
    const double u = q / (g.w() * g.h);
    nanomc::release::SimulationOptions opt;
    opt.particles = 2000;
    opt.seed = nanomc::rng::substream_seed(sc.seed, "usage/release");
    const double d = nanomc::release::diffusion_coefficient(sc.detected_species().atomic_radius_m, fluid);
    const auto rel = nanomc::release::simulate_release(u, d, sc.device.length_m, opt);
    std::cout << rpm << " rpm: Q " << q << " m^3/s, dP " << drop.delta_p << " Pa, power " << drop.delta_p * q
              << " W, release " << rel.t_sim_mean << " s (L/u " << rel.t_analytic << " s)\n";
  }
}
