#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nanomc/error.hpp"
#include "nanomc/parallel.hpp"
#include "nanomc/params.hpp"
#include "nanomc/rng.hpp"
#include "nanomc/units.hpp"

/// Molecule transport out of the device: suspension viscosity, Stokes-Einstein
/// diffusion, disc-pump flow and first-passage release times.
namespace nanomc::release {

/// sqrt(m k_B T) / (pi^{3/2} d^2).
inline double species_viscosity(double mass_kg, double diameter_m, double temperature_k,
                                double boltzmann = PhysicalConstants{}.boltzmann_si) {
  if (!(mass_kg > 0.0) || !(diameter_m > 0.0)) throw DomainError("mass and diameter must be positive");
  if (!(temperature_k > 0.0)) throw DomainError("temperature must be positive");
  return std::sqrt(mass_kg * boltzmann * temperature_k) / (std::pow(std::numbers::pi, 1.5) * diameter_m * diameter_m);
}

struct FluidComponent {
  std::string name;
  double volume_fraction = 0.0;
  double viscosity_pa_s = 0.0;
};

struct FluidModel {
  double mu_water = 0.0;
  double water_fraction = 1.0;
  double temperature_k = 300.0;
  double boltzmann = PhysicalConstants{}.boltzmann_si;
  std::vector<FluidComponent> components;

  double mu_eff() const {
    double mu = mu_water;
    for (const auto& c : components) mu += c.volume_fraction * c.viscosity_pa_s;
    return mu;
  }
  double total_fraction() const {
    double s = water_fraction;
    for (const auto& c : components) s += c.volume_fraction;
    return s;
  }
};

/// Water only; mu_eff equals the water viscosity.
inline FluidModel water(double mu_water, double temperature_k = 300.0,
                        double boltzmann = PhysicalConstants{}.boltzmann_si) {
  if (!(mu_water > 0.0)) throw DomainError("water viscosity must be positive");
  return {mu_water, 1.0, temperature_k, boltzmann, {}};
}

/// Stored metals share the non-water volume in proportion to count * r^3.
/// The detected metal is stored at its bit-1 level, others at their means.
inline FluidModel fluid_from_scenario(const Scenario& sc) {
  const double phi_w = sc.fluid.water_volume_fraction;
  if (!(phi_w > 0.0 && phi_w <= 1.0)) throw ConfigError("water volume fraction must lie in (0, 1]");
  FluidModel f{sc.fluid.water_viscosity_pa_s, phi_w, sc.temperature_k, sc.constants.boltzmann_si, {}};
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < sc.num_metals(); ++i) {
    const auto& s = sc.species[i];
    const double c = i == sc.detected ? sc.bit_concentration(1) : sc.mean_concentration(i);
    const double count = counts_from_concentration(c, sc.reception_volume_l, sc.constants.avogadro);
    const double wgt = count * std::pow(s.atomic_radius_m, 3);
    weights.push_back(wgt);
    total += wgt;
  }
  if (phi_w < 1.0 && !(total > 0.0)) throw ConfigError("no stored species to fill the non-water volume");
  for (std::size_t i = 0; i < sc.num_metals(); ++i) {
    const auto& s = sc.species[i];
    const double phi = phi_w < 1.0 ? (1.0 - phi_w) * weights[i] / total : 0.0;
    f.components.push_back({s.name, phi,
                            species_viscosity(s.molecule_mass_kg(sc.constants.avogadro), s.diameter_m(),
                                              sc.temperature_k, sc.constants.boltzmann_si)});
  }
  return f;
}

/// Stokes-Einstein k_B T / (6 pi mu_eff r).
inline double diffusion_coefficient(double radius_m, const FluidModel& fluid) {
  if (!(radius_m > 0.0)) throw DomainError("particle radius must be positive");
  return fluid.boltzmann * fluid.temperature_k / (6.0 * std::numbers::pi * fluid.mu_eff() * radius_m);
}

struct PumpGeometry {
  double r1 = 0.0;           // m, inner radius
  double r2 = 0.0;           // m, outer radius
  double h = 0.0;            // m, channel height
  double delta_theta = 0.0;  // rad
  double omega = 0.0;        // rad/s

  double w() const { return r2 - r1; }
  double aspect_ratio() const { return h / w(); }
  double radius_ratio() const { return r1 / r2; }
  double mean_radius() const { return 0.5 * (r1 + r2); }
  double rpm() const { return units::rad_per_s_to_rpm(omega); }

  void validate() const {
    if (!(r1 > 0.0 && r1 < r2)) throw DomainError("pump radii must satisfy 0 < R1 < R2");
    if (!(h > 0.0)) throw DomainError("channel height must be positive");
    if (!(delta_theta > 0.0 && delta_theta < 2.0 * std::numbers::pi)) {
      throw DomainError("channel angle must lie in (0, 2 pi)");
    }
    if (!(omega >= 0.0)) throw DomainError("rotational speed must be non-negative");
  }
};

inline PumpGeometry default_geometry(const PumpParams& p) {
  PumpGeometry g{p.inner_radius_m, p.outer_radius_m, p.channel_height_m(), p.delta_theta_rad,
                 units::rpm_to_rad_per_s(p.rpm)};
  g.validate();
  return g;
}

inline PumpGeometry rpm_geometry(const PumpParams& p, double rpm) {
  auto g = default_geometry(p);
  g.omega = units::rpm_to_rad_per_s(rpm);
  g.validate();
  return g;
}

/// Outer radius held fixed, R1 = x R2, height from the default aspect ratio.
inline PumpGeometry radius_ratio_geometry(const PumpParams& p, double x) {
  PumpGeometry g{x * p.outer_radius_m, p.outer_radius_m, 0.0, p.delta_theta_rad, units::rpm_to_rad_per_s(p.rpm)};
  g.h = p.aspect_ratio * g.w();
  g.validate();
  return g;
}

/// Height held at its default, width h / AR, radii from the given radius ratio.
inline PumpGeometry aspect_ratio_geometry(const PumpParams& p, double aspect, double radius_ratio = 0.9) {
  const double h = p.channel_height_m();
  const double w = h / aspect;
  const double r2 = w / (1.0 - radius_ratio);
  PumpGeometry g{radius_ratio * r2, r2, h, p.delta_theta_rad, units::rpm_to_rad_per_s(p.rpm)};
  g.validate();
  return g;
}

/// Couette plus pressure-driven flow; ln(R1/R2) < 0 so positive delta_p
/// opposes the drag flow.
inline double pump_flow_quadratic(const PumpGeometry& g, double mu, double delta_p) {
  g.validate();
  const double pressure = std::pow(g.h, 3) * std::log(g.radius_ratio()) / (12.0 * mu) * delta_p / g.delta_theta;
  return pressure + g.omega * g.h * (g.r2 * g.r2 - g.r1 * g.r1) / 4.0;
}

struct ShapeFactors {
  double f_da = 1.0;
  double f_dr = 1.0;
  double f_pa = 1.0;
  double f_pr = 1.0;
  std::size_t terms_da = 0;
  std::size_t terms_pa = 0;
};

inline constexpr double kSeriesTolerance = 1e-12;
inline constexpr std::size_t kSeriesMaxTerms = 1000000;

namespace detail {

inline constexpr double kSevenEighthsZeta3 = 1.0517997902646449;  // sum over odd n of 1/n^3

template <class Term>
double odd_series(Term term, std::size_t& used, std::string_view what, double aspect) {
  double sum = 0.0;
  for (std::size_t k = 0; k < kSeriesMaxTerms; ++k) {
    const double n = static_cast<double>(2 * k + 1);
    const double t = term(n);
    sum += t;
    if (std::abs(t) < kSeriesTolerance) {
      used = k + 1;
      return sum;
    }
  }
  throw NumericError(std::string(what) + " series did not converge at aspect ratio " + std::to_string(aspect) +
                     " after " + std::to_string(kSeriesMaxTerms) + " terms");
}

}  // namespace detail

/// Drag shape factor (16 / (pi^3 a)) sum_odd tanh(n pi a / 2) / n^3, a = h/w.
inline double drag_shape_factor(double a, std::size_t* terms = nullptr) {
  if (!(a > 0.0)) throw DomainError("aspect ratio must be positive");
  std::size_t used = 0;
  // Summing (tanh - 1) converges geometrically once n pi a / 2 >> 1.
  const double s = detail::odd_series(
      [a](double n) { return (std::tanh(n * std::numbers::pi * a / 2.0) - 1.0) / (n * n * n); }, used, "drag", a);
  if (terms) *terms = used;
  return 16.0 / (std::pow(std::numbers::pi, 3) * a) * (s + detail::kSevenEighthsZeta3);
}

/// Pressure shape factor 1 - (192 a / pi^5) sum_odd tanh(n pi / (2a)) / n^5.
inline double pressure_shape_factor(double a, std::size_t* terms = nullptr) {
  if (!(a > 0.0)) throw DomainError("aspect ratio must be positive");
  std::size_t used = 0;
  const double s = detail::odd_series(
      [a](double n) { return std::tanh(n * std::numbers::pi / (2.0 * a)) / std::pow(n, 5); }, used, "pressure", a);
  if (terms) *terms = used;
  return 1.0 - 192.0 * a / std::pow(std::numbers::pi, 5) * s;
}

/// Curvature correction 0.5 (x + 1)/(x - 1) ln x for x = R1/R2.
inline double curvature_pressure_factor(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("radius ratio must lie in (0, 1)");
  return 0.5 * (x + 1.0) / (x - 1.0) * std::log(x);
}

inline ShapeFactors shape_factors(const PumpGeometry& g) {
  g.validate();
  ShapeFactors f;
  f.f_da = drag_shape_factor(g.aspect_ratio(), &f.terms_da);
  f.f_pa = pressure_shape_factor(g.aspect_ratio(), &f.terms_pa);
  f.f_pr = curvature_pressure_factor(g.radius_ratio());
  f.f_dr = 1.0;
  return f;
}

struct GeneralFlow {
  double q = 0.0;               // m^3/s
  double q_star = 0.0;          // dimensionless
  double reduced_reynolds = 0.0;
  double euler = 0.0;
  ShapeFactors factors;
};

/// Q = Q* (omega R_m) h w, Q* = F_DR F_DA / 2 - Re Eu F_PR F_PA / 12 with
/// Re = rho U h^2 / (R_m dtheta mu) and Eu = dp / (rho U^2).
inline GeneralFlow pump_flow_general(const PumpGeometry& g, double mu, double density, double delta_p) {
  GeneralFlow out;
  out.factors = shape_factors(g);
  const double u_bar = g.omega * g.mean_radius();
  const double drag = 0.5 * out.factors.f_dr * out.factors.f_da;
  if (u_bar > 0.0) {
    out.reduced_reynolds = density * u_bar * g.h * g.h / (g.mean_radius() * g.delta_theta * mu);
    out.euler = delta_p / (density * u_bar * u_bar);
    out.q_star = drag - out.reduced_reynolds * out.euler * out.factors.f_pr * out.factors.f_pa / 12.0;
    out.q = out.q_star * u_bar * g.h * g.w();
  } else {
    // Re Eu stays finite as U -> 0; evaluate the dimensional pressure term directly.
    out.q_star = drag;
    out.q = -delta_p * std::pow(g.h, 3) * g.w() / (12.0 * g.mean_radius() * g.delta_theta * mu) *
            out.factors.f_pr * out.factors.f_pa;
  }
  return out;
}

/// Normalized advected Gaussian plume.
inline double concentration_profile(double x, double t, double u, double d, double amount) {
  if (!(t > 0.0)) throw DomainError("time must be positive");
  if (!(d > 0.0)) throw DomainError("diffusion coefficient must be positive");
  const double spread = 4.0 * d * t;
  const double dx = x - u * t;
  return amount / std::sqrt(std::numbers::pi * spread) * std::exp(-dx * dx / spread);
}

struct ReleaseResult {
  double q = 0.0;
  double u = 0.0;
  double t_analytic = 0.0;
  double t_sim_mean = 0.0;
  double t_sim_std = 0.0;
  std::size_t particles = 0;
  double path_length = 0.0;
  double diffusion = 0.0;
  double peclet = 0.0;
};

struct SimulationOptions {
  std::size_t particles = 10000;
  double dt = 1e-4;
  std::uint64_t seed = 1;
  std::uint64_t task = 0;   // substream key for the calling sweep point
  std::size_t threads = 1;
  // Steps before which a crossing is a > skip_sigmas event are drawn as one
  // Gaussian sum of the Euler-Maruyama increments.
  bool skip_ahead = true;
  double skip_sigmas = 12.0;
  std::uint64_t max_steps = 2000000000ULL;
};

struct ReleaseTimes {
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> times;
};

/// Euler-Maruyama walk x += u dt + sqrt(2 D dt) N(0, 1) from x = 0; each
/// particle is released at the first step with x >= L. Particle i uses its
/// own substream so results do not depend on the worker count.
inline ReleaseTimes simulate_release_times(double u, double d, double length, const SimulationOptions& opt) {
  if (opt.particles < 100) throw DomainError("release simulation needs at least 100 particles");
  if (!(length > 0.0)) throw DomainError("path length must be positive");
  if (!(opt.dt > 0.0)) throw DomainError("time step must be positive");
  if (d < 0.0) throw DomainError("diffusion coefficient must be non-negative");
  if (u <= 0.0 && d == 0.0) throw NeverReleasesError("no drift and no diffusion: particles never reach the outlet");
  if (u > 0.0 && opt.dt > 0.01 * length / u * (1.0 + 1e-12)) {
    throw DomainError("time step exceeds 1% of the advection time L/u");
  }
  const double drift = u * opt.dt;
  const double noise = std::sqrt(2.0 * d * opt.dt);
  std::uint64_t skip = 0;
  if (opt.skip_ahead && u > 0.0) {
    // Largest k with k drift + skip_sigmas noise sqrt(k) < L.
    const double b = opt.skip_sigmas * noise;
    const double root = (-b + std::sqrt(b * b + 4.0 * drift * length)) / (2.0 * drift);
    const double k = std::floor(root * root) - 1.0;
    if (k > 1.0) skip = static_cast<std::uint64_t>(k);
  }
  ReleaseTimes out;
  out.times.assign(opt.particles, 0.0);
  parallel_for(opt.particles, opt.threads, [&](std::size_t i) {
    auto eng = rng::make_engine(opt.seed, "release/particle", opt.task, i);
    std::normal_distribution<double> n01(0.0, 1.0);
    std::uint64_t step = 0;
    double x = 0.0;
    if (skip > 0) {
      step = skip;
      const double ks = static_cast<double>(skip);
      x = ks * drift + noise * std::sqrt(ks) * n01(eng);
    }
    while (x < length) {
      if (++step > opt.max_steps) throw NumericError("particle did not reach the outlet within the step limit");
      x += drift + (noise > 0.0 ? noise * n01(eng) : 0.0);
    }
    out.times[i] = static_cast<double>(step) * opt.dt;
  });
  double sum = 0.0;
  for (double t : out.times) sum += t;
  out.mean = sum / static_cast<double>(out.times.size());
  double ss = 0.0;
  for (double t : out.times) ss += (t - out.mean) * (t - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(out.times.size() - 1));
  return out;
}

inline ReleaseResult simulate_release(double u, double d, double length, const SimulationOptions& opt) {
  const auto times = simulate_release_times(u, d, length, opt);
  ReleaseResult r;
  r.u = u;
  r.t_analytic = u > 0.0 ? length / u : std::numeric_limits<double>::infinity();
  r.t_sim_mean = times.mean;
  r.t_sim_std = times.std;
  r.particles = opt.particles;
  r.path_length = length;
  r.diffusion = d;
  r.peclet = d > 0.0 ? u * length / d : std::numeric_limits<double>::infinity();
  return r;
}

enum class Variable { rpm, radius_ratio, aspect_ratio };

inline Variable parse_variable(std::string_view s) {
  if (s == "rpm") return Variable::rpm;
  if (s == "radius_ratio") return Variable::radius_ratio;
  if (s == "aspect_ratio") return Variable::aspect_ratio;
  throw ConfigError("unknown sweep variable '" + std::string(s) + "'");
}

inline std::string_view variable_name(Variable v) {
  switch (v) {
    case Variable::rpm: return "rpm";
    case Variable::radius_ratio: return "radius_ratio";
    case Variable::aspect_ratio: return "aspect_ratio";
  }
  return "";
}

inline void check_grid(Variable v, std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("sweep grid is empty");
  for (double x : grid) {
    const bool ok = v == Variable::rpm            ? (x > 0.0 && x <= 1e5)
                    : v == Variable::radius_ratio ? (x > 0.0 && x < 1.0)
                                                  : (x >= 1e-3 && x <= 10.0);
    if (!ok) {
      throw ConfigError(std::string(variable_name(v)) + " grid value " + std::to_string(x) + " is out of range");
    }
  }
}

inline PumpGeometry sweep_geometry(Variable v, const PumpParams& p, double x) {
  switch (v) {
    case Variable::rpm: return rpm_geometry(p, x);
    case Variable::radius_ratio: return radius_ratio_geometry(p, x);
    case Variable::aspect_ratio: return aspect_ratio_geometry(p, x);
  }
  return default_geometry(p);
}

/// Zero pressure difference. The aspect-ratio sweep uses the shape-factor
/// model, the others the quadratic model.
inline double sweep_flow(Variable v, const PumpGeometry& g, const FluidModel& fluid, double density) {
  if (v == Variable::aspect_ratio) return pump_flow_general(g, fluid.mu_eff(), density, 0.0).q;
  return pump_flow_quadratic(g, fluid.mu_eff(), 0.0);
}

struct SweepRow {
  double x = 0.0;
  ReleaseResult result;
};

/// Release of the detected metal over the device length.
inline std::vector<SweepRow> release_sweep(Variable v, std::span<const double> grid, const Scenario& sc,
                                           SimulationOptions opt) {
  check_grid(v, grid);
  const auto fluid = fluid_from_scenario(sc);
  const double d = diffusion_coefficient(sc.detected_species().atomic_radius_m, fluid);
  const double length = sc.device.length_m;
  std::vector<SweepRow> rows;
  const std::size_t threads = opt.threads;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto g = sweep_geometry(v, sc.pump, grid[i]);
    const double q = sweep_flow(v, g, fluid, sc.fluid.water_density_kg_m3);
    const double u = q / (g.w() * g.h);
    SimulationOptions point = opt;
    point.task = i;
    point.threads = threads;
    auto r = simulate_release(u, d, length, point);
    r.q = q;
    rows.push_back({grid[i], r});
  }
  return rows;
}

}  // namespace nanomc::release
