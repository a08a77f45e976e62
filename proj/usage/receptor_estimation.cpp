// Simulates one receptor trace at the reference operating point and
// recovers the binding-event fractions from the dwell-time intervals.

#include <cmath>
#include <iostream>
#include <vector>

#include "nanomc/estimator.hpp"
#include "nanomc/kinetics.hpp"
#include "nanomc/params.hpp"

int main() {
  const auto sc = nanomc::default_scenario();
  const auto binders = nanomc::kinetics::scenario_binders(sc, sc.concentrations(sc.bit_concentration(1)));
  const auto generator = nanomc::kinetics::build_generator(binders);
  std::cout << "bound probability " << nanomc::kinetics::steady_state(generator).p_bound << "\n";

  std::vector<double> k_offs;
  double total = 0.0;
  for (const auto& b : binders) {
    k_offs.push_back(b.k_off);
    total += b.k_on * b.concentration;
  }
  const nanomc::estimator::IntervalEstimator est(k_offs, sc.interval_v);
  const auto trace = nanomc::kinetics::simulate_trace(generator, sc.num_events, sc.seed);
  const auto model = est.estimate(trace.bound_dwells());
  for (std::size_t i = 0; i < binders.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    std::cout << binders[i].label << ": estimated " << model.alpha_hat(k) << ", true "
              << binders[i].k_on * binders[i].concentration / total << ", sd " << std::sqrt(model.var_alpha(k))
              << "\n";
  }
}
