// Bit error probability of the toxicity detector across affinity ratios,
// with an end-to-end Monte Carlo cross-check at each point.

#include <cstdio>

#include "nanomc/detection.hpp"
#include "nanomc/params.hpp"
#include "nanomc/rng.hpp"

int main() {
  std::printf("%6s %10s %10s %10s %10s\n", "eta", "lambda", "bep", "bep_mc", "se");
  for (const double eta : {0.2, 0.4, 0.6, 0.8}) {
    const auto sc = nanomc::default_scenario().with_affinity(eta);
    const nanomc::detection::DetectionModel model(sc, false);
    const auto r = model.evaluate();
    const std::size_t bits = 2000;
    const auto mc = model.simulate(bits, r.lambda, nanomc::detection::SimulationMode::multinomial,
                                   nanomc::rng::substream_seed(sc.seed, "usage/detection"));
    std::printf("%6.2f %10.4f %10.4f %10.4f %10.4f\n", eta, r.lambda, r.bep, mc.bep,
                nanomc::detection::bep_standard_error(r, bits));
  }
}
