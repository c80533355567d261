#include "dmcq/experiment.hpp"

#include <cstdio>

#include "dmcq/bounds.hpp"
#include "dmcq/info.hpp"
#include "dmcq/merge.hpp"
#include "dmcq/random.hpp"

namespace dmcq {

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

void run_sweep(const SweepConfig& config, std::ostream& csv) {
  if (config.targets.empty()) {
    throw std::invalid_argument("sweep: need at least one target size");
  }
  for (std::size_t target : config.targets) {
    if (target == 0) throw std::invalid_argument("sweep: targets must be >= 1");
  }
  if (config.trials == 0) {
    throw std::invalid_argument("sweep: need at least one trial");
  }

  const std::size_t k = config.num_inputs;
  std::size_t smallest = config.targets[0];
  for (std::size_t target : config.targets) {
    smallest = std::min(smallest, target);
  }

  csv << "seed,trial,X,Y,L,delta_greedy,bound,ratio\n";
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const RandomInstance instance = random_channel(
        k, config.num_outputs, derive_trial_seed(config.seed, trial));
    const PosteriorChannel pc =
        to_posterior_form(instance.channel, instance.input);
    // One greedy run down to the smallest target provides the totals for
    // every larger target: greedy merging is a chain, so the run to L is a
    // prefix of the run past L.
    const DegradeReport run = greedy_degrade(pc, smallest);
    for (std::size_t target : config.targets) {
      KahanSum total;
      for (const DegradeStep& step : run.steps) {
        if (step.size_before > target) total.add(step.loss);
      }
      const double loss = total.value();
      csv << config.seed << ',' << trial << ',' << k << ','
          << config.num_outputs << ',' << target << ',' << format_sig12(loss);
      if (target >= 2 * k) {
        const double bound = cumulative_bound(k, target);
        const double ratio = loss / bound;
        if (ratio > 1.0) {
          throw bound_violation(
              "sweep: trial " + std::to_string(trial) + ", L = " +
              std::to_string(target) + ": greedy loss " + format_sig12(loss) +
              " exceeds the cumulative bound " + format_sig12(bound));
        }
        csv << ',' << format_sig12(bound) << ',' << format_sig12(ratio);
      } else {
        csv << ",,";
      }
      csv << '\n';
    }
  }
  csv.flush();
}

}  // namespace dmcq
