#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dmcq/channel.hpp"

namespace dmcq {

struct SweepConfig {
  std::size_t num_inputs = 2;
  std::size_t num_outputs = 64;
  std::vector<std::size_t> targets;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
};

/// Formats a double with 12 significant digits in scientific notation,
/// locale-independent. Used for every numeric CSV cell so outputs round-trip
/// and stay byte-identical across runs.
std::string format_sig12(double v);

/// Runs the power-law sweep: per trial, a seeded random channel is greedily
/// degraded to each target L; rows are written in (trial, L) order with the
/// exact header `seed,trial,X,Y,L,delta_greedy,bound,ratio`. The bound and
/// ratio cells are empty when L < 2|X|. A ratio above one would contradict
/// the cumulative guarantee and aborts with bound_violation.
void run_sweep(const SweepConfig& config, std::ostream& csv);

}  // namespace dmcq
