#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "dmcq/channel.hpp"

namespace dmcq {

/// SplitMix64 finalizer; the documented seed-derivation primitive.
std::uint64_t splitmix_mix(std::uint64_t z);

/// Per-trial seed: splitmix_mix(seed + (trial + 1) * 0x9E3779B97F4A7C15).
/// Fixed across releases so sweeps are reproducible and parallelizable.
std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Deterministic random source: a 64-bit Mersenne Twister (whose output
/// sequence is fixed by the C++ standard) with hand-rolled conversions, since
/// the standard distribution adaptors are implementation-defined and would
/// break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double strictly inside (0, 1): ((u >> 11) + 0.5) * 2^-53.
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Strictly positive unit-exponential variate, -ln(uniform01()).
  double unit_exponential();

  /// Fills `out` with a flat-Dirichlet sample: normalized unit exponentials.
  void fill_simplex(std::span<double> out);

 private:
  std::mt19937_64 engine_;
};

struct RandomInstance {
  Channel channel;
  InputDistribution input;
};

/// Seeded random test instance: every channel row and the input distribution
/// are independent flat-Dirichlet vectors. Draw order is fixed (input first,
/// then rows in input-letter order), so instances are stable across releases.
RandomInstance random_channel(std::size_t num_inputs, std::size_t num_outputs,
                              std::uint64_t seed);

}  // namespace dmcq
