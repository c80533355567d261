#include "dmcq/random.hpp"

#include <cmath>

namespace dmcq {

std::uint64_t splitmix_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix_mix(seed + (trial + 1) * 0x9E3779B97F4A7C15ULL);
}

double Rng::unit_exponential() { return -std::log(uniform01()); }

void Rng::fill_simplex(std::span<double> out) {
  KahanSum sum;
  for (double& v : out) {
    v = unit_exponential();
    sum.add(v);
  }
  const double total = sum.value();
  for (double& v : out) v /= total;
}

RandomInstance random_channel(std::size_t num_inputs, std::size_t num_outputs,
                              std::uint64_t seed) {
  if (num_inputs < 2 || num_outputs < 2) {
    throw std::invalid_argument(
        "random_channel: need at least two inputs and two outputs");
  }
  Rng rng(seed);
  std::vector<double> input(num_inputs);
  rng.fill_simplex(input);
  std::vector<std::vector<double>> rows(num_inputs,
                                        std::vector<double>(num_outputs));
  for (std::size_t x = 0; x < num_inputs; ++x) {
    rng.fill_simplex(rows[x]);
  }
  return RandomInstance{Channel::validated(std::move(rows)),
                        InputDistribution::validated(std::move(input))};
}

}  // namespace dmcq
