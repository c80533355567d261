#include "dmcq/info.hpp"

#include <cmath>
#include <string>

namespace dmcq {

double entropy_term(double p) {
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 0.0;
  if (p < 0.0 || p > 1.0 + kSumTol) {
    throw std::domain_error("entropy_term: argument " + std::to_string(p) +
                            " outside [0, 1]");
  }
  if (p > 1.0) return 0.0;  // rounding residue within tolerance
  return -p * std::log(p);
}

double entropy_sum(std::span<const double> probs) {
  KahanSum s;
  for (double p : probs) s.add(entropy_term(p));
  return s.value();
}

namespace {

double clamp_tiny_negative(double v) {
  return (v < 0.0 && v >= -kLossClampTol) ? 0.0 : v;
}

}  // namespace

double mutual_information(const Channel& channel,
                          const InputDistribution& input) {
  if (channel.num_inputs() != input.size()) {
    throw std::invalid_argument(
        "mutual_information: channel has " +
        std::to_string(channel.num_inputs()) + " inputs but distribution has " +
        std::to_string(input.size()));
  }
  const std::size_t k = channel.num_inputs();
  const std::size_t m = channel.num_outputs();

  KahanSum input_entropy;
  for (std::size_t x = 0; x < k; ++x) input_entropy.add(entropy_term(input[x]));

  KahanSum conditional;
  std::vector<double> joint(k);
  for (std::size_t y = 0; y < m; ++y) {
    KahanSum mass_sum;
    for (std::size_t x = 0; x < k; ++x) {
      joint[x] = input[x] * channel.prob(x, y);
      mass_sum.add(joint[x]);
    }
    const double mass = mass_sum.value();
    if (mass == 0.0) continue;
    for (std::size_t x = 0; x < k; ++x) {
      conditional.add(mass * entropy_term(joint[x] / mass));
    }
  }
  return clamp_tiny_negative(input_entropy.value() - conditional.value());
}

double mutual_information(const PosteriorChannel& pc) {
  KahanSum input_entropy;
  for (double p : pc.input_probs()) input_entropy.add(entropy_term(p));

  KahanSum conditional;
  for (const OutputLetter& letter : pc.letters()) {
    KahanSum h;
    for (double p : letter.posterior) h.add(entropy_term(p));
    conditional.add(letter.mass * h.value());
  }
  return clamp_tiny_negative(input_entropy.value() - conditional.value());
}

PosteriorChannel to_posterior_form(const Channel& channel,
                                   const InputDistribution& input) {
  if (channel.num_inputs() != input.size()) {
    throw std::invalid_argument(
        "to_posterior_form: channel/distribution dimension mismatch");
  }
  const std::size_t k = channel.num_inputs();
  const std::size_t m = channel.num_outputs();

  PosteriorChannel pc;
  pc.input_probs_ = input.probs();
  pc.original_outputs_ = m;
  pc.letters_.reserve(m);
  for (std::size_t y = 0; y < m; ++y) {
    OutputLetter letter;
    letter.joint.resize(k);
    KahanSum mass_sum;
    for (std::size_t x = 0; x < k; ++x) {
      letter.joint[x] = input[x] * channel.prob(x, y);
      mass_sum.add(letter.joint[x]);
    }
    letter.mass = mass_sum.value();
    if (letter.mass == 0.0) {
      pc.dropped_.push_back(static_cast<std::uint32_t>(y));
      continue;
    }
    letter.posterior.resize(k);
    for (std::size_t x = 0; x < k; ++x) {
      letter.posterior[x] = letter.joint[x] / letter.mass;
    }
    letter.provenance = {static_cast<std::uint32_t>(y)};
    pc.letters_.push_back(std::move(letter));
  }
  if (pc.letters_.empty()) {
    throw std::invalid_argument(
        "to_posterior_form: every output letter has zero mass");
  }
  return pc;
}

Channel apply_degrading_map(const Channel& channel, const DegradingMap& map) {
  if (map.domain_size() != channel.num_outputs()) {
    throw std::out_of_range(
        "apply_degrading_map: map domain does not match channel outputs");
  }
  const std::size_t k = channel.num_inputs();
  const std::size_t merged = map.image_size();
  std::vector<std::vector<double>> rows(k, std::vector<double>(merged, 0.0));
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      rows[x][map[y]] += channel.prob(x, y);
    }
  }
  return Channel::validated(std::move(rows));
}

}  // namespace dmcq
