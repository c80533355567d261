#include "dmcq/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dmcq {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

double checked_sum(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s.add(x);
  return s.value();
}

}  // namespace

InputDistribution InputDistribution::validated(std::vector<double> probs,
                                               bool renormalize) {
  if (probs.empty()) {
    throw std::invalid_argument("input distribution must be nonempty");
  }
  for (std::size_t x = 0; x < probs.size(); ++x) {
    if (!std::isfinite(probs[x])) {
      throw std::invalid_argument("input distribution entry " +
                                  std::to_string(x) + " is not finite");
    }
    if (probs[x] <= 0.0) {
      throw std::invalid_argument("input distribution entry " +
                                  std::to_string(x) +
                                  " must be strictly positive");
    }
  }
  const double sum = checked_sum(probs);
  if (std::abs(sum - 1.0) > kSumTol) {
    if (!renormalize) {
      throw std::invalid_argument(
          "input distribution sums to " + std::to_string(sum) +
          ", outside tolerance; pass renormalize to rescale");
    }
    for (double& p : probs) p /= sum;
  }
  for (double& p : probs) {
    if (p > 1.0) {
      if (p > 1.0 + kSumTol) {
        throw std::invalid_argument("input distribution entry exceeds 1");
      }
      p = 1.0;
    }
  }
  return InputDistribution(std::move(probs));
}

Channel Channel::validated(std::vector<std::vector<double>> rows,
                           bool renormalize) {
  if (rows.empty() || rows[0].empty()) {
    throw std::invalid_argument("channel must have at least one row and column");
  }
  const std::size_t cols = rows[0].size();
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != cols) {
      throw std::invalid_argument("channel row " + std::to_string(x) +
                                  " has length " +
                                  std::to_string(rows[x].size()) +
                                  ", expected " + std::to_string(cols));
    }
    for (std::size_t y = 0; y < cols; ++y) {
      if (!finite_nonneg(rows[x][y])) {
        throw std::invalid_argument("channel entry (" + std::to_string(x) +
                                    "," + std::to_string(y) +
                                    ") is negative or not finite");
      }
    }
    const double sum = checked_sum(rows[x]);
    if (std::abs(sum - 1.0) > kSumTol) {
      if (!renormalize) {
        throw std::invalid_argument(
            "channel row " + std::to_string(x) + " sums to " +
            std::to_string(sum) + ", outside tolerance");
      }
      if (sum <= 0.0) {
        throw std::invalid_argument("channel row " + std::to_string(x) +
                                    " has zero mass");
      }
      for (double& w : rows[x]) w /= sum;
    }
    for (std::size_t y = 0; y < cols; ++y) {
      if (rows[x][y] > 1.0 + kSumTol) {
        throw std::invalid_argument("channel entry (" + std::to_string(x) +
                                    "," + std::to_string(y) + ") exceeds 1");
      }
    }
  }
  return Channel(std::move(rows));
}

OutputLetter OutputLetter::from_posterior(double mass,
                                          std::vector<double> posterior,
                                          std::vector<std::uint32_t> provenance) {
  OutputLetter letter;
  letter.mass = mass;
  letter.joint.resize(posterior.size());
  for (std::size_t x = 0; x < posterior.size(); ++x) {
    letter.joint[x] = mass * posterior[x];
  }
  letter.posterior = std::move(posterior);
  letter.provenance = std::move(provenance);
  return letter;
}

PosteriorChannel PosteriorChannel::from_letters(
    std::vector<double> input_probs, std::vector<OutputLetter> letters,
    std::vector<std::uint32_t> dropped) {
  const InputDistribution checked_input =
      InputDistribution::validated(input_probs);
  const std::size_t k = input_probs.size();
  if (letters.empty()) {
    throw std::invalid_argument("posterior channel must have letters");
  }

  std::vector<std::uint32_t> covered(dropped);
  std::vector<double> marginal(k, 0.0);
  std::uint32_t prev_key = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    OutputLetter& letter = letters[i];
    if (!(letter.mass > 0.0) || !std::isfinite(letter.mass)) {
      throw std::invalid_argument("letter " + std::to_string(i) +
                                  " has non-positive mass");
    }
    if (letter.posterior.size() != k) {
      throw std::invalid_argument("letter " + std::to_string(i) +
                                  " posterior has wrong dimension");
    }
    if (letter.joint.empty()) {
      letter.joint.resize(k);
      for (std::size_t x = 0; x < k; ++x) {
        letter.joint[x] = letter.mass * letter.posterior[x];
      }
    } else if (letter.joint.size() != k) {
      throw std::invalid_argument("letter " + std::to_string(i) +
                                  " joint column has wrong dimension");
    }
    KahanSum post_sum;
    KahanSum joint_sum;
    for (std::size_t x = 0; x < k; ++x) {
      if (!finite_nonneg(letter.posterior[x]) ||
          letter.posterior[x] > 1.0 + kSumTol) {
        throw std::invalid_argument("letter " + std::to_string(i) +
                                    " posterior entry out of range");
      }
      if (!finite_nonneg(letter.joint[x])) {
        throw std::invalid_argument("letter " + std::to_string(i) +
                                    " joint entry out of range");
      }
      post_sum.add(letter.posterior[x]);
      joint_sum.add(letter.joint[x]);
      marginal[x] += letter.joint[x];
    }
    if (std::abs(post_sum.value() - 1.0) > kSumTol) {
      throw std::invalid_argument("letter " + std::to_string(i) +
                                  " posterior does not sum to 1");
    }
    if (std::abs(joint_sum.value() - letter.mass) > kSumTol) {
      throw std::invalid_argument("letter " + std::to_string(i) +
                                  " joint column inconsistent with its mass");
    }
    if (letter.provenance.empty() ||
        !std::is_sorted(letter.provenance.begin(), letter.provenance.end()) ||
        std::adjacent_find(letter.provenance.begin(),
                           letter.provenance.end()) !=
            letter.provenance.end()) {
      throw std::invalid_argument("letter " + std::to_string(i) +
                                  " provenance must be sorted and unique");
    }
    if (i > 0 && letter.provenance.front() <= prev_key) {
      throw std::invalid_argument(
          "letters must be ordered by smallest provenance index");
    }
    prev_key = letter.provenance.front();
    covered.insert(covered.end(), letter.provenance.begin(),
                   letter.provenance.end());
  }

  std::sort(covered.begin(), covered.end());
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (covered[i] != i) {
      throw std::invalid_argument(
          "provenance and dropped indices must exactly tile the original "
          "output index set");
    }
  }

  KahanSum mass_sum;
  for (const OutputLetter& letter : letters) mass_sum.add(letter.mass);
  if (std::abs(mass_sum.value() - 1.0) > kSumTol) {
    throw std::invalid_argument("letter masses must sum to 1");
  }
  for (std::size_t x = 0; x < k; ++x) {
    if (std::abs(marginal[x] - checked_input[x]) > kSumTol) {
      throw std::invalid_argument(
          "joint columns are inconsistent with the input distribution");
    }
  }

  PosteriorChannel pc;
  pc.input_probs_ = checked_input.probs();
  pc.letters_ = std::move(letters);
  pc.original_outputs_ = covered.size();
  std::sort(dropped.begin(), dropped.end());
  pc.dropped_ = std::move(dropped);
  return pc;
}

DegradingMap PosteriorChannel::to_map() const {
  std::vector<std::uint32_t> assignment(original_outputs_, 0);
  for (std::size_t j = 0; j < letters_.size(); ++j) {
    for (std::uint32_t y : letters_[j].provenance) {
      assignment[y] = static_cast<std::uint32_t>(j);
    }
  }
  return DegradingMap::validated(std::move(assignment));
}

DegradingMap DegradingMap::validated(std::vector<std::uint32_t> assignment) {
  if (assignment.empty()) {
    throw std::invalid_argument("degrading map must be total");
  }
  std::uint32_t max_index = 0;
  for (std::uint32_t z : assignment) max_index = std::max(max_index, z);
  std::vector<bool> seen(static_cast<std::size_t>(max_index) + 1, false);
  for (std::uint32_t z : assignment) seen[z] = true;
  for (std::size_t z = 0; z < seen.size(); ++z) {
    if (!seen[z]) {
      throw std::invalid_argument("degrading map image skips letter " +
                                  std::to_string(z));
    }
  }
  const std::size_t image = seen.size();
  return DegradingMap(std::move(assignment), image);
}

}  // namespace dmcq
