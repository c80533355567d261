#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dmcq/common.hpp"

namespace dmcq {

/// Input distribution over the channel input alphabet. Entries are strictly
/// positive and sum to one; callers with zero-probability letters must strip
/// them first (see strip_zero_inputs in io.hpp for the file-loading path).
class InputDistribution {
 public:
  /// Validates and wraps a probability vector. With `renormalize` set, a
  /// vector whose sum is off by more than the tolerance is rescaled instead
  /// of rejected.
  static InputDistribution validated(std::vector<double> probs,
                                     bool renormalize = false);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t x) const { return probs_[x]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  explicit InputDistribution(std::vector<double> probs)
      : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

/// A discrete memoryless channel: per input letter x, a probability row
/// over output letters, row(x)[y] = W(y|x).
class Channel {
 public:
  static Channel validated(std::vector<std::vector<double>> rows,
                           bool renormalize = false);

  std::size_t num_inputs() const { return rows_.size(); }
  std::size_t num_outputs() const { return rows_.empty() ? 0 : rows_[0].size(); }
  double prob(std::size_t x, std::size_t y) const { return rows_[x][y]; }
  const std::vector<double>& row(std::size_t x) const { return rows_[x]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  explicit Channel(std::vector<std::vector<double>> rows)
      : rows_(std::move(rows)) {}

  std::vector<std::vector<double>> rows_;
};

/// One output letter in posterior form.
///
/// `joint[x]` holds p(x, y) = pi(x) W(y|x). Merging adds joint columns
/// exactly and re-derives the posterior from the sum, which keeps repeated
/// merges from compounding Bayes-rule roundoff. `provenance` lists the
/// original output indices folded into this letter, sorted ascending.
struct OutputLetter {
  double mass = 0.0;
  std::vector<double> joint;
  std::vector<double> posterior;
  std::vector<std::uint32_t> provenance;

  /// Builds a letter from mass and posterior; joint = mass * posterior.
  static OutputLetter from_posterior(double mass, std::vector<double> posterior,
                                     std::vector<std::uint32_t> provenance);
};

class DegradingMap;

/// A channel held as a list of output letters, each with mass pi(y) and
/// posterior (W(x|y))_x. This is the working representation for merging.
/// Letters are kept sorted by their smallest provenance index; zero-mass
/// original letters are dropped at construction and recorded in
/// dropped_outputs() so emitted maps stay total over the original indices.
class PosteriorChannel {
 public:
  /// Validating constructor for letters assembled by hand (tests, tools).
  /// Provenance sets plus `dropped` must exactly tile {0..m-1}, letters must
  /// be ordered by smallest provenance index, and the letter joints must be
  /// consistent with `input_probs` and with each letter's mass and posterior.
  static PosteriorChannel from_letters(std::vector<double> input_probs,
                                       std::vector<OutputLetter> letters,
                                       std::vector<std::uint32_t> dropped = {});

  std::size_t num_inputs() const { return input_probs_.size(); }
  std::size_t size() const { return letters_.size(); }
  const OutputLetter& letter(std::size_t i) const { return letters_[i]; }
  const std::vector<OutputLetter>& letters() const { return letters_; }
  const std::vector<double>& input_probs() const { return input_probs_; }
  std::size_t original_output_count() const { return original_outputs_; }
  const std::vector<std::uint32_t>& dropped_outputs() const { return dropped_; }

  /// Deterministic map from original output indices to current letter
  /// indices. Dropped (zero-mass) originals map to letter 0; their channel
  /// columns are all-zero, so the assignment does not affect the result.
  DegradingMap to_map() const;

 private:
  friend PosteriorChannel to_posterior_form(const Channel&,
                                            const InputDistribution&);

  PosteriorChannel() = default;

  std::vector<double> input_probs_;
  std::vector<OutputLetter> letters_;
  std::size_t original_outputs_ = 0;
  std::vector<std::uint32_t> dropped_;
};

/// Deterministic output relabeling: assignment()[y] is the merged letter
/// index that original output y maps to. The image must be {0..K-1}.
class DegradingMap {
 public:
  static DegradingMap validated(std::vector<std::uint32_t> assignment);

  std::size_t domain_size() const { return assignment_.size(); }
  std::size_t image_size() const { return image_size_; }
  std::uint32_t operator[](std::size_t y) const { return assignment_[y]; }
  const std::vector<std::uint32_t>& assignment() const { return assignment_; }

 private:
  DegradingMap(std::vector<std::uint32_t> assignment, std::size_t image_size)
      : assignment_(std::move(assignment)), image_size_(image_size) {}

  std::vector<std::uint32_t> assignment_;
  std::size_t image_size_ = 0;
};

}  // namespace dmcq
