#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dmcq/channel.hpp"

namespace dmcq {

/// A candidate merge of two letters, with the exact mutual-information loss
/// the merge would cost. The stamps are per-letter version counters used by
/// the greedy engine's lazy-invalidation queue; outside an engine run they
/// are zero and carry no meaning.
struct MergeCandidate {
  std::uint32_t letter_a = 0;
  std::uint32_t letter_b = 0;
  double loss = 0.0;
  std::uint32_t stamp_a = 0;
  std::uint32_t stamp_b = 0;
};

struct DegradeStep {
  std::uint32_t a = 0;  // smallest provenance index of each merged letter,
  std::uint32_t b = 0;  // a < b; the merged letter keeps key a
  double loss = 0.0;    // nats, clamped to 0 when in [-kLossClampTol, 0)
  std::uint32_t size_before = 0;
};

struct DegradeReport {
  PosteriorChannel result;
  DegradingMap map;
  double total_loss = 0.0;  // nats; equals the compensated sum of step losses
  std::vector<DegradeStep> steps;
};

/// Exact loss of merging two letters given their masses and posteriors:
///   sum_x [ (pi_a+pi_b) eta(g_x) - pi_a eta(alpha_x) - pi_b eta(beta_x) ]
/// with g_x = (pi_a alpha_x + pi_b beta_x) / (pi_a + pi_b).
/// Symmetric in its arguments bit for bit; coordinates with alpha_x == beta_x
/// contribute exactly zero, so duplicate letters merge for free.
double merge_loss(double pi_a, std::span<const double> alpha,
                  double pi_b, std::span<const double> beta);

/// merge_loss applied to two letters of a posterior channel.
double merge_loss(const PosteriorChannel& pc, std::size_t a, std::size_t b);

/// The letter produced by merging a and b: joint columns added exactly,
/// posterior re-derived, provenance sets unioned.
OutputLetter merge_letters(const OutputLetter& a, const OutputLetter& b);

/// Exhaustive scan for the pair with the smallest merge loss. Ties are
/// broken toward the lexicographically smallest (a, b) index pair.
MergeCandidate cheapest_pair(const PosteriorChannel& pc);

/// Greedy degrading: repeatedly merges the globally cheapest pair until at
/// most `target` letters remain. Selection runs over a min-priority queue of
/// candidates with lazy invalidation through per-letter version stamps; after
/// each merge only the candidates pairing the new letter with each survivor
/// are pushed. Deterministic: equal losses are ordered by the pair of
/// smallest provenance indices.
DegradeReport greedy_degrade(const PosteriorChannel& pc, std::size_t target);

}  // namespace dmcq
