#pragma once

#include <cstdint>
#include <vector>

#include "dmcq/channel.hpp"

namespace dmcq {

/// A set partition of letter indices. Blocks are disjoint, cover the index
/// set, and are ordered by their smallest element.
struct Partition {
  std::vector<std::vector<std::uint32_t>> blocks;
};

/// Streams every set partition of {0..n-1} into at most max_blocks blocks,
/// each exactly once, in restricted-growth-string order. Refuses n > 12
/// (Bell(13) is past the point of exhaustive search being sensible here).
class PartitionEnumerator {
 public:
  PartitionEnumerator(std::size_t n, std::size_t max_blocks);

  /// Fills `out` with the next partition; returns false when exhausted.
  bool next(Partition& out);

  /// Growth-string access for callers that avoid materializing blocks.
  /// Valid after a successful advance(); code[y] is the block of element y.
  bool advance();
  const std::vector<std::uint32_t>& code() const { return code_; }

 private:
  std::size_t n_;
  std::size_t max_blocks_;
  bool started_ = false;
  bool done_ = false;
  std::vector<std::uint32_t> code_;
  std::vector<std::uint32_t> prefix_max_;
};

struct OracleResult {
  Partition partition;
  double loss = 0.0;  // the optimal degrading loss for the instance
};

/// Exhaustive minimization of the degrading loss over all deterministic
/// partitions of the output letters into at most `target` blocks. Restricting
/// the search to deterministic maps loses nothing: for a fixed input
/// distribution the mutual information of the degraded channel is convex in
/// the intermediate channel, and the degraded channel is affine in it, so the
/// maximum over the polytope of row-stochastic maps is attained at a vertex,
/// i.e. at a deterministic map. Guarded to |Y| <= 12.
OracleResult brute_force_optimal(const PosteriorChannel& pc, std::size_t target);

/// Optimal degrading for binary-input channels by dynamic programming.
/// Letters are sorted by their posterior for input 0 (ties by smallest
/// provenance index); some optimal quantizer is contiguous in that order,
/// a premise adopted from the standard quantizer-design DP and additionally
/// cross-validated against brute_force_optimal by the test suite.
OracleResult optimal_binary_dp(const PosteriorChannel& pc, std::size_t target);

}  // namespace dmcq
