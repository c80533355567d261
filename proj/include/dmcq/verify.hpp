#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dmcq/channel.hpp"

namespace dmcq {

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::skip;
  std::string detail;
};

struct VerifyOptions {
  /// Target sizes for the cumulative-bound checks.
  std::vector<std::size_t> targets;
  /// Scales the bound coefficients; a testing hook for exercising the FAIL
  /// path against known-good channels. Leave at 1 for real verification.
  double coeff_scale = 1.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool any_fail() const;
};

/// Runs the bound checks against one channel:
///  - per-step: along the full greedy trace, every selected pair at current
///    size l > 2|X| costs at most per_step_bound(|X|, l);
///  - cumulative, per target L: the greedy total down to L letters is at
///    most cumulative_bound(|X|, L) when L >= 2|X|;
///  - pair dominance: merge_loss <= merge_loss_bound over all letter pairs.
/// Checks whose size preconditions fail are reported as skip, not fail.
VerifyReport run_verification(const PosteriorChannel& pc,
                              const VerifyOptions& options);

}  // namespace dmcq
