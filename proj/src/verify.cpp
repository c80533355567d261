#include "dmcq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "dmcq/bounds.hpp"
#include "dmcq/experiment.hpp"
#include "dmcq/merge.hpp"

namespace dmcq {

bool VerifyReport::any_fail() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckStatus::fail;
  });
}

VerifyReport run_verification(const PosteriorChannel& pc,
                              const VerifyOptions& options) {
  VerifyReport report;
  const std::size_t k = pc.num_inputs();
  const std::size_t n = pc.size();
  const double scale = options.coeff_scale;

  std::optional<DegradeReport> trace;
  const bool can_merge = n >= 2;
  if (can_merge) trace = greedy_degrade(pc, 1);

  // Per-step: every selected pair at current size l > 2|X| must cost at most
  // the per-step bound at l.
  {
    CheckResult check{"per-step bound", CheckStatus::skip, ""};
    if (n <= 2 * k) {
      check.detail = "|Y| <= 2|X|, bound not claimed";
    } else {
      check.status = CheckStatus::pass;
      double worst_ratio = 0.0;
      for (const DegradeStep& step : trace->steps) {
        if (step.size_before <= 2 * k) continue;
        const double bound = scale * per_step_bound(k, step.size_before);
        worst_ratio = std::max(worst_ratio, step.loss / bound);
        if (step.loss > bound) {
          check.status = CheckStatus::fail;
          check.detail = "at size " + std::to_string(step.size_before) +
                         ": step loss " + format_sig12(step.loss) +
                         " exceeds bound " + format_sig12(bound);
          break;
        }
      }
      if (check.status == CheckStatus::pass) {
        check.detail = "max step loss/bound = " + format_sig12(worst_ratio);
      }
    }
    report.checks.push_back(std::move(check));
  }

  // Cumulative, per requested target.
  for (std::size_t target : options.targets) {
    CheckResult check{"cumulative bound L=" + std::to_string(target),
                      CheckStatus::skip, ""};
    if (target < 2 * k) {
      check.detail = "L < 2|X|, bound not claimed";
    } else {
      KahanSum total;
      if (trace) {
        for (const DegradeStep& step : trace->steps) {
          if (step.size_before > target) total.add(step.loss);
        }
      }
      const double loss = total.value();
      const double bound = scale * cumulative_bound(k, target);
      if (loss <= bound) {
        check.status = CheckStatus::pass;
        check.detail = "greedy total " + format_sig12(loss) + " <= bound " +
                       format_sig12(bound);
      } else {
        check.status = CheckStatus::fail;
        check.detail = "greedy total " + format_sig12(loss) +
                       " exceeds bound " + format_sig12(bound);
      }
    }
    report.checks.push_back(std::move(check));
  }

  // Pair dominance over all pairs of the original channel. The 1e-12 slack
  // absorbs rounding residue on near-duplicate letters.
  {
    CheckResult check{"pair bound dominance", CheckStatus::skip, ""};
    if (!can_merge) {
      check.detail = "single letter, nothing to merge";
    } else {
      check.status = CheckStatus::pass;
      std::size_t pairs = 0;
      for (std::size_t a = 0; a + 1 < n && check.status == CheckStatus::pass;
           ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          const OutputLetter& la = pc.letter(a);
          const OutputLetter& lb = pc.letter(b);
          const double loss = merge_loss(pc, a, b);
          const double bound = merge_loss_bound(la.mass, lb.mass, la.posterior,
                                                lb.posterior, k);
          ++pairs;
          if (loss > bound + 1e-12) {
            check.status = CheckStatus::fail;
            check.detail = "pair (" + std::to_string(a) + "," +
                           std::to_string(b) + "): loss " +
                           format_sig12(loss) + " exceeds bound " +
                           format_sig12(bound);
            break;
          }
        }
      }
      if (check.status == CheckStatus::pass) {
        check.detail = std::to_string(pairs) + " pairs dominated";
      }
    }
    report.checks.push_back(std::move(check));
  }

  return report;
}

}  // namespace dmcq
