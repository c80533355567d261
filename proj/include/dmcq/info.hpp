#pragma once

#include <span>

#include "dmcq/channel.hpp"

namespace dmcq {

/// The entropy summand -p ln p, with entropy_term(0) = entropy_term(1) = 0.
/// Values in (1, 1 + kSumTol] are treated as rounding residue and clamped
/// to 1; anything outside [0, 1 + kSumTol] is a domain error.
double entropy_term(double p);

/// Sum of entropy_term over a probability vector, compensated.
double entropy_sum(std::span<const double> probs);

/// Mutual information I(X;Y) in nats, evaluated through the posterior form:
/// sum_x eta(pi(x)) - sum_y pi(y) sum_x eta(W(x|y)).
double mutual_information(const Channel& channel, const InputDistribution& input);

/// Same quantity computed from an already-converted posterior channel.
double mutual_information(const PosteriorChannel& pc);

/// Bayes conversion of (W, P_X) into posterior form. Output letters with
/// zero mass are dropped and recorded; provenance starts as singletons.
PosteriorChannel to_posterior_form(const Channel& channel,
                                   const InputDistribution& input);

/// Applies a deterministic output map: Q(z|x) = sum_{y: map[y]=z} W(y|x).
Channel apply_degrading_map(const Channel& channel, const DegradingMap& map);

inline double nats_to_bits(double nats) { return nats / 0.6931471805599453; }

}  // namespace dmcq
