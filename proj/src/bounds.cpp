#include "dmcq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dmcq {

double dist_abs(double alpha, double zeta) { return std::abs(zeta - alpha); }

double dist_quad(double alpha, double zeta) {
  if (alpha > 0.0 && zeta > 0.0) {
    const double d = zeta - alpha;
    return d * d / std::min(alpha, zeta);
  }
  return std::numeric_limits<double>::infinity();
}

double dist(double alpha, double zeta) {
  return std::min(dist_abs(alpha, zeta), dist_quad(alpha, zeta));
}

double dist(std::span<const double> alpha, std::span<const double> zeta) {
  if (alpha.size() != zeta.size()) {
    throw std::invalid_argument("dist: dimension mismatch");
  }
  double worst = 0.0;
  for (std::size_t x = 0; x < alpha.size(); ++x) {
    worst = std::max(worst, dist(alpha[x], zeta[x]));
  }
  return worst;
}

double merge_loss_bound(double pi_a, double pi_b, std::span<const double> alpha,
                        std::span<const double> beta, std::size_t num_inputs) {
  if (alpha.size() != num_inputs || beta.size() != num_inputs) {
    throw std::invalid_argument("merge_loss_bound: dimension mismatch");
  }
  return (pi_a + pi_b) * static_cast<double>(num_inputs) * dist(alpha, beta);
}

std::vector<std::size_t> small_mass_indices(const PosteriorChannel& pc) {
  if (pc.size() == 0) {
    throw std::invalid_argument("small_mass_indices: empty channel");
  }
  const double threshold = 2.0 / static_cast<double>(pc.size());
  std::vector<std::size_t> indices;
  for (std::size_t y = 0; y < pc.size(); ++y) {
    if (pc.letter(y).mass <= threshold) indices.push_back(y);
  }
  return indices;
}

namespace {

void check_radius(double alpha, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
}

}  // namespace

double reach_below(double alpha, double r) {
  check_radius(alpha, r);
  return std::max(std::sqrt(r * r / 4.0 + alpha * r) - r / 2.0, r);
}

double reach_above(double alpha, double r) {
  check_radius(alpha, r);
  return std::max(std::sqrt(alpha * r), r);
}

double box_halfwidth(double alpha, double r, std::size_t num_inputs) {
  if (num_inputs < 2) {
    throw std::domain_error("box_halfwidth: need at least two input letters");
  }
  return reach_below(alpha, r) / static_cast<double>(num_inputs - 1);
}

bool ball_contains(std::span<const double> alpha, double r,
                   std::span<const double> zeta) {
  if (alpha.size() != zeta.size()) {
    throw std::invalid_argument("ball_contains: dimension mismatch");
  }
  for (std::size_t x = 0; x < alpha.size(); ++x) {
    const double offset = zeta[x] - alpha[x];
    if (offset < -reach_below(alpha[x], r) || offset > reach_above(alpha[x], r)) {
      return false;
    }
  }
  return true;
}

std::size_t top_index(std::span<const double> alpha) {
  if (alpha.empty()) throw std::invalid_argument("top_index: empty vector");
  std::size_t best = 0;
  for (std::size_t x = 1; x < alpha.size(); ++x) {
    if (alpha[x] > alpha[best]) best = x;
  }
  return best;
}

namespace {

double plain_sum(std::span<const double> v) {
  KahanSum s;
  for (double x : v) s.add(x);
  return s.value();
}

}  // namespace

bool box_contains(std::span<const double> alpha, double r,
                  std::span<const double> zeta) {
  if (alpha.size() != zeta.size()) {
    throw std::invalid_argument("box_contains: dimension mismatch");
  }
  if (std::abs(plain_sum(alpha) - 1.0) > kSumTol ||
      std::abs(plain_sum(zeta) - 1.0) > kSumTol) {
    throw std::invalid_argument("box_contains: vectors must sum to 1");
  }
  const std::size_t top = top_index(alpha);
  for (std::size_t x = 0; x < alpha.size(); ++x) {
    if (x == top) continue;
    const double halfwidth = box_halfwidth(alpha[x], r, alpha.size());
    if (std::abs(zeta[x] - alpha[x]) > halfwidth) return false;
  }
  return true;
}

bool quadrant_contains(std::span<const double> alpha, double r,
                       std::span<const double> zeta_prime) {
  if (alpha.size() < 2 || zeta_prime.size() != alpha.size() - 1) {
    throw std::invalid_argument("quadrant_contains: dimension mismatch");
  }
  const std::size_t top = top_index(alpha);
  std::size_t i = 0;
  for (std::size_t x = 0; x < alpha.size(); ++x) {
    if (x == top) continue;
    const double offset = zeta_prime[i++] - alpha[x];
    if (offset < 0.0 || offset > box_halfwidth(alpha[x], r, alpha.size())) {
      return false;
    }
  }
  return true;
}

namespace {

// log of the per-step coefficient. The square-root difference is computed in
// the cancellation-stable form x / (sqrt(1+x) + 1).
double log_per_step_coeff(std::size_t num_inputs) {
  if (num_inputs < 2) {
    throw std::domain_error("bound coefficients need at least two input letters");
  }
  const double k = static_cast<double>(num_inputs);
  const double x = 1.0 / (2.0 * (k - 1.0));
  const double root_gap = x / (std::sqrt(1.0 + x) + 1.0);
  return std::log(std::numbers::pi) + std::log(k) - 2.0 * std::log(root_gap) +
         (2.0 / (k - 1.0)) *
             (std::log(2.0 * k) - std::lgamma(1.0 + (k - 1.0) / 2.0));
}

}  // namespace

double per_step_coeff(std::size_t num_inputs) {
  return std::exp(log_per_step_coeff(num_inputs));
}

double cumulative_coeff(std::size_t num_inputs) {
  if (num_inputs < 2) {
    throw std::domain_error("bound coefficients need at least two input letters");
  }
  return (static_cast<double>(num_inputs) - 1.0) / 2.0 *
         per_step_coeff(num_inputs);
}

double cumulative_coeff_approx(std::size_t num_inputs) {
  if (num_inputs < 2) {
    throw std::domain_error("bound coefficients need at least two input letters");
  }
  const double k = static_cast<double>(num_inputs);
  return 16.0 * std::numbers::pi * std::numbers::e * k * k * k;
}

double per_step_bound(std::size_t num_inputs, std::size_t num_outputs) {
  if (num_outputs <= 2 * num_inputs) {
    throw std::domain_error(
        "per_step_bound: claimed only for |Y| > 2|X| (got |Y| = " +
        std::to_string(num_outputs) + ", |X| = " + std::to_string(num_inputs) +
        ")");
  }
  const double k = static_cast<double>(num_inputs);
  const double exponent = (k + 1.0) / (k - 1.0);
  return std::exp(log_per_step_coeff(num_inputs) -
                  exponent * std::log(static_cast<double>(num_outputs)));
}

double cumulative_bound(std::size_t num_inputs, std::size_t target) {
  if (target < 2 * num_inputs) {
    throw std::domain_error(
        "cumulative_bound: claimed only for L >= 2|X| (got L = " +
        std::to_string(target) + ", |X| = " + std::to_string(num_inputs) + ")");
  }
  const double k = static_cast<double>(num_inputs);
  const double log_coeff = std::log((k - 1.0) / 2.0) + log_per_step_coeff(num_inputs);
  return std::exp(log_coeff -
                  (2.0 / (k - 1.0)) * std::log(static_cast<double>(target)));
}

double critical_radius(std::size_t num_inputs, std::size_t num_outputs) {
  if (num_outputs <= 2 * num_inputs) {
    throw std::domain_error(
        "critical_radius: defined only for |Y| > 2|X| (got |Y| = " +
        std::to_string(num_outputs) + ", |X| = " + std::to_string(num_inputs) +
        ")");
  }
  const double k = static_cast<double>(num_inputs);
  return std::exp(log_per_step_coeff(num_inputs) - std::log(4.0 * k) -
                  (2.0 / (k - 1.0)) * std::log(static_cast<double>(num_outputs)));
}

}  // namespace dmcq
