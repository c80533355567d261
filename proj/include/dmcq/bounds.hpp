#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dmcq/channel.hpp"

namespace dmcq {

// Surrogate "distance" functions bounding the per-letter merge loss. They
// are not metrics (no triangle inequality); alpha is a probability while
// zeta ranges over the reals.

/// |zeta - alpha|.
double dist_abs(double alpha, double zeta);

/// (zeta - alpha)^2 / min(alpha, zeta) when both are strictly positive,
/// +infinity otherwise.
double dist_quad(double alpha, double zeta);

/// min(dist_abs, dist_quad).
double dist(double alpha, double zeta);

/// Vector form: max over coordinates of the scalar distance.
double dist(std::span<const double> alpha, std::span<const double> zeta);

/// Upper bound on the merge loss of a letter pair:
/// (pi_a + pi_b) * num_inputs * dist(alpha, beta).
double merge_loss_bound(double pi_a, double pi_b, std::span<const double> alpha,
                        std::span<const double> beta, std::size_t num_inputs);

/// Indices of letters with mass at most 2/|Y|; always at least half the
/// alphabet.
std::vector<std::size_t> small_mass_indices(const PosteriorChannel& pc);

// Around a point alpha >= 0, the set {zeta : dist(alpha, zeta) <= r} is the
// interval [alpha - reach_below, alpha + reach_above]. It contains alpha but
// is generally not centered at it.

/// max(sqrt(r^2/4 + alpha r) - r/2, r). Nondecreasing in alpha.
double reach_below(double alpha, double r);

/// max(sqrt(alpha r), r). Always >= reach_below.
double reach_above(double alpha, double r);

/// reach_below(alpha, r) / (num_inputs - 1): the per-coordinate halfwidth of
/// the sum-one box and quadrant sets below.
double box_halfwidth(double alpha, double r, std::size_t num_inputs);

/// Membership of zeta in the axis-aligned box
/// { zeta : -reach_below(alpha_x, r) <= zeta_x - alpha_x <= reach_above(alpha_x, r) },
/// which coincides with dist(alpha, zeta) <= r (the coincidence is tested,
/// not assumed).
bool ball_contains(std::span<const double> alpha, double r,
                   std::span<const double> zeta);

/// Index of the largest entry; ties resolve to the smallest index.
std::size_t top_index(std::span<const double> alpha);

/// Membership in the sum-one box around alpha: both vectors must sum to one,
/// and every coordinate except top_index(alpha) must lie within
/// box_halfwidth of alpha. A subset of the ball restricted to the sum-one
/// hyperplane.
bool box_contains(std::span<const double> alpha, double r,
                  std::span<const double> zeta);

/// Membership of a reduced vector (top_index coordinate deleted, remaining
/// coordinates in ascending index order) in the positive quadrant
/// { zeta' : 0 <= zeta_x - alpha_x <= box_halfwidth(alpha_x, r) for x != top }.
/// Two letters with a common top index whose quadrants intersect are within
/// distance r of each other.
bool quadrant_contains(std::span<const double> alpha, double r,
                       std::span<const double> zeta_prime);

// Explicit constants of the degrading guarantees. Both grow quickly with the
// input alphabet size, so they are evaluated in log space via lgamma.

/// Coefficient of the per-step guarantee: for |Y| > 2|X| some pair merges at
/// a loss of at most per_step_coeff(|X|) * |Y|^(-(|X|+1)/(|X|-1)).
double per_step_coeff(std::size_t num_inputs);

/// Coefficient of the cumulative guarantee, (|X|-1)/2 * per_step_coeff(|X|).
double cumulative_coeff(std::size_t num_inputs);

/// Large-|X| approximation of cumulative_coeff: 16 pi e |X|^3.
double cumulative_coeff_approx(std::size_t num_inputs);

/// per_step_coeff(|X|) * |Y|^(-(|X|+1)/(|X|-1)); requires |Y| > 2|X|.
double per_step_bound(std::size_t num_inputs, std::size_t num_outputs);

/// cumulative_coeff(|X|) * L^(-2/(|X|-1)); requires L >= 2|X|.
double cumulative_bound(std::size_t num_inputs, std::size_t target);

/// The packing radius guaranteeing a close pair among the small-mass letters
/// sharing the majority top index; requires |Y| > 2|X|. Equal to
/// per_step_coeff(|X|)/(4|X|) * |Y|^(-2/(|X|-1)).
double critical_radius(std::size_t num_inputs, std::size_t num_outputs);

}  // namespace dmcq
