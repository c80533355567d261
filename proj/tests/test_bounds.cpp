#include <doctest.h>

#include <cmath>
#include <limits>

#include "dmcq/bounds.hpp"
#include "dmcq/info.hpp"
#include "dmcq/merge.hpp"
#include "testutil.hpp"

using dmcq::OutputLetter;
using dmcq::PosteriorChannel;
using testutil::close_abs;
using testutil::close_rel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PosteriorChannel channel_with_masses(const std::vector<double>& masses) {
  // Single-input letters: only the masses matter for these checks.
  std::vector<OutputLetter> letters;
  for (std::size_t y = 0; y < masses.size(); ++y) {
    letters.push_back(OutputLetter::from_posterior(
        masses[y], {1.0}, {static_cast<std::uint32_t>(y)}));
  }
  return PosteriorChannel::from_letters({1.0}, std::move(letters));
}

}  // namespace

TEST_CASE("scalar distances") {
  CHECK(close_abs(dmcq::dist_abs(0.3, 0.5), 0.2, 1e-15));
  CHECK(dmcq::dist_abs(0.4, 0.4) == 0.0);
  CHECK(close_abs(dmcq::dist_abs(0.1, -0.2), 0.3, 1e-15));

  CHECK(close_abs(dmcq::dist_quad(0.1, 0.2), 0.1, 1e-12));
  CHECK(dmcq::dist_quad(0.5, 0.5) == 0.0);
  CHECK(dmcq::dist_quad(0.3, 0.0) == kInf);
  CHECK(dmcq::dist_quad(0.0, 0.3) == kInf);

  CHECK(close_abs(dmcq::dist(0.1, 0.2), 0.1, 1e-12));
  CHECK(close_abs(dmcq::dist(0.3, 0.0), 0.3, 1e-15));  // abs branch wins
  const std::vector<double> v{0.2, 0.8};
  CHECK(dmcq::dist(v, v) == 0.0);
  const std::vector<double> w{0.3, 0.7};
  CHECK_THROWS_AS(dmcq::dist(std::vector<double>{0.5}, w),
                  std::invalid_argument);
}

TEST_CASE("pair loss bound") {
  const std::vector<double> a{1.0, 0.0};
  const std::vector<double> b{0.0, 1.0};
  CHECK(close_abs(dmcq::merge_loss_bound(0.25, 0.25, a, b, 2), 1.0, 1e-15));
  CHECK(dmcq::merge_loss_bound(0.3, 0.3, a, a, 2) == 0.0);
  CHECK_THROWS_AS(dmcq::merge_loss_bound(0.3, 0.3, a, b, 3),
                  std::invalid_argument);

  // dominance over the exact loss on random letter pairs
  dmcq::Rng rng(11);
  for (int it = 0; it < 10000; ++it) {
    const std::size_t k = 2 + it % 5;
    const double pa = 1e-6 + 0.5 * rng.uniform01();
    const double pb = 1e-6 + 0.5 * rng.uniform01();
    std::vector<double> alpha = testutil::random_simplex(rng, k);
    std::vector<double> beta = testutil::random_simplex(rng, k);
    const double loss = dmcq::merge_loss(pa, alpha, pb, beta);
    const double bound = dmcq::merge_loss_bound(pa, pb, alpha, beta, k);
    CHECK(loss <= bound);
  }
}

TEST_CASE("small-mass letter selection") {
  PosteriorChannel uniform =
      channel_with_masses({0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125,
                           0.125});
  CHECK(dmcq::small_mass_indices(uniform).size() == 8);

  PosteriorChannel skewed = channel_with_masses({0.7, 0.1, 0.1, 0.1});
  CHECK(dmcq::small_mass_indices(skewed) ==
        std::vector<std::size_t>{1, 2, 3});

  // at least half the alphabet, always
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t m = 2 + seed % 19;
    PosteriorChannel pc = testutil::random_posterior(2, m, 600 + seed);
    const std::size_t small = dmcq::small_mass_indices(pc).size();
    CHECK(small >= (pc.size() + 1) / 2);
  }
}

TEST_CASE("interval reaches") {
  CHECK(dmcq::reach_below(0.0, 0.25) == 0.25);
  CHECK(dmcq::reach_above(0.0, 0.25) == 0.25);
  CHECK(close_rel(dmcq::reach_below(4.0, 1.0), 1.5615528128088303, 1e-14));
  CHECK(dmcq::reach_below(1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(dmcq::reach_below(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(dmcq::reach_above(0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dmcq::box_halfwidth(0.1, 0.5, 1), std::domain_error);
  CHECK(close_abs(dmcq::box_halfwidth(4.0, 1.0, 3),
                  dmcq::reach_below(4.0, 1.0) / 2.0, 1e-15));

  dmcq::Rng rng(5);
  double prev = dmcq::reach_below(0.0, 0.37);
  for (int i = 1; i <= 400; ++i) {
    const double alpha = i * 0.005;
    const double cur = dmcq::reach_below(alpha, 0.37);
    CHECK(cur >= prev);  // nondecreasing in alpha
    prev = cur;
  }
  for (int it = 0; it < 5000; ++it) {
    const double alpha = 2.0 * rng.uniform01();
    const double r = 1e-4 + rng.uniform01();
    const double lo = dmcq::reach_below(alpha, r);
    const double hi = dmcq::reach_above(alpha, r);
    CHECK(lo >= 0.0);
    CHECK(lo <= hi);
  }
}

TEST_CASE("ball membership") {
  const std::vector<double> alpha{0.25, 0.75};
  CHECK(dmcq::ball_contains(alpha, 0.1, alpha));

  // exact boundary: alpha + sqrt(alpha r) with everything representable
  const std::vector<double> a{0.25};
  CHECK(dmcq::ball_contains(a, 0.25, std::vector<double>{0.5}));
  CHECK_FALSE(dmcq::ball_contains(a, 0.25, std::vector<double>{0.5 + 1e-6}));

  // the boundary case at alpha = 0.1, r = 0.1, zeta = 0.2
  CHECK(dmcq::ball_contains(std::vector<double>{0.1}, 0.1,
                            std::vector<double>{0.2}));

  // a coordinate just above the upper reach is out
  std::vector<double> zeta = alpha;
  zeta[1] = alpha[1] + dmcq::reach_above(alpha[1], 0.1) + 1e-6;
  CHECK_FALSE(dmcq::ball_contains(alpha, 0.1, zeta));

  CHECK_THROWS_AS(
      dmcq::ball_contains(alpha, 0.1, std::vector<double>{0.25}),
      std::invalid_argument);
}

TEST_CASE("interval characterization agrees with the distance") {
  dmcq::Rng rng(17);
  for (int it = 0; it < 20000; ++it) {
    double alpha = rng.uniform01();
    if (it % 20 == 0) alpha = 0.0;
    const double zeta = -0.5 + 2.0 * rng.uniform01();
    const double r = std::exp(std::log(1e-4) +
                              rng.uniform01() * std::log(2.0 / 1e-4));
    const bool by_interval =
        zeta - alpha >= -dmcq::reach_below(alpha, r) &&
        zeta - alpha <= dmcq::reach_above(alpha, r);
    const bool by_distance = dmcq::dist(alpha, zeta) <= r;
    CHECK(by_interval == by_distance);
  }
}

TEST_CASE("top index") {
  CHECK(dmcq::top_index(std::vector<double>{0.2, 0.5, 0.3}) == 1);
  CHECK(dmcq::top_index(std::vector<double>{0.5, 0.5}) == 0);
  CHECK(dmcq::top_index(std::vector<double>{1.0, 0.0}) == 0);
  CHECK_THROWS_AS(dmcq::top_index(std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("sum-one box membership") {
  const std::vector<double> alpha{0.5, 0.3, 0.2};
  CHECK(dmcq::box_contains(alpha, 0.05, alpha));

  // violating one off-top coordinate by 1e-6 beyond the halfwidth
  std::vector<double> zeta = alpha;
  const double bump = dmcq::box_halfwidth(alpha[1], 0.05, 3) + 1e-6;
  zeta[1] += bump;
  zeta[0] -= bump;  // keep the sum at one
  CHECK_FALSE(dmcq::box_contains(alpha, 0.05, zeta));

  CHECK_THROWS_AS(
      dmcq::box_contains(alpha, 0.05, std::vector<double>{0.5, 0.3, 0.3}),
      std::invalid_argument);
}

TEST_CASE("box samples stay inside the ball") {
  // constructive subset check on random draws
  dmcq::Rng rng(23);
  for (int it = 0; it < 20000; ++it) {
    const std::size_t k = 2 + it % 5;
    std::vector<double> alpha = testutil::random_simplex(rng, k);
    const double r = std::exp(std::log(1e-4) +
                              rng.uniform01() * std::log(2.0 / 1e-4));
    const std::size_t top = dmcq::top_index(alpha);
    std::vector<double> zeta(k);
    dmcq::KahanSum rest;
    for (std::size_t x = 0; x < k; ++x) {
      if (x == top) continue;
      const double u = (2.0 * rng.uniform01() - 1.0) * 0.999;
      zeta[x] = alpha[x] + u * dmcq::box_halfwidth(alpha[x], r, k);
      rest.add(zeta[x]);
    }
    zeta[top] = 1.0 - rest.value();
    CHECK(dmcq::box_contains(alpha, r, zeta));
    CHECK(dmcq::ball_contains(alpha, r, zeta));
  }
}

TEST_CASE("quadrant membership") {
  const std::vector<double> alpha{0.5, 0.5};
  // lower boundary: zeta' equals alpha on the off-top coordinate
  CHECK(dmcq::quadrant_contains(alpha, 2.0, std::vector<double>{0.5}));
  // upper boundary with exactly representable values: halfwidth is 2
  CHECK(dmcq::quadrant_contains(alpha, 2.0, std::vector<double>{2.5}));
  CHECK_FALSE(dmcq::quadrant_contains(alpha, 2.0, std::vector<double>{2.5001}));
  // anything below alpha is out
  CHECK_FALSE(dmcq::quadrant_contains(alpha, 2.0,
                                      std::vector<double>{0.4999}));
  CHECK_THROWS_AS(
      dmcq::quadrant_contains(alpha, 2.0, std::vector<double>{0.5, 0.5}),
      std::invalid_argument);
}

namespace {

// Axis-aligned overlap of the two positive quadrants over the off-top
// coordinates; exact, no sampling.
bool quadrants_intersect(const std::vector<double>& alpha,
                         const std::vector<double>& beta, double r) {
  const std::size_t k = alpha.size();
  const std::size_t top = dmcq::top_index(alpha);
  for (std::size_t x = 0; x < k; ++x) {
    if (x == top) continue;
    const double lo = std::max(alpha[x], beta[x]);
    const double hi = std::min(alpha[x] + dmcq::box_halfwidth(alpha[x], r, k),
                               beta[x] + dmcq::box_halfwidth(beta[x], r, k));
    if (lo > hi) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("intersecting quadrants imply a close pair") {
  dmcq::Rng rng(29);
  std::size_t intersections = 0;
  for (int it = 0; it < 20000; ++it) {
    const std::size_t k = 2 + it % 4;
    std::vector<double> alpha = testutil::random_simplex(rng, k);
    const double r = std::exp(std::log(1e-3) + rng.uniform01() * std::log(1.0 / 1e-3));
    // nearby candidate with the same top index (rejection on the top index)
    std::vector<double> beta(k);
    for (int tries = 0; tries < 50; ++tries) {
      dmcq::KahanSum sum;
      for (std::size_t x = 0; x < k; ++x) {
        beta[x] = alpha[x] * (1.0 + 0.5 * r * (2.0 * rng.uniform01() - 1.0)) +
                  1e-12;
        sum.add(beta[x]);
      }
      for (std::size_t x = 0; x < k; ++x) beta[x] /= sum.value();
      if (dmcq::top_index(beta) == dmcq::top_index(alpha)) break;
    }
    if (dmcq::top_index(beta) != dmcq::top_index(alpha)) continue;
    if (quadrants_intersect(alpha, beta, r)) {
      ++intersections;
      CHECK(dmcq::dist(alpha, beta) <= r);
    }
  }
  // the construction must actually exercise the implication
  CHECK(intersections > 2000);
}

TEST_CASE("bound coefficients match the frozen evaluations") {
  // frozen from a 40-digit evaluation of the closed forms
  CHECK(close_rel(dmcq::per_step_coeff(2), 2534.1387483049872, 1e-12));
  CHECK(close_rel(dmcq::cumulative_coeff(2), 1267.0693741524936, 1e-12));
  CHECK(close_rel(dmcq::per_step_coeff(3), 4058.8986820659152, 1e-12));
  CHECK(dmcq::cumulative_coeff(3) == dmcq::per_step_coeff(3));
  CHECK(close_rel(dmcq::per_step_coeff(64), 1186424.1916107306, 1e-11));

  const double ratio = dmcq::cumulative_coeff(64) /
                       dmcq::cumulative_coeff_approx(64);
  CHECK(ratio > 0.5);
  CHECK(ratio < 2.0);

  CHECK_THROWS_AS(dmcq::per_step_coeff(1), std::domain_error);
  CHECK_THROWS_AS(dmcq::cumulative_coeff(0), std::domain_error);
}

TEST_CASE("bound evaluators") {
  CHECK(close_rel(dmcq::per_step_bound(2, 100),
                  dmcq::per_step_coeff(2) * 1e-6, 1e-12));
  CHECK(close_rel(dmcq::cumulative_bound(2, 100),
                  dmcq::cumulative_coeff(2) * 1e-4, 1e-12));
  double prev = dmcq::cumulative_bound(2, 4);
  for (std::size_t target = 5; target <= 64; ++target) {
    const double cur = dmcq::cumulative_bound(2, target);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(dmcq::per_step_bound(2, 4), std::domain_error);
  CHECK_THROWS_AS(dmcq::cumulative_bound(2, 3), std::domain_error);
  CHECK_THROWS_AS(dmcq::per_step_bound(1, 100), std::domain_error);
}

TEST_CASE("critical radius") {
  for (std::size_t k = 2; k <= 6; ++k) {
    const double k_d = static_cast<double>(k);
    const double scaling = dmcq::critical_radius(k, 64) /
                           dmcq::critical_radius(k, 32);
    CHECK(close_rel(scaling, std::pow(2.0, -2.0 / (k_d - 1.0)), 1e-12));
    // relation to the per-step bound: bound = 4|X|/|Y| * radius
    const double bound = dmcq::per_step_bound(k, 64);
    const double radius = dmcq::critical_radius(k, 64);
    CHECK(close_rel(bound, 4.0 * k_d / 64.0 * radius, 1e-12));
    CHECK(radius > 0.0);
  }
  CHECK_THROWS_AS(dmcq::critical_radius(2, 4), std::domain_error);
}

TEST_CASE("a close pair exists in the majority class of small letters") {
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const std::size_t m = 2 * k + 1 + trial % 20;
    PosteriorChannel pc = testutil::random_posterior(k, m, 31000 + trial);

    const std::vector<std::size_t> small = dmcq::small_mass_indices(pc);
    std::vector<std::vector<std::size_t>> classes(k);
    for (std::size_t y : small) {
      classes[dmcq::top_index(pc.letter(y).posterior)].push_back(y);
    }
    std::size_t best = 0;
    for (std::size_t x = 1; x < k; ++x) {
      if (classes[x].size() > classes[best].size()) best = x;
    }
    const std::vector<std::size_t>& majority = classes[best];
    REQUIRE(majority.size() >= 2);

    const double radius =
        std::max(dmcq::critical_radius(k, pc.size()), 1.0);
    bool found = false;
    for (std::size_t i = 0; i < majority.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < majority.size() && !found; ++j) {
        found = dmcq::dist(pc.letter(majority[i]).posterior,
                           pc.letter(majority[j]).posterior) <= radius;
      }
    }
    CHECK(found);
  }
}
