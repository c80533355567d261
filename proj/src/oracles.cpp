#include "dmcq/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dmcq/info.hpp"

namespace dmcq {

PartitionEnumerator::PartitionEnumerator(std::size_t n, std::size_t max_blocks)
    : n_(n), max_blocks_(std::min(max_blocks, n)) {
  if (n == 0) throw std::invalid_argument("cannot partition an empty set");
  if (max_blocks == 0) {
    throw std::invalid_argument("need at least one block");
  }
  if (n > 12) {
    throw guard_error("set of size " + std::to_string(n) +
                      " exceeds the exhaustive partition limit of 12 elements");
  }
  code_.assign(n_, 0);
  prefix_max_.assign(n_, 0);
}

bool PartitionEnumerator::advance() {
  if (done_) return false;
  if (!started_) {
    started_ = true;  // all-zeros string: the single-block partition
    return true;
  }
  // Restricted-growth successor: bump the rightmost position that can grow.
  const std::uint32_t cap = static_cast<std::uint32_t>(max_blocks_) - 1;
  for (std::size_t i = n_; i-- > 1;) {
    const std::uint32_t limit = std::min(prefix_max_[i - 1] + 1, cap);
    if (code_[i] < limit) {
      ++code_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], code_[i]);
      for (std::size_t j = i + 1; j < n_; ++j) {
        code_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  done_ = true;
  return false;
}

bool PartitionEnumerator::next(Partition& out) {
  if (!advance()) return false;
  const std::size_t blocks = prefix_max_[n_ - 1] + 1;
  out.blocks.assign(blocks, {});
  for (std::size_t y = 0; y < n_; ++y) {
    out.blocks[code_[y]].push_back(static_cast<std::uint32_t>(y));
  }
  return true;
}

namespace {

double clamp_tiny_negative(double v) {
  return (v < 0.0 && v >= -kLossClampTol) ? 0.0 : v;
}

Partition partition_from_code(const std::vector<std::uint32_t>& code) {
  std::uint32_t blocks = 0;
  for (std::uint32_t c : code) blocks = std::max(blocks, c + 1);
  Partition p;
  p.blocks.assign(blocks, {});
  for (std::size_t y = 0; y < code.size(); ++y) {
    p.blocks[code[y]].push_back(static_cast<std::uint32_t>(y));
  }
  return p;
}

}  // namespace

OracleResult brute_force_optimal(const PosteriorChannel& pc,
                                 std::size_t target) {
  const std::size_t n = pc.size();
  const std::size_t k = pc.num_inputs();
  if (target == 0) {
    throw std::invalid_argument("target block count must be >= 1");
  }
  if (n > 12) {
    throw guard_error("output alphabet of size " + std::to_string(n) +
                      " exceeds the exhaustive-search limit of 12 letters");
  }

  // Degrading loss of a partition: sum over blocks of the block's
  // conditional-entropy contribution, minus the unmerged baseline.
  std::vector<double> letter_cost(n);
  for (std::size_t y = 0; y < n; ++y) {
    const OutputLetter& letter = pc.letter(y);
    letter_cost[y] = letter.mass * entropy_sum(letter.posterior);
  }
  KahanSum base_sum;
  for (double c : letter_cost) base_sum.add(c);
  const double base = base_sum.value();

  const std::size_t cap = std::min(target, n);
  std::vector<double> block_mass(cap);
  std::vector<double> block_joint(cap * k);

  PartitionEnumerator rgs(n, cap);
  double best_loss = 0.0;
  std::vector<std::uint32_t> best_code;
  bool have = false;
  while (rgs.advance()) {
    const std::vector<std::uint32_t>& code = rgs.code();
    std::uint32_t blocks = 0;
    for (std::uint32_t c : code) blocks = std::max(blocks, c + 1);
    std::fill(block_mass.begin(), block_mass.begin() + blocks, 0.0);
    std::fill(block_joint.begin(), block_joint.begin() + blocks * k, 0.0);
    for (std::size_t y = 0; y < n; ++y) {
      const OutputLetter& letter = pc.letter(y);
      block_mass[code[y]] += letter.mass;
      double* joint = block_joint.data() + code[y] * k;
      for (std::size_t x = 0; x < k; ++x) joint[x] += letter.joint[x];
    }
    KahanSum merged_sum;
    for (std::uint32_t b = 0; b < blocks; ++b) {
      const double* joint = block_joint.data() + b * k;
      KahanSum h;
      for (std::size_t x = 0; x < k; ++x) {
        h.add(entropy_term(joint[x] / block_mass[b]));
      }
      merged_sum.add(block_mass[b] * h.value());
    }
    const double loss = merged_sum.value() - base;
    if (!have || loss < best_loss) {
      best_loss = loss;
      best_code.assign(code.begin(), code.end());
      have = true;
    }
  }
  return OracleResult{partition_from_code(best_code),
                      clamp_tiny_negative(best_loss)};
}

OracleResult optimal_binary_dp(const PosteriorChannel& pc, std::size_t target) {
  if (pc.num_inputs() != 2) {
    throw std::invalid_argument(
        "optimal_binary_dp: requires a binary input alphabet");
  }
  if (target == 0) {
    throw std::invalid_argument("target block count must be >= 1");
  }
  const std::size_t n = pc.size();
  if (target >= n) {
    Partition singletons;
    singletons.blocks.resize(n);
    for (std::size_t y = 0; y < n; ++y) {
      singletons.blocks[y] = {static_cast<std::uint32_t>(y)};
    }
    return OracleResult{std::move(singletons), 0.0};
  }

  // Sort letters by their posterior for input 0; some optimal quantizer is
  // contiguous in this order.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const double pa = pc.letter(a).posterior[0];
    const double pb = pc.letter(b).posterior[0];
    if (pa != pb) return pa < pb;
    return pc.letter(a).provenance.front() < pc.letter(b).provenance.front();
  });

  std::vector<double> prefix_mass(n + 1, 0.0);
  std::vector<double> prefix_j0(n + 1, 0.0);
  std::vector<double> prefix_j1(n + 1, 0.0);
  std::vector<double> prefix_cost(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const OutputLetter& letter = pc.letter(order[i]);
    prefix_mass[i + 1] = prefix_mass[i] + letter.mass;
    prefix_j0[i + 1] = prefix_j0[i] + letter.joint[0];
    prefix_j1[i + 1] = prefix_j1[i] + letter.joint[1];
    prefix_cost[i + 1] =
        prefix_cost[i] + letter.mass * entropy_sum(letter.posterior);
  }
  // Loss of merging sorted letters [i, j) into one block.
  auto segment_cost = [&](std::size_t i, std::size_t j) {
    const double mass = prefix_mass[j] - prefix_mass[i];
    const double j0 = prefix_j0[j] - prefix_j0[i];
    const double j1 = prefix_j1[j] - prefix_j1[i];
    const double merged =
        mass * (entropy_term(j0 / mass) + entropy_term(j1 / mass));
    return merged - (prefix_cost[j] - prefix_cost[i]);
  };

  const std::size_t cap = std::min(target, n);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(cap + 1,
                                        std::vector<double>(n + 1, kInf));
  std::vector<std::vector<std::uint32_t>> cut(
      cap + 1, std::vector<std::uint32_t>(n + 1, 0));
  for (std::size_t j = 1; j <= n; ++j) best[1][j] = segment_cost(0, j);
  for (std::size_t blocks = 2; blocks <= cap; ++blocks) {
    for (std::size_t j = blocks; j <= n; ++j) {
      for (std::size_t i = blocks - 1; i < j; ++i) {
        const double cost = best[blocks - 1][i] + segment_cost(i, j);
        if (cost < best[blocks][j]) {
          best[blocks][j] = cost;
          cut[blocks][j] = static_cast<std::uint32_t>(i);
        }
      }
    }
  }

  std::size_t best_blocks = 1;
  for (std::size_t blocks = 2; blocks <= cap; ++blocks) {
    if (best[blocks][n] < best[best_blocks][n]) best_blocks = blocks;
  }

  Partition partition;
  partition.blocks.assign(best_blocks, {});
  std::size_t end = n;
  for (std::size_t blocks = best_blocks; blocks >= 1; --blocks) {
    const std::size_t begin = blocks == 1 ? 0 : cut[blocks][end];
    auto& block = partition.blocks[blocks - 1];
    for (std::size_t i = begin; i < end; ++i) block.push_back(order[i]);
    std::sort(block.begin(), block.end());
    end = begin;
  }
  std::sort(partition.blocks.begin(), partition.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  return OracleResult{std::move(partition),
                      clamp_tiny_negative(best[best_blocks][n])};
}

}  // namespace dmcq
