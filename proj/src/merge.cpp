#include "dmcq/merge.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "dmcq/info.hpp"

namespace dmcq {

double merge_loss(double pi_a, std::span<const double> alpha, double pi_b,
                  std::span<const double> beta) {
  if (alpha.size() != beta.size()) {
    throw std::invalid_argument("merge_loss: posterior dimension mismatch");
  }
  if (!(pi_a > 0.0) || !(pi_b > 0.0)) {
    throw std::invalid_argument("merge_loss: letter masses must be positive");
  }
  const double pi_ab = pi_a + pi_b;
  KahanSum s;
  for (std::size_t x = 0; x < alpha.size(); ++x) {
    const double ax = alpha[x];
    const double bx = beta[x];
    if (ax == bx) continue;  // the mixed posterior equals both; exact zero
    const double gx = (pi_a * ax + pi_b * bx) / pi_ab;
    s.add(pi_ab * entropy_term(gx) -
          (pi_a * entropy_term(ax) + pi_b * entropy_term(bx)));
  }
  return s.value();
}

double merge_loss(const PosteriorChannel& pc, std::size_t a, std::size_t b) {
  if (a >= pc.size() || b >= pc.size()) {
    throw std::out_of_range("merge_loss: letter index out of range");
  }
  if (a == b) {
    throw std::invalid_argument("merge_loss: cannot merge a letter with itself");
  }
  const OutputLetter& la = pc.letter(a);
  const OutputLetter& lb = pc.letter(b);
  return merge_loss(la.mass, la.posterior, lb.mass, lb.posterior);
}

OutputLetter merge_letters(const OutputLetter& a, const OutputLetter& b) {
  if (a.joint.size() != b.joint.size()) {
    throw std::invalid_argument("merge_letters: dimension mismatch");
  }
  OutputLetter out;
  out.mass = a.mass + b.mass;
  out.joint.resize(a.joint.size());
  out.posterior.resize(a.joint.size());
  for (std::size_t x = 0; x < a.joint.size(); ++x) {
    out.joint[x] = a.joint[x] + b.joint[x];
    // a coordinate the parents agree on mixes to itself, exactly; this keeps
    // chains of duplicate letters merging at exactly zero loss
    out.posterior[x] = a.posterior[x] == b.posterior[x]
                           ? a.posterior[x]
                           : out.joint[x] / out.mass;
  }
  out.provenance.resize(a.provenance.size() + b.provenance.size());
  std::merge(a.provenance.begin(), a.provenance.end(), b.provenance.begin(),
             b.provenance.end(), out.provenance.begin());
  return out;
}

MergeCandidate cheapest_pair(const PosteriorChannel& pc) {
  const std::size_t n = pc.size();
  if (n < 2) {
    throw std::invalid_argument("cheapest_pair: need at least two letters");
  }
  MergeCandidate best;
  bool have = false;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double loss = merge_loss(pc, a, b);
      if (!have || loss < best.loss) {
        best = {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                loss, 0, 0};
        have = true;
      }
    }
  }
  return best;
}

namespace {

struct Slot {
  bool alive = true;
  std::uint32_t stamp = 0;
  double mass = 0.0;
  std::vector<double> joint;
  std::vector<double> posterior;
  std::vector<double> eta_post;  // entropy_term of each posterior entry
  std::vector<std::uint32_t> prov;
};

struct Cand {
  double loss;
  std::uint32_t a, b;  // slot ids, a < b; slot order is provenance-key order
  std::uint32_t stamp_a, stamp_b;
};

// Min-queue: pop the smallest loss, ties toward the smaller index pair.
struct PopsLater {
  bool operator()(const Cand& x, const Cand& y) const {
    if (x.loss != y.loss) return x.loss > y.loss;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  }
};

// Binary min-heap of candidates with bulk removal of stale entries. Popping
// stale entries one by one sifts through a heap dominated by garbage (the
// queue holds O(|Y|^2) entries while only alive^2/2 are current), so once the
// stale fraction grows the heap is swept with one linear pass and rebuilt.
// The sweep never touches valid entries' relative order of extraction: the
// comparator is a total order over distinct pairs.
class CandidateQueue {
 public:
  void fill(std::vector<Cand>&& initial) {
    heap_ = std::move(initial);
    std::make_heap(heap_.begin(), heap_.end(), PopsLater{});
  }

  void push(const Cand& c) {
    heap_.push_back(c);
    std::push_heap(heap_.begin(), heap_.end(), PopsLater{});
  }

  Cand pop() {
    std::pop_heap(heap_.begin(), heap_.end(), PopsLater{});
    Cand c = heap_.back();
    heap_.pop_back();
    return c;
  }

  template <typename Valid>
  void compact_if_bloated(std::size_t valid_pairs, Valid&& is_valid) {
    if (heap_.size() < kMinSweepSize) return;
    if (heap_.size() <= valid_pairs + valid_pairs / 2) return;
    heap_.erase(std::remove_if(heap_.begin(), heap_.end(),
                               [&](const Cand& c) { return !is_valid(c); }),
                heap_.end());
    std::make_heap(heap_.begin(), heap_.end(), PopsLater{});
  }

 private:
  static constexpr std::size_t kMinSweepSize = 1u << 16;
  std::vector<Cand> heap_;
};

// Bit-for-bit the same arithmetic as the public merge_loss, with the
// entropy terms of both posteriors read from the slot caches.
double loss_between(const Slot& sa, const Slot& sb) {
  const double pi_ab = sa.mass + sb.mass;
  KahanSum s;
  for (std::size_t x = 0; x < sa.posterior.size(); ++x) {
    const double ax = sa.posterior[x];
    const double bx = sb.posterior[x];
    if (ax == bx) continue;
    const double gx = (sa.mass * ax + sb.mass * bx) / pi_ab;
    s.add(pi_ab * entropy_term(gx) -
          (sa.mass * sa.eta_post[x] + sb.mass * sb.eta_post[x]));
  }
  return s.value();
}

void scan_initial_pairs(const std::vector<Slot>& slots, std::vector<Cand>& out) {
  const std::size_t n = slots.size();
  auto base = [n](std::size_t a) { return a * (n - 1) - a * (a - 1) / 2; };
  auto scan_rows = [&](std::size_t first, std::size_t stride) {
    for (std::size_t a = first; a + 1 < n; a += stride) {
      Cand* cell = out.data() + base(a);
      for (std::size_t b = a + 1; b < n; ++b, ++cell) {
        *cell = {loss_between(slots[a], slots[b]),
                 static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                 0, 0};
      }
    }
  };

  const std::size_t workers =
      n >= 512 ? std::max<std::size_t>(1, std::thread::hardware_concurrency())
               : 1;
  if (workers <= 1) {
    scan_rows(0, 1);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back(scan_rows, t, workers);
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace

DegradeReport greedy_degrade(const PosteriorChannel& pc, std::size_t target) {
  if (target == 0) {
    throw std::invalid_argument("greedy_degrade: target size must be >= 1");
  }
  const std::size_t n = pc.size();
  if (target >= n) {
    return DegradeReport{pc, pc.to_map(), 0.0, {}};
  }

  std::vector<Slot> slots(n);
  for (std::size_t i = 0; i < n; ++i) {
    const OutputLetter& letter = pc.letter(i);
    Slot& s = slots[i];
    s.mass = letter.mass;
    s.joint = letter.joint;
    s.posterior = letter.posterior;
    s.prov = letter.provenance;
    s.eta_post.resize(s.posterior.size());
    for (std::size_t x = 0; x < s.posterior.size(); ++x) {
      s.eta_post[x] = entropy_term(s.posterior[x]);
    }
  }

  std::vector<Cand> initial(n * (n - 1) / 2);
  scan_initial_pairs(slots, initial);
  CandidateQueue queue;
  queue.fill(std::move(initial));

  const auto is_current = [&slots](const Cand& c) {
    return slots[c.a].alive && slots[c.b].alive &&
           slots[c.a].stamp == c.stamp_a && slots[c.b].stamp == c.stamp_b;
  };

  std::size_t alive = n;
  KahanSum total;
  std::vector<DegradeStep> steps;
  steps.reserve(n - target);

  while (alive > target) {
    queue.compact_if_bloated(alive * (alive - 1) / 2, is_current);
    Cand c;
    for (;;) {
      // Cannot run dry: every alive pair was pushed with current stamps.
      c = queue.pop();
      if (is_current(c)) break;
    }
    if (c.loss < -kLossClampTol) {
      throw std::logic_error(
          "greedy_degrade: merge loss below -1e-12; numerical invariant broken");
    }
    const double recorded = c.loss < 0.0 ? 0.0 : c.loss;
    steps.push_back({slots[c.a].prov.front(), slots[c.b].prov.front(), recorded,
                     static_cast<std::uint32_t>(alive)});
    total.add(recorded);

    Slot& sa = slots[c.a];
    Slot& sb = slots[c.b];
    sa.mass += sb.mass;
    for (std::size_t x = 0; x < sa.joint.size(); ++x) {
      sa.joint[x] += sb.joint[x];
      if (sa.posterior[x] != sb.posterior[x]) {
        sa.posterior[x] = sa.joint[x] / sa.mass;
        sa.eta_post[x] = entropy_term(sa.posterior[x]);
      }
    }
    std::vector<std::uint32_t> merged_prov(sa.prov.size() + sb.prov.size());
    std::merge(sa.prov.begin(), sa.prov.end(), sb.prov.begin(), sb.prov.end(),
               merged_prov.begin());
    sa.prov = std::move(merged_prov);
    ++sa.stamp;
    sb.alive = false;
    --alive;

    for (std::uint32_t s2 = 0; s2 < n; ++s2) {
      if (!slots[s2].alive || s2 == c.a) continue;
      const std::uint32_t lo = std::min(c.a, s2);
      const std::uint32_t hi = std::max(c.a, s2);
      queue.push({loss_between(slots[lo], slots[hi]), lo, hi, slots[lo].stamp,
                  slots[hi].stamp});
    }
  }

  std::vector<OutputLetter> letters;
  letters.reserve(alive);
  for (Slot& s : slots) {
    if (!s.alive) continue;
    OutputLetter letter;
    letter.mass = s.mass;
    letter.joint = std::move(s.joint);
    letter.posterior = std::move(s.posterior);
    letter.provenance = std::move(s.prov);
    letters.push_back(std::move(letter));
  }
  PosteriorChannel result = PosteriorChannel::from_letters(
      pc.input_probs(), std::move(letters), pc.dropped_outputs());
  DegradingMap map = result.to_map();
  return DegradeReport{std::move(result), std::move(map), total.value(),
                       std::move(steps)};
}

}  // namespace dmcq
