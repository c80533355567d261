#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dmcq {

// Tolerance applied when validating that probability vectors sum to one.
inline constexpr double kSumTol = 1e-9;

// Merge losses in [-kLossClampTol, 0) are rounding residue and are clamped
// to zero in reported traces; anything more negative is a hard error.
inline constexpr double kLossClampTol = 1e-12;

// Thrown when a size guard refuses an exhaustive computation.
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an emitted result would contradict a proven bound
// (treated as an implementation-bug signal, not a recoverable state).
class bound_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Neumaier-compensated accumulator. Entropy sums run over alphabets with
// tens of thousands of letters, so plain summation drifts too much.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace dmcq
