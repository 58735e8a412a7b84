#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace bohr::detail {

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

// Neumaier's variant of Kahan summation. Terms must be added in a fixed
// order for results to be bit-reproducible.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += std::abs(x);
    ++count_;
  }

  double value() const { return sum_ + comp_; }
  double abs_sum() const { return abs_sum_; }
  std::size_t count() const { return count_; }

  // Bound on the rounding error of value(), assuming each term carries a
  // relative evaluation error of at most `term_ulps` unit roundoffs.
  double rounding_bound(double term_ulps = 8.0) const {
    const double n = static_cast<double>(count_);
    return term_ulps * kUnitRoundoff * abs_sum_ + 2.0 * kUnitRoundoff * std::abs(value()) +
           2.0 * n * kUnitRoundoff * kUnitRoundoff * abs_sum_;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_sum_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace bohr::detail
