#pragma once

#include <cstddef>

namespace bohr {

/// Result of summing an infinite series.
///
/// `tail_bound` bounds |value - exact sum|: the certified truncation error
/// plus an allowance for floating-point rounding in the evaluated terms.
struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::size_t terms_used = 0;
};

/// Hard cap on the number of terms any series evaluator will sum.
inline constexpr std::size_t kMaxSeriesTerms = 1'000'000;

}  // namespace bohr
