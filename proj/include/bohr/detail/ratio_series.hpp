#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "bohr/detail/compensated_sum.hpp"
#include "bohr/errors.hpp"
#include "bohr/series_value.hpp"

namespace bohr::detail {

// Sums Σ_{n≥start} term(n) for nonnegative terms.
//
// `ratio_bound(n, t_n, t_{n-1})` must return ρ with term(m+1) ≤ ρ·term(m) for
// every m ≥ n, or +inf when no such bound is known yet. Summation stops once
// the remainder bound t_n ρ/(1-ρ) drops to tol/2.
template <class Term, class RatioBound>
SeriesValue sum_with_ratio_bound(int start, Term&& term, RatioBound&& ratio_bound, double tol,
                                 const char* what, double term_ulps = 8.0) {
  CompensatedSum sum;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < kMaxSeriesTerms; ++i) {
    const int n = start + static_cast<int>(i);
    const double t = term(n);
    sum.add(t);
    double truncation = std::numeric_limits<double>::infinity();
    const double rho = ratio_bound(n, t, previous);
    if (rho < 1.0) truncation = t == 0.0 ? 0.0 : t * rho / (1.0 - rho);
    if (truncation <= 0.5 * tol) {
      SeriesValue out;
      out.value = sum.value();
      out.tail_bound = truncation + sum.rounding_bound(term_ulps);
      out.terms_used = i + 1;
      if (out.tail_bound > tol) {
        throw ToleranceUnreachable(std::string(what) + ": tolerance below the rounding floor");
      }
      return out;
    }
    previous = t;
  }
  throw ToleranceUnreachable(std::string(what) + ": term cap exceeded");
}

}  // namespace bohr::detail
