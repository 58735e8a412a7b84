#pragma once

#include <functional>
#include <utility>

#include "bohr/series_value.hpp"

namespace bohr {

/// Lazily generated coefficient magnitudes |aₙ| (or |aₙ| + |bₙ|) with the
/// decay fact the tail bounds rely on: |aₙ| is nonincreasing for
/// n ≥ nonincreasing_from.
struct CoefficientSequence {
  std::function<double(int n)> magnitude;
  int nonincreasing_from = 1;

  double operator()(int n) const { return magnitude(n); }
};

/// B_k(f, r) = Σ_{n≥k} |aₙ| rⁿ.
SeriesValue bohr_tail_sum(const CoefficientSequence& seq, int k, double r, double tol);

/// Σ_{n≥k} |aₙ|² r^{2n}; k = 1 gives ‖f₀‖²_r and k = 2 gives ‖f₁‖²_r.
SeriesValue coefficient_norm_sq(const CoefficientSequence& seq, int k, double r, double tol);

/// A(f₀, r) = (1/(1+|a₀|) + r/(1−r)) ‖f₀‖²_r.
SeriesValue area_augment(const CoefficientSequence& seq, double r, double tol);

/// S_r/π = Σ_{n≥1} n |aₙ|² r^{2n}.
SeriesValue area_over_pi(const CoefficientSequence& seq, double r, double tol);

}  // namespace bohr
