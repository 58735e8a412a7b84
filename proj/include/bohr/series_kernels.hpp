#pragma once

#include <optional>

#include "bohr/phi_family.hpp"
#include "bohr/series_value.hpp"

namespace bohr {

/// Denominators of the extremal coefficient bounds.
///
/// PH0:     n(n−1)              (class 𝒫⁰_ℋ(M), scaled by 2M by callers)
/// WH0(α):  αn² + (1−α)n        (class 𝒲⁰_ℋ(α), scaled by 2 by callers)
struct CoefficientWeight {
  enum class Kind { PH0, WH0 };
  Kind kind = Kind::PH0;
  double alpha = 0.0;

  static CoefficientWeight ph0() { return {Kind::PH0, 0.0}; }
  static CoefficientWeight wh0(double alpha);

  double denominator(int n) const;
};

struct WeightedSumSpec {
  PhiFamily family = PhiFamily::power();
  CoefficientWeight weight;
  double r = 0.0;
  double tol = 1e-12;
  /// Confirm a closed form against direct truncation when both are available.
  bool cross_check = true;
};

/// Σ_{n≥2} φₙ(r)/w(n), without the 2M or 2 prefactor.
///
/// Uses a closed form when one is known for the family/weight pair and
/// confirms it against truncation; otherwise truncates with a ratio tail
/// bound. Throws ToleranceUnreachable when the series diverges at r = 1.
SeriesValue sum_weighted(const WeightedSumSpec& spec);

/// Direct truncation only (the independent path used by sum_weighted).
SeriesValue sum_weighted_truncated(const WeightedSumSpec& spec);

/// The closed form for the spec, if the family/weight pair has one.
std::optional<SeriesValue> sum_weighted_closed_form(const WeightedSumSpec& spec);

/// Σ_{n≥2} φₙ'(r)/w(n) for r in [0, 1).
SeriesValue sum_weighted_derivative(const WeightedSumSpec& spec);

/// Σ_{n≥2} φₙ(1)/w(n). Returns +inf for known divergent pairs. When neither a
/// closed form nor divergence is known, returns the partial sum through
/// n = 10⁵, which is a lower bound because every term is nonnegative.
double weighted_sum_at_one(const PhiFamily& family, const CoefficientWeight& weight);

enum class WeightVariant { Plain, Shifted };  ///< n^k versus (n+1)^k

/// Σ_{n≥2} g(n) rⁿ/(n(n−1)) with g(n) = n^k or (n+1)^k, k ∈ {0,1,2,3}.
/// k = 0 is the base sum r + (1−r) ln(1−r) for both variants.
double closed_form_PH0(int k, WeightVariant variant, double r);

/// Σ_{n≥2} n^k rⁿ/(αn² + (1−α)n), k ∈ {0,1,2,3}, through ₂F₁ for α > 0.
/// Throws ParameterError when no closed form applies (e.g. k = 0, α > 0.9).
SeriesValue closed_form_WH0(int k, double alpha, double r, double tol);

/// Σ_{n≥2} (−1)ⁿ⁻¹/(n(n−1)) = 1 − ln 4.
double boundary_constant_PH0();

/// Σ_{n≥2} (−1)ⁿ⁻¹/(αn² + (1−α)n) = (−1 + H(α) + ln 2)/(1−α) for α in [0, 1);
/// α = 1 gives π²/12 − 1.
double boundary_constant_WH0(double alpha);

/// Closed-form pieces of the Bohr functionals for f*ₐ(z) = (a+z)/(1+az).
enum class MoebiusPart {
  B2,        ///< B₂(f, r) = (1−a²) a r²/(1−ar)
  ATerm,     ///< A(f₀, r) = (1+ar)/((1+a)(1−r)) · (1−a²)² r²/(1−a²r²)
  SrOverPi,  ///< S_r/π = (1−a²)² r²/(1−a²r²)²
  SrRatio,   ///< S_r/(π−S_r) = (1−a²)² r²/((1−r²)(1−a⁴r²))
};

double moebius_series(double a, double r, MoebiusPart part);

}  // namespace bohr
