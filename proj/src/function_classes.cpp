#include "bohr/function_classes.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "bohr/detail/compensated_sum.hpp"
#include "bohr/errors.hpp"
#include "bohr/series_kernels.hpp"

namespace bohr {

namespace {

// Absolute error target for the alternating envelope sums.
constexpr double kGrowthTol = 1e-17;

void check_unit_interval(double r, const char* what) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError(fmt::format("{}: r = {} outside [0, 1]", what, r));
}

void check_alpha(double alpha, const char* what) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError(fmt::format("{}: alpha = {} outside [0, 1]", what, alpha));
  }
}

// Σ_{n≥2} (−1)^{n−1} rⁿ / w(n) for increasing w. Alternating with decreasing
// magnitudes, so the first omitted term bounds the error.
double alternating_sum(const CoefficientWeight& weight, double r) {
  detail::CompensatedSum sum;
  double rn = r;
  for (int n = 2; n <= static_cast<int>(kMaxSeriesTerms); ++n) {
    rn *= r;
    const double t = rn / weight.denominator(n);
    if (t <= kGrowthTol) return sum.value();
    sum.add(n % 2 == 0 ? -t : t);
  }
  throw ToleranceUnreachable("alternating_sum: term cap reached");
}

}  // namespace

MoebiusExtremal MoebiusExtremal::make(double a) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError(fmt::format("Moebius extremal: a = {} outside [0, 1)", a));
  return {a};
}

double MoebiusExtremal::coeff(int n) const {
  if (n < 0) throw DomainError("coeff: n must be >= 0");
  if (n == 0) return a;
  return (1.0 - a * a) * std::pow(a, n - 1);
}

double MoebiusExtremal::value(double r) const { return (a + r) / (1.0 + a * r); }

double MoebiusExtremal::derivative(double r) const {
  const double d = 1.0 + a * r;
  return (1.0 - a * a) / (d * d);
}

double MoebiusExtremal::majorant(double r) const {
  return a + (1.0 - a * a) * r / (1.0 - a * r);
}

CoefficientSequence MoebiusExtremal::coefficients() const {
  const MoebiusExtremal self = *this;
  return {[self](int n) { return self.coeff(n); }, 1};
}

HarmonicPH0Extremal HarmonicPH0Extremal::make(double M) {
  if (!(M > 0.0) || !std::isfinite(M)) throw DomainError(fmt::format("PH0 extremal: M = {} must be > 0", M));
  return {M};
}

double HarmonicPH0Extremal::coeff(int n) const {
  if (n < 0) throw DomainError("coeff: n must be >= 0");
  if (n == 0) return 0.0;
  if (n == 1) return 1.0;
  const double dn = static_cast<double>(n);
  return 2.0 * M / (dn * (dn - 1.0));
}

CoefficientSequence HarmonicPH0Extremal::coefficients() const {
  const HarmonicPH0Extremal self = *this;
  return {[self](int n) { return self.coeff(n); }, 2};
}

HarmonicWH0Extremal HarmonicWH0Extremal::make(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError(fmt::format("WH0 extremal: alpha = {} must be >= 0", alpha));
  }
  return {alpha};
}

double HarmonicWH0Extremal::coeff(int n) const {
  if (n < 0) throw DomainError("coeff: n must be >= 0");
  if (n == 0) return 0.0;
  if (n == 1) return 1.0;
  return 2.0 / CoefficientWeight::wh0(alpha).denominator(n);
}

CoefficientSequence HarmonicWH0Extremal::coefficients() const {
  const HarmonicWH0Extremal self = *this;
  return {[self](int n) { return self.coeff(n); }, 2};
}

double growth_PH0(double M, double r, GrowthSide side) {
  check_unit_interval(r, "growth_PH0");
  if (side == GrowthSide::Lower) {
    if (r == 1.0) return 1.0 + 2.0 * M * boundary_constant_PH0();
    return r + 2.0 * M * (r - (1.0 + r) * std::log1p(r));
  }
  if (r == 1.0) return 1.0 + 2.0 * M;
  return r + 2.0 * M * (r + (1.0 - r) * std::log1p(-r));
}

double growth_WH0(double alpha, double r, GrowthSide side) {
  check_unit_interval(r, "growth_WH0");
  check_alpha(alpha, "growth_WH0");
  const auto weight = CoefficientWeight::wh0(alpha);
  if (side == GrowthSide::Lower) {
    if (r == 1.0) return 1.0 + 2.0 * boundary_constant_WH0(alpha);
    return r + 2.0 * alternating_sum(weight, r);
  }
  if (r == 0.0) return 0.0;
  WeightedSumSpec spec;
  spec.weight = weight;
  spec.r = r;
  return r + 2.0 * sum_weighted(spec).value;
}

double admissible_M_bound(const PhiFamily& family) {
  detail::CompensatedSum at_zero;
  for (int n = 2; n <= 100'000; ++n) {
    const double phi = eval_phi(family, n, 0.0);
    if (phi != 0.0) at_zero.add(phi / CoefficientWeight::ph0().denominator(n));
  }
  const double denom = at_zero.value() - boundary_constant_PH0();
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * denom);
}

double dist_lower_bound(const HarmonicExtremal& model) {
  if (const auto* ph0 = std::get_if<HarmonicPH0Extremal>(&model)) {
    return growth_PH0(ph0->M, 1.0, GrowthSide::Lower);
  }
  return growth_WH0(std::get<HarmonicWH0Extremal>(model).alpha, 1.0, GrowthSide::Lower);
}

}  // namespace bohr
