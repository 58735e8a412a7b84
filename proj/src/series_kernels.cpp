#include "bohr/series_kernels.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "bohr/coefficients.hpp"
#include "bohr/detail/compensated_sum.hpp"
#include "bohr/detail/ratio_series.hpp"
#include "bohr/errors.hpp"
#include "bohr/specfun.hpp"

namespace bohr {

namespace {

using detail::kUnitRoundoff;
using std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Above this class parameter the (1−α) division in the WH0 power closed
// form costs more than two digits; truncation is used instead.
constexpr double kWh0PowerClosedFormMaxAlpha = 0.9;

void validate(const WeightedSumSpec& spec) {
  if (!(spec.r >= 0.0 && spec.r <= 1.0)) {
    throw DomainError(fmt::format("weighted sum: r = {} outside [0, 1]", spec.r));
  }
  if (!(spec.tol > 0.0)) throw DomainError("weighted sum: tol must be positive");
}

// Growth exponent k with φₙ = O(n^k rⁿ), or NaN for custom families.
double growth_exponent(const PhiFamily& family) {
  switch (family.kind()) {
    case PhiFamily::Kind::Power:
      return 0.0;
    case PhiFamily::Kind::PolyWeight:
    case PhiFamily::Kind::ShiftWeight:
      return family.exponent();
    case PhiFamily::Kind::Custom:
      break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Ratio bound for terms g(n) rⁿ⁻ˢʰⁱᶠᵗ / w(n) with w nondecreasing:
// t_{m+1}/t_m ≤ r (1 + 1/n)^k for all m ≥ n.
auto known_ratio_bound(double r, double k) {
  return [r, k](int n, double, double) {
    return r * std::pow(1.0 + 1.0 / static_cast<double>(n), k);
  };
}

// Custom families: the observed ratio, assuming term ratios are eventually
// nonincreasing. Not certified.
auto observed_ratio_bound() {
  return [](int, double t, double previous) {
    if (t == 0.0 && previous == 0.0) return 0.0;
    if (!(previous > 0.0)) return kInf;
    return t / previous;
  };
}

SeriesValue truncate(const WeightedSumSpec& spec, bool derivative) {
  const auto& family = spec.family;
  const auto weight = spec.weight;
  const double r = spec.r;
  auto term = [&](int n) {
    const double phi = derivative ? eval_dphi(family, n, r) : eval_phi(family, n, r);
    return phi / weight.denominator(n);
  };
  const char* what = derivative ? "sum_weighted_derivative" : "sum_weighted";
  if (family.has_ratio_bound()) {
    const double k = growth_exponent(family) + (derivative ? 1.0 : 0.0);
    return detail::sum_with_ratio_bound(2, term, known_ratio_bound(r, k), spec.tol, what);
  }
  return detail::sum_with_ratio_bound(2, term, observed_ratio_bound(), spec.tol, what);
}

SeriesValue exact_value(double value, double scale) {
  SeriesValue out;
  out.value = value;
  out.tail_bound = 32.0 * kUnitRoundoff * std::max(std::abs(value), scale);
  out.terms_used = 0;
  return out;
}

// Tolerance for a series that enters a result multiplied by `scale`. Half of
// the budget is left for rounding in the surrounding arithmetic.
double inner_tol(double tol, double scale) {
  return scale > 1.0 ? 0.5 * tol / scale : 0.5 * tol;
}

// Integer exponent of a closed-form family, or -1.
int closed_form_exponent(const PhiFamily& family) {
  if (family.kind() == PhiFamily::Kind::Custom || !family.has_integer_exponent()) return -1;
  return static_cast<int>(family.exponent());
}

}  // namespace

CoefficientWeight CoefficientWeight::wh0(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("WH0 weight: alpha must be >= 0");
  }
  return {Kind::WH0, alpha};
}

double CoefficientWeight::denominator(int n) const {
  const double dn = static_cast<double>(n);
  if (kind == Kind::PH0) return dn * (dn - 1.0);
  return dn * (alpha * dn + 1.0 - alpha);
}

double closed_form_PH0(int k, WeightVariant variant, double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw DomainError(fmt::format("closed_form_PH0: r = {} outside [0, 1)", r));
  }
  const double log1mr = std::log1p(-r);
  const double q = 1.0 - r;
  if (k == 0) return r + q * log1mr;
  if (variant == WeightVariant::Plain) {
    switch (k) {
      case 1:
        return -r * log1mr;
      case 2:
        return r * (r - q * log1mr) / q;
      case 3:
        return r * ((3.0 - 2.0 * r) * r / (q * q) - log1mr);
      default:
        break;
    }
  } else {
    switch (k) {
      case 1:
        return r + (1.0 - 2.0 * r) * log1mr;
      case 2:
        return (r + (1.0 - 5.0 * r + 4.0 * r * r) * log1mr) / q;
      case 3:
        return (r + 4.0 * r * r - 4.0 * r * r * r + q * q * (1.0 - 8.0 * r) * log1mr) / (q * q);
      default:
        break;
    }
  }
  throw ParameterError(fmt::format("closed_form_PH0: exponent {} not in {{0,1,2,3}}", k));
}

namespace {

SeriesValue closed_form_WH0_unchecked(int k, double alpha, double r, double tol) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw DomainError(fmt::format("closed_form_WH0: r = {} outside [0, 1)", r));
  }
  if (!(alpha >= 0.0)) throw DomainError("closed_form_WH0: alpha must be >= 0");
  if (k < 0 || k > 3) {
    throw ParameterError(fmt::format("closed_form_WH0: exponent {} not in {{0,1,2,3}}", k));
  }
  const double q = 1.0 - r;
  const double log1mr = std::log1p(-r);
  const double r2 = r * r;

  if (alpha == 0.0) {
    // Weight n: Σ n^{k-1} rⁿ from n = 2.
    switch (k) {
      case 0:
        return exact_value(-log1mr - r, std::abs(log1mr));
      case 1:
        return exact_value(r2 / q, 0.0);
      case 2:
        return exact_value(r / (q * q) - r, r / (q * q));
      case 3:
        return exact_value(r * (1.0 + r) / (q * q * q) - r, r * (1.0 + r) / (q * q * q));
    }
  }

  const double b = 1.0 + 1.0 / alpha;
  switch (k) {
    case 0: {
      if (alpha > kWh0PowerClosedFormMaxAlpha) break;
      // 1/(n(αn+1−α)) = (1/n − α/(αn+1−α))/(1−α)
      const double scale = alpha * r2 / (1.0 + alpha);
      const auto f = specfun::gauss_2f1(1.0, b, b + 1.0, r, inner_tol(tol, scale / (1.0 - alpha)));
      const double head = -log1mr - r;
      SeriesValue out;
      out.value = (head - scale * f.value) / (1.0 - alpha);
      out.tail_bound = (scale * f.tail_bound +
                        16.0 * kUnitRoundoff * (std::abs(head) + scale * std::abs(f.value))) /
                       (1.0 - alpha);
      out.terms_used = f.terms_used;
      return out;
    }
    case 1: {
      const double scale = r2 / (1.0 + alpha);
      const auto f = specfun::gauss_2f1(1.0, b, b + 1.0, r, inner_tol(tol, scale));
      SeriesValue out;
      out.value = scale * f.value;
      out.tail_bound = scale * f.tail_bound + 8.0 * kUnitRoundoff * std::abs(out.value);
      out.terms_used = f.terms_used;
      return out;
    }
    case 2: {
      const double lead = (2.0 - r) / (q * q);
      const double scale = 2.0 * alpha / (1.0 + alpha);
      const auto f = specfun::gauss_2f1(3.0, b, b + 1.0, r, inner_tol(tol, r2 * scale));
      SeriesValue out;
      out.value = r2 * (lead - scale * f.value);
      out.tail_bound = r2 * (scale * f.tail_bound +
                             16.0 * kUnitRoundoff * (std::abs(lead) + scale * std::abs(f.value)));
      out.terms_used = f.terms_used;
      return out;
    }
    case 3: {
      const double lead = (4.0 - 3.0 * r + r2) / (q * q * q);
      const double scale3 = 4.0 * alpha / (1.0 + alpha);
      const double scale4 = 6.0 * alpha * r / (1.0 + 2.0 * alpha);
      const auto f3 = specfun::gauss_2f1(3.0, b, b + 1.0, r, inner_tol(tol, 2.0 * r2 * scale3));
      const auto f4 = specfun::gauss_2f1(4.0, b + 1.0, b + 2.0, r, inner_tol(tol, 2.0 * r2 * scale4));
      SeriesValue out;
      out.value = r2 * (lead - scale3 * f3.value - scale4 * f4.value);
      out.tail_bound =
          r2 * (scale3 * f3.tail_bound + scale4 * f4.tail_bound +
                16.0 * kUnitRoundoff *
                    (std::abs(lead) + scale3 * std::abs(f3.value) + scale4 * std::abs(f4.value)));
      out.terms_used = f3.terms_used + f4.terms_used;
      return out;
    }
  }
  throw ParameterError(
      fmt::format("closed_form_WH0: no closed form for exponent {} at alpha = {}", k, alpha));
}

}  // namespace

SeriesValue closed_form_WH0(int k, double alpha, double r, double tol) {
  auto out = closed_form_WH0_unchecked(k, alpha, r, tol);
  if (out.tail_bound > tol) {
    throw ToleranceUnreachable(
        fmt::format("closed_form_WH0: error bound {} exceeds tol {}", out.tail_bound, tol));
  }
  return out;
}

std::optional<SeriesValue> sum_weighted_closed_form(const WeightedSumSpec& spec) {
  validate(spec);
  if (spec.r >= 1.0) return std::nullopt;
  const int k = closed_form_exponent(spec.family);
  if (k < 0) return std::nullopt;
  const auto kind = spec.family.kind();

  if (spec.weight.kind == CoefficientWeight::Kind::PH0) {
    const auto variant =
        kind == PhiFamily::Kind::ShiftWeight ? WeightVariant::Shifted : WeightVariant::Plain;
    const double value = closed_form_PH0(k, variant, spec.r);
    // Scale of the largest intermediate: the 1/(1−r)² pieces.
    const double q = 1.0 - spec.r;
    return exact_value(value, std::abs(std::log1p(-spec.r)) + spec.r / (q * q));
  }

  // WH0: only n^k weights have closed forms (k = 0 covers power and shift:0).
  if (kind == PhiFamily::Kind::ShiftWeight && k != 0) return std::nullopt;
  const double alpha = spec.weight.alpha;
  if (k == 0 && alpha > kWh0PowerClosedFormMaxAlpha) return std::nullopt;
  try {
    return closed_form_WH0(k, alpha, spec.r, spec.tol);
  } catch (const ToleranceUnreachable&) {
    return std::nullopt;
  }
}

SeriesValue sum_weighted_truncated(const WeightedSumSpec& spec) {
  validate(spec);
  if (spec.r >= 1.0) {
    throw ToleranceUnreachable("sum_weighted_truncated: r = 1 needs the boundary value");
  }
  return truncate(spec, false);
}

SeriesValue sum_weighted(const WeightedSumSpec& spec) {
  validate(spec);
  if (spec.r == 1.0) {
    const double value = weighted_sum_at_one(spec.family, spec.weight);
    if (!std::isfinite(value)) {
      throw ToleranceUnreachable(
          fmt::format("sum_weighted: {} series diverges at r = 1", spec.family.description()));
    }
    return exact_value(value, 1.0);
  }

  const auto closed = sum_weighted_closed_form(spec);
  if (!closed) return truncate(spec, false);
  if (!spec.cross_check) return *closed;

  SeriesValue trunc;
  try {
    trunc = truncate(spec, false);
  } catch (const ToleranceUnreachable&) {
    return *closed;  // too close to 1 for the truncation path
  }
  const double gap = std::abs(closed->value - trunc.value);
  if (gap > spec.tol + trunc.tail_bound + closed->tail_bound) {
    throw ConvergenceError(fmt::format(
        "sum_weighted: closed form {:.17g} and truncation {:.17g} disagree at r = {} ({})",
        closed->value, trunc.value, spec.r, spec.family.description()));
  }
  SeriesValue out = *closed;
  out.tail_bound = std::min(closed->tail_bound, trunc.tail_bound + gap);
  out.terms_used = std::max(closed->terms_used, trunc.terms_used);
  return out;
}

SeriesValue sum_weighted_derivative(const WeightedSumSpec& spec) {
  validate(spec);
  if (spec.r >= 1.0) throw DomainError("sum_weighted_derivative: r must be < 1");
  return truncate(spec, true);
}

double weighted_sum_at_one(const PhiFamily& family, const CoefficientWeight& weight) {
  const double k = growth_exponent(family);
  const bool wh0 = weight.kind == CoefficientWeight::Kind::WH0;
  if (!std::isnan(k)) {
    // Terms behave like n^k / n² (PH0, WH0 with α > 0) or n^k / n (WH0, α = 0).
    const double decay = (wh0 && weight.alpha == 0.0) ? 1.0 : 2.0;
    if (k + 1.0 >= decay) return kInf;
    if (k == 0.0) {
      if (!wh0) return 1.0;  // Σ 1/(n(n−1)) telescopes
      const double alpha = weight.alpha;
      if (alpha == 1.0) return std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
      return (specfun::digamma(1.0 + 1.0 / alpha) - specfun::digamma(2.0)) / (1.0 - alpha);
    }
  }
  detail::CompensatedSum sum;
  for (int n = 2; n <= 100'000; ++n) {
    sum.add(eval_phi(family, n, 1.0) / weight.denominator(n));
  }
  return sum.value();
}

double boundary_constant_PH0() { return 1.0 - 2.0 * ln2; }

double boundary_constant_WH0(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError(fmt::format("boundary_constant_WH0: alpha = {} outside [0, 1]", alpha));
  }
  if (alpha == 0.0) return ln2 - 1.0;
  if (alpha == 1.0) return std::numbers::pi * std::numbers::pi / 12.0 - 1.0;
  return (-1.0 + specfun::h_alpha(alpha) + ln2) / (1.0 - alpha);
}

double moebius_series(double a, double r, MoebiusPart part) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError(fmt::format("moebius_series: a = {} outside [0, 1)", a));
  if (!(r >= 0.0 && r < 1.0)) throw DomainError(fmt::format("moebius_series: r = {} outside [0, 1)", r));
  const double one_minus_a2 = (1.0 - a) * (1.0 + a);
  const double r2 = r * r;
  const double a2r2 = a * a * r2;
  switch (part) {
    case MoebiusPart::B2:
      return one_minus_a2 * a * r2 / (1.0 - a * r);
    case MoebiusPart::ATerm:
      return (1.0 + a * r) / ((1.0 + a) * (1.0 - r)) * one_minus_a2 * one_minus_a2 * r2 /
             (1.0 - a2r2);
    case MoebiusPart::SrOverPi: {
      const double d = 1.0 - a2r2;
      return one_minus_a2 * one_minus_a2 * r2 / (d * d);
    }
    case MoebiusPart::SrRatio:
      return one_minus_a2 * one_minus_a2 * r2 / ((1.0 - r) * (1.0 + r) * (1.0 - a2r2 * a * a));
  }
  throw ParameterError("moebius_series: unknown part");
}

// ---------------------------------------------------------------------------
// Coefficient functionals

namespace {

void validate_coefficient_args(double r, int k) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError(fmt::format("coefficient functional: r = {} outside [0, 1)", r));
  if (k < 0) throw DomainError("coefficient functional: start index must be >= 0");
}

// Once n ≥ nonincreasing_from, |a_{m+1}| ≤ |a_m| so term ratios are bounded
// by the geometric factor times the polynomial factor ((m+1)/m)^p.
auto coefficient_ratio(const CoefficientSequence& seq, double geometric, double poly) {
  return [&seq, geometric, poly](int n, double, double) {
    if (n < seq.nonincreasing_from || n < 1) return kInf;
    return geometric * std::pow(1.0 + 1.0 / static_cast<double>(n), poly);
  };
}

}  // namespace

SeriesValue bohr_tail_sum(const CoefficientSequence& seq, int k, double r, double tol) {
  validate_coefficient_args(r, k);
  auto term = [&](int n) { return seq(n) * std::pow(r, n); };
  return detail::sum_with_ratio_bound(k, term, coefficient_ratio(seq, r, 0.0), tol, "bohr_tail_sum");
}

SeriesValue coefficient_norm_sq(const CoefficientSequence& seq, int k, double r, double tol) {
  validate_coefficient_args(r, k);
  auto term = [&](int n) {
    const double c = seq(n);
    return c * c * std::pow(r, 2 * n);
  };
  return detail::sum_with_ratio_bound(k, term, coefficient_ratio(seq, r * r, 0.0), tol,
                                      "coefficient_norm_sq");
}

SeriesValue area_augment(const CoefficientSequence& seq, double r, double tol) {
  const double factor = 1.0 / (1.0 + seq(0)) + r / (1.0 - r);
  auto norm = coefficient_norm_sq(seq, 1, r, tol / std::max(1.0, factor));
  norm.value *= factor;
  norm.tail_bound *= factor;
  return norm;
}

SeriesValue area_over_pi(const CoefficientSequence& seq, double r, double tol) {
  validate_coefficient_args(r, 1);
  auto term = [&](int n) {
    const double c = seq(n);
    return static_cast<double>(n) * c * c * std::pow(r, 2 * n);
  };
  return detail::sum_with_ratio_bound(1, term, coefficient_ratio(seq, r * r, 1.0), tol,
                                      "area_over_pi");
}

}  // namespace bohr
