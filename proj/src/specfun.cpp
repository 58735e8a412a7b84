#include "bohr/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "bohr/detail/compensated_sum.hpp"
#include "bohr/errors.hpp"

namespace bohr::specfun {

namespace {

using detail::CompensatedSum;

// B_{2k}/(2k) for k = 1..10.
constexpr std::array<double, 10> kDigammaAsymptotic = {
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43867.0 / 14364.0,
    -174611.0 / 6600.0,
};

// B_{2j} for j = 1..7, used by the Euler–Maclaurin tail of the pair sum.
constexpr std::array<double, 7> kBernoulliEven = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
};

constexpr double kDigammaShift = 6.0;

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError("tolerance must be positive and finite");
  }
}

// x^{-p} - (x+1)^{-p} without cancellation for large x.
double inverse_power_difference(double x, int p) {
  const double lead = std::pow(x, -p);
  return -lead * std::expm1(p * std::log1p(-1.0 / (x + 1.0)));
}

// Σ_{n≥0} (-1)ⁿ/(n+a), as Σ_k g(k) with g(k) = 1/((2k+a)(2k+a+1)).
SeriesValue alternating_phi(double a, double tol) {
  constexpr int kCorrections = static_cast<int>(kBernoulliEven.size()) - 1;
  CompensatedSum head;
  std::size_t pairs = 0;
  std::size_t target = 8;
  while (true) {
    for (; pairs < target; ++pairs) {
      const double x = 2.0 * static_cast<double>(pairs) + a;
      head.add(1.0 / (x * (x + 1.0)));
    }
    const double x = 2.0 * static_cast<double>(pairs) + a;
    // ∫_K^∞ g = ½ log(1 + 1/x), plus g(K)/2, minus Σ B_{2j}/(2j)! g^{(2j-1)}(K).
    CompensatedSum tail;
    tail.add(0.5 * std::log1p(1.0 / x));
    tail.add(0.5 / (x * (x + 1.0)));
    double pow2 = 2.0;  // 2^{2j-1}
    for (int j = 1; j <= kCorrections; ++j) {
      tail.add(kBernoulliEven[j - 1] / (2.0 * j) * pow2 * inverse_power_difference(x, 2 * j));
      pow2 *= 4.0;
    }
    const int omitted = kCorrections + 1;
    const double remainder = std::abs(kBernoulliEven[omitted - 1] / (2.0 * omitted) * pow2 *
                                      inverse_power_difference(x, 2 * omitted));
    if (remainder <= 0.5 * tol) {
      SeriesValue out;
      out.value = head.value() + tail.value();
      out.tail_bound = remainder + head.rounding_bound(4.0) + tail.rounding_bound(16.0);
      out.terms_used = 2 * pairs;
      if (out.tail_bound > tol) {
        throw ToleranceUnreachable("lerch_phi: tolerance below the rounding floor");
      }
      return out;
    }
    if (2 * target > kMaxSeriesTerms) {
      throw ToleranceUnreachable("lerch_phi: term cap exceeded at z = -1");
    }
    target *= 2;
  }
}

SeriesValue power_phi(double z, double a, double tol) {
  CompensatedSum sum;
  const double az = std::abs(z);
  double zn = 1.0;
  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    const double denom = static_cast<double>(n) + a;
    sum.add(zn / denom);
    zn *= z;
    // Remainder from n+1 on: alternating bound for z < 0, geometric otherwise.
    const double next = std::abs(zn) / (denom + 1.0);
    const double truncation = z < 0.0 ? next : next / (1.0 - az);
    if (truncation <= 0.5 * tol) {
      SeriesValue out;
      out.value = sum.value();
      out.tail_bound = truncation + sum.rounding_bound();
      out.terms_used = n + 1;
      if (out.tail_bound > tol) {
        throw ToleranceUnreachable("lerch_phi: tolerance below the rounding floor");
      }
      return out;
    }
  }
  throw ToleranceUnreachable("lerch_phi: term cap exceeded");
}

}  // namespace

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("digamma: argument must be positive and finite");
  }
  CompensatedSum shift;
  while (x < kDigammaShift) {
    shift.add(-1.0 / x);
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  for (auto it = kDigammaAsymptotic.rbegin(); it != kDigammaAsymptotic.rend(); ++it) {
    series = series * inv2 + *it;
  }
  series *= inv2;
  return shift.value() + (std::log(x) - 0.5 / x - series);
}

SeriesValue lerch_phi(const PhiArgs& args, double tol) {
  require_tol(tol);
  if (!(args.a > 0.0) || !std::isfinite(args.a)) {
    throw DomainError("lerch_phi: a must be positive and finite");
  }
  if (!(args.z >= -1.0 && args.z < 1.0)) {
    throw ConvergenceError("lerch_phi: series with s = 1 diverges unless -1 <= z < 1");
  }
  if (args.z == -1.0) {
    return alternating_phi(args.a, tol);
  }
  return power_phi(args.z, args.a, tol);
}

double lerch_phi_via_digamma(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("lerch_phi_via_digamma: a must be positive and finite");
  }
  return 0.5 * (digamma(0.5 * (a + 1.0)) - digamma(0.5 * a));
}

double h_alpha(double alpha) {
  if (!(alpha > 0.0)) {
    throw DomainError("h_alpha: alpha must be positive");
  }
  const double a = 1.0 + 1.0 / alpha;
  if (!std::isfinite(a)) {
    return 0.0;  // Φ(-1,1,a) ~ 1/(2a) → 0
  }
  return lerch_phi({-1.0, a}, 1e-14).value;
}

SeriesValue gauss_2f1(double a, double b, double c, double z, double tol) {
  require_tol(tol);
  if (c <= 0.0 && c == std::floor(c)) {
    throw ParameterError("gauss_2f1: c must not be a nonpositive integer");
  }
  if (!(z >= 0.0 && z < 1.0)) {
    throw DomainError("gauss_2f1: z must lie in [0, 1)");
  }
  // Past n_safe every ratio |t_{m+1}/t_m| ≤ z (1 + 2|A|/m + 2|B|/m²).
  const double coef_a = std::abs(a + b - c - 1.0);
  const double coef_b = std::abs(a * b - c);
  const double n_safe = std::max({2.0 * std::abs(c) + 1.0, std::abs(a), std::abs(b), 1.0});

  CompensatedSum sum;
  // Term n carries at most ~5n unit roundoffs from the ratio recurrence.
  double recurrence_error = 0.0;
  double term = 1.0;
  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    sum.add(term);
    recurrence_error += 5.0 * static_cast<double>(n) * detail::kUnitRoundoff * std::abs(term);
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    const double m = dn + 1.0;  // index of `term`
    double truncation = std::numeric_limits<double>::infinity();
    if (term == 0.0) {
      truncation = 0.0;  // terminating or z = 0
    } else if (m > n_safe) {
      const double rho = z * (1.0 + 2.0 * coef_a / m + 2.0 * coef_b / (m * m));
      if (rho < 1.0) truncation = std::abs(term) / (1.0 - rho);
    }
    if (truncation <= 0.5 * tol) {
      SeriesValue out;
      out.value = sum.value();
      out.tail_bound = truncation + sum.rounding_bound(1.0) + recurrence_error;
      out.terms_used = n + 1;
      if (out.tail_bound > tol) {
        throw ToleranceUnreachable("gauss_2f1: tolerance below the rounding floor");
      }
      return out;
    }
  }
  throw ToleranceUnreachable("gauss_2f1: term cap exceeded; z too close to 1");
}

}  // namespace bohr::specfun
