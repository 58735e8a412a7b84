#include "bohr/verifier.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "bohr/detail/compensated_sum.hpp"
#include "bohr/detail/ratio_series.hpp"
#include "bohr/errors.hpp"
#include "bohr/function_classes.hpp"
#include "bohr/radius_solver.hpp"
#include "bohr/series_kernels.hpp"

namespace bohr {

namespace {

const double kSqrt17 = std::sqrt(17.0);

void check_args(double a, double r, double lambda) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError(fmt::format("a = {} outside [0, 1)", a));
  if (!(r >= 0.0 && r < 1.0)) throw DomainError(fmt::format("r = {} outside [0, 1)", r));
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
}

// Terms of the functional beyond |f(r)|, each O(1−a).
struct Parts {
  double value_gap;  ///< |f(r)| − 1 ≤ 0
  double derivative;
  double tail;  ///< B₂ + A, or its majorant
  double area;
};

double area_term(double a, double r, double lambda) {
  return lambda * moebius_series(a, r, MoebiusPart::SrRatio);
}

Parts l1_parts(double a, double r, double lambda) {
  check_args(a, r, lambda);
  const double d = 1.0 + a * r;
  return {-(1.0 - a) * (1.0 - r) / d, (1.0 - a) * (1.0 + a) * r / (d * d),
          moebius_series(a, r, MoebiusPart::B2) + moebius_series(a, r, MoebiusPart::ATerm),
          area_term(a, r, lambda)};
}

Parts a1_parts(double a, double r, double lambda) {
  check_args(a, r, lambda);
  const double d = 1.0 + a * r;
  const double one_minus_a2 = (1.0 - a) * (1.0 + a);
  return {-(1.0 - a) * (1.0 - r) / d, one_minus_a2 * r / (d * d), one_minus_a2 * r * r / (1.0 - r),
          area_term(a, r, lambda)};
}

double excess(const Parts& p) {
  detail::CompensatedSum s;
  s.add(p.value_gap);
  s.add(p.derivative);
  s.add(p.tail);
  s.add(p.area);
  return s.value();
}

// Rounding allowance for excess(): a few ulps of the largest part.
double excess_rounding(const Parts& p) {
  const double scale = std::abs(p.value_gap) + p.derivative + p.tail + p.area;
  return 64.0 * detail::kUnitRoundoff * scale;
}

// Horner evaluation of c₀ + c₁a + … with c_i = p_i + q_i √17.
double quintic(const double (&p)[6], const double (&q)[6], double a) {
  double acc = 0.0;
  for (int i = 5; i >= 0; --i) acc = acc * a + (p[i] + q[i] * kSqrt17);
  return acc;
}

// Keeps the first maximizer in sweep order, which is the smallest a and then
// the smallest r because sweeps run in increasing order.
struct Argmax {
  double value = -std::numeric_limits<double>::infinity();
  double a = 0.0;
  double r = 0.0;
  void offer(double v, double at_a, double at_r) {
    if (v > value) {
      value = v;
      a = at_a;
      r = at_r;
    }
  }
};

}  // namespace

double sharp_lambda() { return (221.0 - 43.0 * kSqrt17) / 64.0; }
double sharp_radius() { return (kSqrt17 - 3.0) / 4.0; }

double eval_L1(double a, double r, double lambda) {
  check_args(a, r, lambda);
  const double d = 1.0 + a * r;
  const double one_minus_a2 = (1.0 - a) * (1.0 + a);
  return (r + a) / d + one_minus_a2 * r / (d * d) + one_minus_a2 * a * r * r / (1.0 - a * r) +
         d / ((1.0 + a) * (1.0 - r)) * one_minus_a2 * one_minus_a2 * r * r / (1.0 - a * a * r * r) +
         lambda * one_minus_a2 * one_minus_a2 * r * r / ((1.0 - r * r) * (1.0 - a * a * a * a * r * r));
}

double eval_L1_excess(double a, double r, double lambda) { return excess(l1_parts(a, r, lambda)); }

double eval_A1_majorant(double a, double r, double lambda) {
  check_args(a, r, lambda);
  const double d = 1.0 + a * r;
  const double one_minus_a2 = (1.0 - a) * (1.0 + a);
  return (r + a) / d + one_minus_a2 * r / (d * d) + one_minus_a2 * r * r / (1.0 - r) +
         lambda * one_minus_a2 * one_minus_a2 * r * r / ((1.0 - r * r) * (1.0 - a * a * a * a * r * r));
}

double eval_A1_excess(double a, double r, double lambda) { return excess(a1_parts(a, r, lambda)); }

double poly_F(int which, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError(fmt::format("poly_F: a = {} outside [0, 1]", a));
  if (which == 1) {
    static constexpr double p[6] = {8 * -3445.0, 16 * -195.0, 2 * 24191.0,
                                    2 * -3927.0, 8 * -5981.0, 8 * -3187.0};
    static constexpr double q[6] = {8 * 851.0, 16 * 53.0, 2 * -5849.0,
                                    2 * 961.0, 8 * 1451.0, 8 * 773.0};
    return quintic(p, q, a);
  }
  if (which == 2) {
    static constexpr double p[6] = {27560.0, 3120.0, -48382.0, 7854.0, 47848.0, 25496.0};
    static constexpr double q[6] = {-6808.0, -848.0, 11698.0, -1922.0, -11608.0, -6184.0};
    return quintic(p, q, a);
  }
  throw ParameterError(fmt::format("poly_F: which = {} must be 1 or 2", which));
}

double excess_denominator(double a) {
  const double lin = 4.0 + (kSqrt17 - 3.0) * a;
  const double a4 = a * a * a * a;
  return lin * lin * (-80.0 + 48.0 * kSqrt17 + 4.0 * (109.0 - 27.0 * kSqrt17) * a4);
}

double excess_epsilon_coefficient(double a) {
  const double one_minus_a2 = (1.0 - a) * (1.0 + a);
  const double quad = 52.0 - 12.0 * kSqrt17 + (-180.0 + 44.0 * kSqrt17) * a +
                      (161.0 - 39.0 * kSqrt17) * a * a;
  return 64.0 * one_minus_a2 * one_minus_a2 * quad / excess_denominator(a);
}

VerificationReport verify_thm22(int grid_a, int grid_r, double tol, double lambda) {
  if (grid_a < 2 || grid_r < 2) throw ParameterError("verify_thm22: grids must have >= 2 points");
  const double radius = sharp_radius();
  Argmax majorant;
  Argmax functional;
  for (int i = 1; i <= grid_a; ++i) {
    const double a = static_cast<double>(i) / (grid_a + 1);
    for (int j = 0; j < grid_r; ++j) {
      const double r = j == grid_r - 1 ? radius : radius * j / (grid_r - 1);
      majorant.offer(eval_A1_excess(a, r, lambda), a, r);
      functional.offer(eval_L1_excess(a, r, lambda), a, r);
    }
  }
  VerificationReport report;
  report.claim_id = "thm22";
  report.grid = fmt::format("a = i/{} for i = 1..{}; {} radii uniform on [0, {:.17g}]; lambda = {:.17g}",
                            grid_a + 1, grid_a, grid_r, radius, lambda);
  report.tolerance = tol;
  report.worst_margin = std::max(majorant.value, functional.value);
  report.witnesses.push_back({{{"a", majorant.a}, {"r", majorant.r}, {"majorant", 1.0}}, majorant.value});
  report.witnesses.push_back({{{"a", functional.a}, {"r", functional.r}, {"majorant", 0.0}}, functional.value});
  report.passed = report.worst_margin <= tol;
  return report;
}

VerificationReport sharpness_probe_thm22(double epsilon, int a_grid) {
  if (!(epsilon >= 0.0)) throw DomainError("sharpness_probe_thm22: epsilon must be >= 0");
  if (a_grid < 1) throw ParameterError("sharpness_probe_thm22: a_grid must be >= 1");
  const double r = sharp_radius();
  const double lambda = sharp_lambda() + epsilon;

  std::vector<double> as;
  for (int i = 1; i <= a_grid; ++i) as.push_back(static_cast<double>(i) / (a_grid + 1));
  constexpr int kLogSteps = 120;  // t from 1 to 7
  for (int i = 0; i <= kLogSteps; ++i) as.push_back(1.0 - std::pow(10.0, -(1.0 + 6.0 * i / kLogSteps)));

  Argmax best;
  Argmax best_certified;  // excess minus its rounding allowance
  for (const double a : as) {
    const auto parts = l1_parts(a, r, lambda);
    const double e = excess(parts);
    best.offer(e, a, r);
    best_certified.offer(e - excess_rounding(parts), a, r);
  }

  VerificationReport report;
  report.claim_id = "thm22-sharpness";
  report.grid = fmt::format("a = i/{} for i = 1..{} and a = 1 - 10^-t for t = 1..7 in steps of 0.05; "
                            "r = {:.17g}; lambda = sharp + {}",
                            a_grid + 1, a_grid, r, epsilon);
  report.worst_margin = best.value;
  report.witnesses.push_back({{{"a", best.a}, {"r", r}, {"epsilon", epsilon}}, best.value});
  report.passed = best_certified.value > 0.0;
  return report;
}

double extremal_bohr_sum(const HarmonicClaim& claim, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError(fmt::format("extremal_bohr_sum: r = {} outside [0, 1)", r));
  CoefficientSequence coeffs;
  if (claim.kind == HarmonicClaim::Kind::PH0) {
    coeffs = HarmonicPH0Extremal::make(claim.parameter).coefficients();
  } else {
    coeffs = HarmonicWH0Extremal::make(claim.parameter).coefficients();
  }
  const auto& family = claim.family;
  auto term = [&](int n) { return coeffs(n) * eval_phi(family, n, r); };
  const double k = family.exponent();
  const bool known = family.has_ratio_bound();
  auto ratio = [&](int n, double t, double previous) {
    if (known) return r * std::pow(1.0 + 1.0 / n, k);
    return previous > 0.0 ? t / previous : std::numeric_limits<double>::infinity();
  };
  double tail = std::numeric_limits<double>::quiet_NaN();
  for (const double tol : {1e-14, 1e-12, 1e-10}) {
    try {
      tail = detail::sum_with_ratio_bound(2, term, ratio, tol, "extremal_bohr_sum").value;
      break;
    } catch (const ToleranceUnreachable&) {
    }
  }
  if (std::isnan(tail)) throw ToleranceUnreachable("extremal_bohr_sum: series not summable");
  return r * eval_phi(family, 0, r) + tail;
}

VerificationReport verify_harmonic_bohr(const HarmonicClaim& claim, double r, double tol) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError(fmt::format("verify_harmonic_bohr: r = {} outside (0, 1)", r));
  const bool ph0 = claim.kind == HarmonicClaim::Kind::PH0;
  const auto eq = ph0 ? build_PH0_equation(claim.family, claim.parameter)
                      : build_WH0_equation(claim.family, claim.parameter);
  const double root = solve_radius(eq).root;
  const double distance = ph0 ? dist_lower_bound(HarmonicPH0Extremal::make(claim.parameter))
                              : dist_lower_bound(HarmonicWH0Extremal::make(claim.parameter));
  const double sum = extremal_bohr_sum(claim, r);

  VerificationReport report;
  report.claim_id = ph0 ? "harmonic-ph0" : "harmonic-wh0";
  report.grid = fmt::format("{} = {}, family {}, r = {:.17g}", ph0 ? "M" : "alpha", claim.parameter,
                            claim.family.description(), r);
  report.tolerance = tol;
  report.worst_margin = sum - distance;
  report.witnesses.push_back({{{"r", r}, {"root", root}, {"distance", distance}}, sum});
  report.passed = r <= root ? report.worst_margin <= tol : report.worst_margin > 0.0;
  return report;
}

}  // namespace bohr
