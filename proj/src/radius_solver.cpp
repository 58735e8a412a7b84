#include "bohr/radius_solver.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "bohr/errors.hpp"
#include "bohr/function_classes.hpp"
#include "bohr/series_kernels.hpp"
#include "bohr/specfun.hpp"

namespace bohr {

namespace {

constexpr double kBisectWidth = 1e-8;
constexpr double kPolishWidth = 1e-13;
constexpr int kMaxIterations = 400;
constexpr int kCertificatePoints = 256;
constexpr int kSignGridPoints = 1024;

// Tolerance ladder for series inside equations: the tightest that clears the
// rounding floor wins. Sums near r = 1 grow like (1−r)^−k, so the coarse end
// is only reached where the value itself is large.
constexpr std::array<double, 7> kSeriesTols{1e-14, 1e-13, 1e-12, 1e-10, 1e-8, 1e-6, 1e-4};

template <class Sum>
double with_tol_ladder(Sum&& sum, const std::string& what) {
  for (const double tol : kSeriesTols) {
    try {
      return sum(tol);
    } catch (const ToleranceUnreachable&) {
    }
  }
  throw ToleranceUnreachable(what);
}

double series(const PhiFamily& family, const CoefficientWeight& weight, double r, bool derivative) {
  if (r == 0.0 && !derivative) {
    // Only nonzero for families with φₙ(0) ≠ 0.
    if (family.kind() != PhiFamily::Kind::Custom) return 0.0;
  }
  return with_tol_ladder(
      [&](double tol) {
        WeightedSumSpec spec{family, weight, r, tol, true};
        return derivative ? sum_weighted_derivative(spec).value : sum_weighted(spec).value;
      },
      fmt::format("radius equation: series for {} not summable at r = {}", family.description(), r));
}

// lhs(r) = r φ₀(r) + scale · Σ φₙ(r)/w(n), with lhs(1) from the boundary sum.
RadiusEquation weighted_equation(const PhiFamily& family, const CoefficientWeight& weight,
                                 double scale) {
  RadiusEquation eq;
  eq.lhs = [family, weight, scale](double r) {
    if (r == 1.0) {
      return eval_phi(family, 0, 1.0) + scale * weighted_sum_at_one(family, weight);
    }
    return r * eval_phi(family, 0, r) + scale * series(family, weight, r, false);
  };
  eq.dlhs = [family, weight, scale](double r) {
    return eval_phi(family, 0, r) + r * eval_dphi(family, 0, r) +
           scale * series(family, weight, r, true);
  };
  eq.info.family = family.description();
  eq.info.unit_boundary_hypothesis = family.unit_at_boundary();
  return eq;
}

void check_endpoint_signs(const RadiusEquation& eq) {
  const double at_zero = eq.residual(0.0);
  const double at_one = eq.residual(1.0);
  if (!(at_zero < 0.0 && at_one > 0.0)) {
    throw SignCheckError(fmt::format(
        "{} equation ({}, parameter {}): endpoint residuals {} at 0 and {} at 1 do not straddle",
        eq.info.kind, eq.info.family, eq.info.parameter, at_zero, at_one));
  }
}

// Scan points: log-spaced on [1e-12, 1/2], then uniform on (1/2, 1).
std::vector<double> scan_points() {
  std::vector<double> pts;
  for (int i = 0; i <= 96; ++i) pts.push_back(std::pow(10.0, -12.0 + 12.0 * i / 96.0) * 0.5);
  for (int i = 1; i < 256; ++i) pts.push_back(0.5 + 0.5 * i / 256.0);
  return pts;
}

}  // namespace

RadiusEquation build_PH0_equation(const PhiFamily& family, double M) {
  const double bound = admissible_M_bound(family);
  if (!(M > 0.0 && M < bound)) {
    throw AdmissibilityError(
        fmt::format("PH0 equation: M = {} outside (0, {:.10g}) for {}", M, bound, family.description()));
  }
  auto eq = weighted_equation(family, CoefficientWeight::ph0(), 2.0 * M);
  eq.rhs = growth_PH0(M, 1.0, GrowthSide::Lower);
  eq.info.kind = "ph0";
  eq.info.parameter = M;
  check_endpoint_signs(eq);
  return eq;
}

RadiusEquation build_WH0_equation(const PhiFamily& family, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError(fmt::format("WH0 equation: alpha = {} outside [0, 1]", alpha));
  }
  auto eq = weighted_equation(family, CoefficientWeight::wh0(alpha), 2.0);
  eq.rhs = growth_WH0(alpha, 1.0, GrowthSide::Lower);
  eq.info.kind = "wh0";
  eq.info.parameter = alpha;
  check_endpoint_signs(eq);
  return eq;
}

RootResult solve_radius(const RadiusEquation& eq, double tol) {
  if (!(tol > 0.0)) throw DomainError("solve_radius: tol must be positive");
  RootResult out;

  double lo = 0.0;
  double f_lo = eq.residual(0.0);
  if (!(f_lo < 0.0)) throw SignCheckError("solve_radius: lhs − rhs must be negative at 0");
  double hi = std::numeric_limits<double>::quiet_NaN();
  double f_hi = 0.0;
  for (const double r : scan_points()) {
    const double f = eq.residual(r);
    ++out.iterations;
    if (f >= 0.0) {
      hi = r;
      f_hi = f;
      break;
    }
    lo = r;
    f_lo = f;
  }
  if (std::isnan(hi)) {
    hi = 1.0;
    f_hi = eq.residual(1.0);
    if (!(f_hi > 0.0)) throw SignCheckError("solve_radius: no sign change on (0, 1)");
  }

  auto finish = [&](double root, double f) {
    out.root = root;
    out.bracket = {lo, hi};
    out.residual = std::abs(f);
    if (out.residual > tol * std::max(1.0, std::abs(eq.rhs))) {
      throw ConvergenceError(fmt::format("solve_radius: residual {} above {} at r = {:.17g}",
                                         out.residual, tol, root));
    }
    out.monotone_certificate = monotone_certificate(eq);
    return out;
  };

  while (hi - lo > kBisectWidth && f_hi != 0.0) {
    const double mid = lo + 0.5 * (hi - lo);
    const double f = eq.residual(mid);
    if (++out.iterations > kMaxIterations) throw ConvergenceError("solve_radius: iteration cap");
    if (f == 0.0) {
      lo = hi = mid;
      return finish(mid, 0.0);
    }
    (f < 0.0 ? lo : hi) = mid;
    (f < 0.0 ? f_lo : f_hi) = f;
  }

  // Illinois variant of regula falsi, falling back to bisection whenever the
  // secant step leaves the bracket.
  int side = 0;
  while (hi - lo > kPolishWidth && f_hi != 0.0) {
    if (++out.iterations > kMaxIterations) throw ConvergenceError("solve_radius: iteration cap");
    double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(x > lo && x < hi)) x = lo + 0.5 * (hi - lo);
    if (x <= lo || x >= hi) break;  // adjacent doubles
    const double f = eq.residual(x);
    if (f == 0.0) {
      lo = hi = x;
      return finish(x, 0.0);
    }
    if (f < 0.0) {
      lo = x;
      f_lo = f;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = x;
      f_hi = f;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
  }
  // f_lo/f_hi may have been halved; report the true residual.
  const double r_lo = eq.residual(lo);
  const double r_hi = eq.residual(hi);
  return std::abs(r_lo) <= std::abs(r_hi) ? finish(lo, r_lo) : finish(hi, r_hi);
}

std::vector<double> sign_grid() {
  std::vector<double> grid;
  grid.reserve(kSignGridPoints);
  constexpr int half = kSignGridPoints / 2;
  for (int i = 0; i < half; ++i) grid.push_back(0.5 * std::pow(10.0, -12.0 + 12.0 * i / half));
  for (int i = 0; i < half; ++i) grid.push_back(0.5 + 0.5 * (i + 0.5) / half);
  return grid;
}

int count_sign_changes(const RadiusEquation& eq) {
  int changes = 0;
  int previous = 0;
  for (const double r : sign_grid()) {
    const double f = eq.residual(r);
    const int s = (f > 0.0) - (f < 0.0);
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++changes;
    previous = s;
  }
  return changes;
}

bool monotone_certificate(const RadiusEquation& eq) {
  if (!eq.dlhs) return false;
  for (int i = 1; i <= kCertificatePoints; ++i) {
    const double r = static_cast<double>(i) / (kCertificatePoints + 1);
    if (!(eq.dlhs(r) > 0.0)) return false;
  }
  return true;
}

double classical_radius(ClassicalKind kind, int N) {
  if (N < 1) throw ParameterError(fmt::format("classical_radius: N = {} must be >= 1", N));
  const double factor = kind == ClassicalKind::RogosinskiDoubled ? 2.0 : 1.0;
  RadiusEquation eq;
  eq.lhs = [factor, N](double r) {
    return factor * (1.0 + r) * std::pow(r, N) - (1.0 - r) * (1.0 - r);
  };
  eq.dlhs = [factor, N](double r) {
    return factor * (std::pow(r, N) + (1.0 + r) * N * std::pow(r, N - 1)) + 2.0 * (1.0 - r);
  };
  eq.info.kind = "classical";
  eq.info.parameter = N;
  return solve_radius(eq).root;
}

double hypergeometric_radius(double a, double b, double c, double p) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
    throw ParameterError("hypergeometric_radius: a, b, c must be positive");
  }
  if (!(p > 0.0 && p <= 2.0)) throw ParameterError("hypergeometric_radius: p must be in (0, 2]");
  RadiusEquation eq;
  eq.lhs = [a, b, c](double x) {
    if (x >= 1.0) {
      // Divergent at 1 when c ≤ a + b; otherwise Gauss's value.
      if (c - a - b <= 0.0) return std::numeric_limits<double>::infinity();
      return std::exp(std::lgamma(c) + std::lgamma(c - a - b) - std::lgamma(c - a) -
                      std::lgamma(c - b)) - 1.0;
    }
    return with_tol_ladder([&](double tol) { return specfun::gauss_2f1(a, b, c, x, tol).value; },
                           "hypergeometric_radius: series not summable") -
           1.0;
  };
  eq.dlhs = [a, b, c](double x) {
    return a * b / c *
           with_tol_ladder(
               [&](double tol) { return specfun::gauss_2f1(a + 1.0, b + 1.0, c + 1.0, x, tol).value; },
               "hypergeometric_radius: derivative series not summable");
  };
  eq.rhs = 0.5 * p;
  eq.info.kind = "classical";
  eq.info.parameter = p;
  return solve_radius(eq).root;
}

double generalized_power_radius(double p) {
  if (!(p > 0.0 && p <= 2.0)) throw ParameterError("generalized_power_radius: p must be in (0, 2]");
  // Σ_{n≥1} rⁿ = r/(1−r); the equation is (2/p) r/(1−r) = 1.
  RadiusEquation eq;
  eq.lhs = [p](double r) { return r >= 1.0 ? std::numeric_limits<double>::infinity() : 2.0 / p * r / (1.0 - r); };
  eq.dlhs = [p](double r) { return 2.0 / p / ((1.0 - r) * (1.0 - r)); };
  eq.rhs = 1.0;
  eq.info.kind = "classical";
  eq.info.parameter = p;
  return solve_radius(eq).root;
}

namespace {

constexpr std::array<double, 9> kTableM{0.431, 0.862, 1.210, 1.271, 1.289,
                                        1.292, 1.2935, 1.29421, 1.29433};

// Printed roots, one row per weight exponent 1, 2, 3.
constexpr double kTable1[3][9] = {
    {0.443, 0.230, 0.057, 0.017, 0.0040, 0.0018, 0.00065, 0.00010, 0.000015},
    {0.358, 0.189, 0.029, 0.016, 0.0040, 0.0017, 0.00065, 0.00010, 0.000015},
    {0.277, 0.149, 0.044, 0.015, 0.0039, 0.0017, 0.00065, 0.00010, 0.000015},
};
constexpr double kTable2[3][9] = {
    {0.404, 0.208, 0.054, 0.016, 0.0040, 0.0018, 0.00065, 0.00010, 0.000015},
    {0.284, 0.147, 0.043, 0.015, 0.0039, 0.0017, 0.00065, 0.00010, 0.000015},
    {0.203, 0.147, 0.043, 0.015, 0.0039, 0.0017, 0.00065, 0.00010, 0.000015},
};

}  // namespace

TableResult table_generate(int table_id, double tol) {
  if (table_id != 1 && table_id != 2) {
    throw ParameterError(fmt::format("table_generate: unknown table {}", table_id));
  }
  const auto& published = table_id == 1 ? kTable1 : kTable2;
  TableResult table;
  table.id = table_id;
  table.M_values.assign(kTableM.begin(), kTableM.end());

  for (int k = 1; k <= 3; ++k) {
    const auto family = table_id == 1 ? PhiFamily::poly_weight(k) : PhiFamily::shift_weight(k);
    for (std::size_t j = 0; j < kTableM.size(); ++j) {
      TableCell cell;
      cell.weight = k;
      cell.M = kTableM[j];
      cell.published = published[k - 1][j];
      cell.source = fmt::format("table{}/row{}/col{}", table_id, k, j + 1);
      try {
        cell.result = solve_radius(build_PH0_equation(family, cell.M), tol);
        cell.abs_diff = std::abs(cell.result->root - cell.published);
        cell.matches = cell.abs_diff <= kTableAgreement;
      } catch (const Error& e) {
        cell.error = e.what();
        ++table.failures;
      }
      if (cell.matches) ++table.matched;
      table.cells.push_back(std::move(cell));
    }
  }

  // Larger weights give a larger lhs, hence a smaller root.
  const std::size_t cols = kTableM.size();
  for (std::size_t row = 1; row < 3; ++row) {
    for (std::size_t j = 0; j < cols; ++j) {
      auto& cell = table.cells[row * cols + j];
      const auto& above = table.cells[(row - 1) * cols + j];
      if (cell.result && above.result && cell.result->root > above.result->root) {
        cell.order_violation = true;
        ++table.order_violations;
      }
    }
  }
  return table;
}

}  // namespace bohr
