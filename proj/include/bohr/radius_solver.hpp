#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bohr/phi_family.hpp"

namespace bohr {

struct EquationInfo {
  std::string kind;    ///< "ph0", "wh0" or "classical"
  std::string family;  ///< φ-family description, empty for classical equations
  double parameter = 0.0;  ///< M, α or p
  /// False when the family does not satisfy φₙ(1) = 1, i.e. when the boundary
  /// value of the equation is an extrapolation of the growth argument.
  bool unit_boundary_hypothesis = true;
};

/// lhs(r) = rhs on (0, 1). The difference lhs − rhs is negative at 0 and
/// positive at 1 for admissible parameters.
struct RadiusEquation {
  std::function<double(double)> lhs;
  std::function<double(double)> dlhs;
  double rhs = 0.0;
  EquationInfo info;

  double residual(double r) const { return lhs(r) - rhs; }
};

struct RootResult {
  double root = 0.0;
  std::pair<double, double> bracket;
  double residual = 0.0;
  int iterations = 0;
  bool monotone_certificate = false;
};

/// rφ₀(r) + 2M Σ φₙ(r)/(n(n−1)) = 1 + 2M(1 − ln 4).
RadiusEquation build_PH0_equation(const PhiFamily& family, double M);

/// rφ₀(r) + 2 Σ φₙ(r)/(αn² + (1−α)n) = lower growth envelope at 1.
RadiusEquation build_WH0_equation(const PhiFamily& family, double alpha);

inline constexpr double kDefaultRootTol = 1e-12;

/// Bracketing solve: log-spaced scan, bisection to width 1e-8, then a
/// safeguarded secant (Illinois) polish to width 1e-13. `tol` bounds the
/// residual relative to max(1, |rhs|).
RootResult solve_radius(const RadiusEquation& eq, double tol = kDefaultRootTol);

/// Sign changes of lhs − rhs on a fixed 1024-point grid of (0, 1) that is
/// log-spaced near 0 and uniform above 1/2.
int count_sign_changes(const RadiusEquation& eq);

/// The 1024 grid points used by count_sign_changes.
std::vector<double> sign_grid();

/// Positive lhs′ at 256 uniform interior points.
bool monotone_certificate(const RadiusEquation& eq);

enum class ClassicalKind {
  Rogosinski,         ///< (1+r) r^N = (1−r)²
  RogosinskiDoubled,  ///< 2(1+r) r^N = (1−r)²
};

double classical_radius(ClassicalKind kind, int N);

/// Root of |₂F₁(a, b; c; x) − 1| = p/2 for a, b, c > 0 and p in (0, 2].
double hypergeometric_radius(double a, double b, double c, double p);

/// Root of φ₀(r) = (2/p) Σ_{n≥1} φₙ(r) for the power family, p in (0, 2].
double generalized_power_radius(double p);

/// Reference constants quoted alongside the classical results.
namespace reference {
inline constexpr double kBohrRogosinskiSquared = 0.17157287525380990;  // 3 − √8
inline constexpr double kQuarticBohrRadius = 0.385795;   // 1 − 2r − r² − r³ − r⁴ = 0
inline constexpr double kAreaConstant = 16.0 / 9.0;
inline constexpr double kAreaRatioUpper = 9.0 / 8.0;
inline constexpr double kAreaRatioLower = 8.0 / 9.0;
}  // namespace reference

struct TableCell {
  int weight = 0;  ///< exponent of n (table 1) or n + 1 (table 2)
  double M = 0.0;
  std::optional<RootResult> result;
  std::string error;
  double published = 0.0;
  std::string source;
  double abs_diff = 0.0;
  bool matches = false;         ///< |root − published| ≤ kTableAgreement
  bool order_violation = false;  ///< root exceeds the root for the next smaller weight
};

struct TableResult {
  int id = 0;
  std::vector<double> M_values;
  std::vector<TableCell> cells;  ///< weight-major: 3 rows of 9 columns
  int matched = 0;
  int order_violations = 0;
  int failures = 0;
};

inline constexpr double kTableAgreement = 0.002;

/// Table 1 uses weights nᵏ, table 2 uses (n+1)ᵏ, for k = 1, 2, 3.
TableResult table_generate(int table_id, double tol = kDefaultRootTol);

}  // namespace bohr
