#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bohr/errors.hpp"
#include "bohr/function_classes.hpp"
#include "bohr/radius_solver.hpp"
#include "bohr/specfun.hpp"

using namespace bohr;
using std::numbers::ln2;

namespace {

// Plain bisection on an explicit function, independent of the solver.
template <class F>
double bisect(F&& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void check_solver_properties(const RadiusEquation& eq, const RootResult& root) {
  CHECK(root.residual < 1e-12 * std::max(1.0, std::abs(eq.rhs)));
  CHECK(std::abs(eq.residual(root.root)) == root.residual);
  CHECK(root.bracket.second - root.bracket.first <= 1e-13);
  CHECK(root.bracket.first <= root.root);
  CHECK(root.root <= root.bracket.second);
  CHECK(root.monotone_certificate);
  CHECK(count_sign_changes(eq) == 1);
}

}  // namespace

TEST_CASE("power family PH0 equation reduces to the upper growth envelope") {
  const double M = 0.5;
  const auto eq = build_PH0_equation(PhiFamily::power(), M);
  const auto root = solve_radius(eq);
  check_solver_properties(eq, root);
  CHECK(std::abs(growth_PH0(M, root.root, GrowthSide::Upper) - growth_PH0(M, 1.0, GrowthSide::Lower)) < 1e-12);
}

TEST_CASE("linear weight PH0 equation in explicit form") {
  const double M = 0.431;
  const auto eq = build_PH0_equation(PhiFamily::poly_weight(1), M);
  const auto root = solve_radius(eq);
  check_solver_properties(eq, root);
  const double rhs = 1 + 2 * M * (1 - 2 * ln2);
  const double expected = bisect([&](double r) { return r - 2 * M * r * std::log1p(-r) - rhs; }, 0.0, 0.99);
  CHECK(std::abs(root.root - expected) < 1e-13);
  CHECK(std::abs(root.root - 0.443) <= 0.002);
  CHECK_FALSE(eq.info.unit_boundary_hypothesis);
  CHECK(eq.info.kind == "ph0");
  CHECK(eq.info.parameter == M);
}

TEST_CASE("cubic weight PH0 root") {
  const auto eq = build_PH0_equation(PhiFamily::poly_weight(3), 0.862);
  const auto root = solve_radius(eq);
  check_solver_properties(eq, root);
  CHECK(std::abs(root.root - 0.149) <= 0.002);
}

TEST_CASE("admissibility and sign checks") {
  CHECK_THROWS_AS(build_PH0_equation(PhiFamily::power(), 2.0), AdmissibilityError);
  CHECK_THROWS_AS(build_PH0_equation(PhiFamily::power(), 0.0), AdmissibilityError);
  CHECK_THROWS_AS(build_PH0_equation(PhiFamily::power(), 1.2944), AdmissibilityError);
  CHECK_THROWS_AS(build_WH0_equation(PhiFamily::power(), 1.5), DomainError);
  // Weights too small for the left side ever to reach the right side.
  const auto faint = PhiFamily::custom([](int n, double r) { return n == 0 ? 0.0 : 1e-3 * std::pow(r, n); },
                                       [](int n, double r) { return n == 0 ? 0.0 : 1e-3 * n * std::pow(r, n - 1); },
                                       "faint");
  CHECK_THROWS_AS(build_PH0_equation(faint, 0.5), SignCheckError);
  CHECK_THROWS_AS(solve_radius(build_PH0_equation(PhiFamily::power(), 0.5), 0.0), DomainError);
}

TEST_CASE("WH0 power roots") {
  SUBCASE("alpha = 0") {
    const auto eq = build_WH0_equation(PhiFamily::power(), 0.0);
    const auto root = solve_radius(eq);
    check_solver_properties(eq, root);
    CHECK(std::abs(root.root - 0.285194) <= 1e-5);
    // r − 2 ln(1−r) − 2r = 2 ln 2 − 1
    const double expected =
        bisect([](double r) { return r - 2 * std::log1p(-r) - 2 * r - (2 * ln2 - 1); }, 0.0, 0.9);
    CHECK(std::abs(root.root - expected) < 1e-13);
  }
  SUBCASE("alpha = 1") {
    const auto eq = build_WH0_equation(PhiFamily::power(), 1.0);
    const auto root = solve_radius(eq);
    check_solver_properties(eq, root);
    // r + 2 Σ rⁿ/n² = 1 + 2(π²/12 − 1), root computed to 20 digits independently.
    CHECK(std::abs(root.root - 0.4888879197) < 1e-9);
  }
  SUBCASE("alpha grid") {
    double previous = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double alpha = 0.1 * i;
      const auto eq = build_WH0_equation(PhiFamily::power(), alpha);
      const auto root = solve_radius(eq);
      CAPTURE(alpha);
      check_solver_properties(eq, root);
      CHECK(root.root > previous);
      previous = root.root;
    }
  }
}

TEST_CASE("WH0 linear weight equation matches its hypergeometric form") {
  for (double alpha : {0.25, 0.5, 1.0}) {
    const auto eq = build_WH0_equation(PhiFamily::poly_weight(1), alpha);
    const auto root = solve_radius(eq);
    check_solver_properties(eq, root);
    const double b = 1 + 1 / alpha;
    const double rhs = eq.rhs;
    const double expected = bisect(
        [&](double r) {
          return r + 2 * r * r / (1 + alpha) * specfun::gauss_2f1(1, b, b + 1, r, 1e-13).value - rhs;
        },
        0.0, 0.9);
    CAPTURE(alpha);
    CHECK(std::abs(root.root - expected) < 1e-11);
  }
}

TEST_CASE("roots vanish as M approaches the admissibility bound") {
  for (const auto& family : {PhiFamily::power(), PhiFamily::poly_weight(1), PhiFamily::shift_weight(3)}) {
    const auto eq = build_PH0_equation(family, 1.29433);
    const auto root = solve_radius(eq);
    check_solver_properties(eq, root);
    CHECK(root.root < 1e-4);
    CHECK(root.root > 0.0);
  }
}

TEST_CASE("solving is deterministic") {
  const auto eq = build_PH0_equation(PhiFamily::shift_weight(2), 1.21);
  const auto first = solve_radius(eq);
  const auto second = solve_radius(eq);
  CHECK(first.root == second.root);
  CHECK(first.iterations == second.iterations);
}

TEST_CASE("sign grid covers tiny and large radii") {
  const auto grid = sign_grid();
  CHECK(grid.size() == 1024);
  CHECK(grid.front() > 0.0);
  CHECK(grid.front() < 1e-11);
  CHECK(grid.back() < 1.0);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("classical radii") {
  CHECK(std::abs(classical_radius(ClassicalKind::Rogosinski, 1) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(classical_radius(ClassicalKind::RogosinskiDoubled, 1) - (std::sqrt(5.0) - 2.0)) < 1e-12);
  for (int N = 2; N <= 6; ++N) {
    for (const auto kind : {ClassicalKind::Rogosinski, ClassicalKind::RogosinskiDoubled}) {
      const double factor = kind == ClassicalKind::Rogosinski ? 1.0 : 2.0;
      const double expected =
          bisect([&](double r) { return factor * (1 + r) * std::pow(r, N) - (1 - r) * (1 - r); }, 0.0, 1.0);
      CAPTURE(N);
      CHECK(std::abs(classical_radius(kind, N) - expected) < 1e-13);
    }
  }
  // Radii grow with N.
  CHECK(classical_radius(ClassicalKind::Rogosinski, 3) > classical_radius(ClassicalKind::Rogosinski, 2));
  CHECK_THROWS_AS(classical_radius(ClassicalKind::Rogosinski, 0), ParameterError);
}

TEST_CASE("hypergeometric and generalized radii") {
  // −ln(1−x)/x − 1 = 1, root computed independently.
  CHECK(std::abs(hypergeometric_radius(1, 1, 2, 2) - 0.796812130020020) < 1e-12);
  const double expected = bisect([](double x) { return -std::log1p(-x) / x - 1.5; }, 1e-6, 0.999);
  CHECK(std::abs(hypergeometric_radius(1, 1, 2, 1) - expected) < 1e-12);
  CHECK(std::abs(generalized_power_radius(1.0) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(generalized_power_radius(2.0) - 0.5) < 1e-12);
  CHECK_THROWS_AS(hypergeometric_radius(-1, 1, 2, 1), ParameterError);
  CHECK_THROWS_AS(hypergeometric_radius(1, 1, 2, 2.5), ParameterError);
  CHECK_THROWS_AS(generalized_power_radius(0.0), ParameterError);
  // ₂F₁(1,1;3;1) − 1 = 1 < p/2 never reached when p = 2.5 is disallowed; with
  // c − a − b > 0 and too large a target there is no root.
  CHECK_THROWS_AS(hypergeometric_radius(0.5, 0.5, 3, 2), SignCheckError);
}

TEST_CASE("reference constants") {
  CHECK(std::abs(reference::kBohrRogosinskiSquared - (3 - std::sqrt(8.0))) < 4e-16);
  const double quartic = bisect([](double r) { return -(1 - 2 * r - r * r - r * r * r - r * r * r * r); }, 0, 1);
  CHECK(std::abs(reference::kQuarticBohrRadius - quartic) < 1e-6);
}

TEST_CASE("table generation") {
  for (int id : {1, 2}) {
    const auto table = table_generate(id);
    CAPTURE(id);
    CHECK(table.cells.size() == 27);
    CHECK(table.failures == 0);
    CHECK(table.order_violations == 0);
    for (const auto& cell : table.cells) {
      REQUIRE(cell.result);
      CHECK(cell.result->residual < 1e-12);
      CHECK(cell.result->monotone_certificate);
      CHECK(cell.abs_diff == std::abs(cell.result->root - cell.published));
      CHECK(cell.matches == (cell.abs_diff <= kTableAgreement));
      CHECK_FALSE(cell.source.empty());
    }
  }
  const auto first = table_generate(1);
  CHECK(first.matched == 26);
  // (n², M = 1.210) is the only disagreement with the printed table.
  const auto& odd = first.cells[9 + 2];
  CHECK(odd.weight == 2);
  CHECK(odd.M == 1.210);
  CHECK_FALSE(odd.matches);
  CHECK(std::abs(odd.result->root - 0.0517033) < 1e-6);
  CHECK(std::abs(first.cells[0].result->root - 0.443251) < 1e-6);

  const auto second = table_generate(2);
  CHECK(second.matched == 23);
  for (int j = 0; j < 4; ++j) CHECK_FALSE(second.cells[18 + j].matches);
  CHECK(std::abs(second.cells[18].result->root - 0.186897) < 1e-6);
  CHECK_THROWS_AS(table_generate(3), ParameterError);
}
