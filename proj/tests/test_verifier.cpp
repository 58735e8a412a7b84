#include <doctest.h>

#include <cmath>
#include <random>

#include "bohr/errors.hpp"
#include "bohr/radius_solver.hpp"
#include "bohr/series_kernels.hpp"
#include "bohr/verifier.hpp"

using namespace bohr;

namespace {

const double kSqrt17 = std::sqrt(17.0);

double one_minus_sq(double a) { return (1 - a) * (1 + a); }

}  // namespace

TEST_CASE("sharp constants") {
  CHECK(std::abs(sharp_lambda() - (221 - 43 * kSqrt17) / 64) < 1e-16);
  CHECK(std::abs(sharp_radius() - (kSqrt17 - 3) / 4) < 1e-16);
  CHECK(std::abs(sharp_lambda() - 0.682913) < 1e-6);
  CHECK(std::abs(sharp_radius() - 0.280776) < 1e-6);
}

TEST_CASE("functional for the identity map") {
  for (double r : {0.0, 0.1, 0.2, 0.28}) {
    const double lambda = sharp_lambda();
    CHECK(std::abs(eval_L1(0.0, r, lambda) - (2 * r + r * r / (1 - r) + lambda * r * r / (1 - r * r))) < 1e-15);
  }
}

TEST_CASE("functional equals its assembly from the series pieces") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = unit(rng);
    const double r = 0.95 * unit(rng);
    const double lambda = 2 * unit(rng);
    const double fr = (a + r) / (1 + a * r);
    const double dfr = one_minus_sq(a) / ((1 + a * r) * (1 + a * r));
    const double assembled = fr + r * dfr + moebius_series(a, r, MoebiusPart::B2) +
                             moebius_series(a, r, MoebiusPart::ATerm) +
                             lambda * moebius_series(a, r, MoebiusPart::SrRatio);
    CAPTURE(a);
    CAPTURE(r);
    CHECK(std::abs(eval_L1(a, r, lambda) - assembled) < 1e-12 * std::max(1.0, assembled));
    CHECK(std::abs(eval_L1_excess(a, r, lambda) - (eval_L1(a, r, lambda) - 1)) <
          1e-12 * std::max(1.0, assembled));
  }
}

TEST_CASE("area ratio identity") {
  for (double a : {0.0, 0.3, 0.9}) {
    for (double r : {0.1, 0.5, 0.9}) {
      const double s = moebius_series(a, r, MoebiusPart::SrOverPi);
      CHECK(std::abs(moebius_series(a, r, MoebiusPart::SrRatio) - s / (1 - s)) < 1e-13);
    }
  }
}

TEST_CASE("functional and majorant coincide for the Möbius extremal") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = unit(rng);
    const double r = sharp_radius() * unit(rng);
    const double lambda = sharp_lambda();
    const double l1 = eval_L1(a, r, lambda);
    const double a1 = eval_A1_majorant(a, r, lambda);
    CHECK(l1 <= a1 + 1e-14);
    CHECK(std::abs(l1 - a1) < 1e-13);
  }
}

TEST_CASE("majorant is increasing in r") {
  for (int i = 1; i < 20; ++i) {
    const double a = i / 20.0;
    double previous = eval_A1_majorant(a, 0.0, sharp_lambda());
    for (int j = 1; j <= 100; ++j) {
      const double value = eval_A1_majorant(a, 0.99 * j / 100, sharp_lambda());
      CHECK(value > previous);
      previous = value;
    }
  }
}

TEST_CASE("quintic polynomials") {
  CHECK(std::abs(poly_F(2, 0.0) - (27560 - 6808 * kSqrt17)) < 1e-9);
  CHECK(std::abs(poly_F(2, 0.0) - -510.1031) < 1e-4);
  for (int i = 0; i <= 100; ++i) {
    const double a = i / 100.0;
    CHECK(std::abs(poly_F(1, a) + poly_F(2, a)) < 1e-9);
    CHECK(poly_F(2, a) < 0.0);
  }
  CHECK_THROWS_AS(poly_F(3, 0.5), ParameterError);
  CHECK_THROWS_AS(poly_F(1, 1.5), DomainError);
}

TEST_CASE("excess at the sharp radius factors through the quintic") {
  const double R = sharp_radius();
  for (int i = 1; i < 100; ++i) {
    const double a = i / 100.0;
    const double factored = std::pow(1 - a, 3) * poly_F(2, a) / excess_denominator(a);
    CAPTURE(a);
    CHECK(std::abs(eval_A1_excess(a, R, sharp_lambda()) - factored) < 1e-13);
    CHECK(excess_denominator(a) > 0.0);
    const double direct = one_minus_sq(a) * one_minus_sq(a) * R * R / ((1 - R * R) * (1 - std::pow(a, 4) * R * R));
    CHECK(std::abs(excess_epsilon_coefficient(a) - direct) < 1e-15);
  }
}

TEST_CASE("sharp inequality holds on the grid") {
  const auto report = verify_thm22();
  CHECK(report.passed);
  CHECK(report.worst_margin <= 1e-10);
  CHECK(report.worst_margin > -1e-6);
  CHECK(report.tolerance == 1e-10);
  CHECK(report.witnesses.size() == 2);
  for (const auto& witness : report.witnesses) {
    CHECK(witness.params.at("a") == doctest::Approx(0.99));
    CHECK(witness.params.at("r") == sharp_radius());
  }
  CHECK(verify_thm22(20, 20, 1e-10, 0.5).passed);
  CHECK_FALSE(verify_thm22(20, 20, 1e-10, 1.0).passed);
  CHECK_THROWS_AS(verify_thm22(1, 20), ParameterError);
}

TEST_CASE("sharpness probe") {
  SUBCASE("small increase is detected near a = 1") {
    const auto report = sharpness_probe_thm22(0.01);
    CHECK(report.passed);
    REQUIRE_FALSE(report.witnesses.empty());
    const auto& witness = report.witnesses.front();
    CHECK(witness.params.at("a") > 0.9);
    CHECK(witness.params.at("a") < 1.0);
    CHECK(witness.value > 0.0);
    // The excess of the witness matches the linearization in ε.
    const double a = witness.params.at("a");
    const double linear =
        eval_L1_excess(a, sharp_radius(), sharp_lambda()) + 0.01 * excess_epsilon_coefficient(a);
    CHECK(std::abs(witness.value - linear) < 1e-14);
  }
  SUBCASE("large increase") {
    const auto report = sharpness_probe_thm22(1.0);
    CHECK(report.passed);
    CHECK(report.worst_margin > 0.01);
  }
  SUBCASE("no increase") {
    const auto report = sharpness_probe_thm22(0.0);
    CHECK_FALSE(report.passed);
    for (const auto& witness : report.witnesses) CHECK(witness.value <= 0.0);
    CHECK(report.worst_margin <= 0.0);
  }
}

TEST_CASE("harmonic Bohr radius straddles") {
  struct Case {
    HarmonicClaim claim;
    double below;
    double above;
  };
  const Case cases[] = {
      {{HarmonicClaim::Kind::PH0, 0.431, PhiFamily::poly_weight(1)}, 0.4, 0.5},
      {{HarmonicClaim::Kind::WH0, 0.0, PhiFamily::power()}, 0.2851, 0.2852},
      {{HarmonicClaim::Kind::WH0, 1.0, PhiFamily::power()}, 0.48, 0.50},
      {{HarmonicClaim::Kind::PH0, 0.862, PhiFamily::shift_weight(2)}, 0.05, 0.3},
  };
  for (const auto& c : cases) {
    CAPTURE(c.claim.parameter);
    CAPTURE(c.claim.family.description());
    const auto below = verify_harmonic_bohr(c.claim, c.below);
    CHECK(below.passed);
    CHECK(below.worst_margin <= 0.0);
    const auto above = verify_harmonic_bohr(c.claim, c.above);
    CHECK(above.passed);
    CHECK(above.worst_margin > 0.0);
  }
}

TEST_CASE("extremal Bohr sum equals the equation left side") {
  const HarmonicClaim claims[] = {
      {HarmonicClaim::Kind::PH0, 0.431, PhiFamily::poly_weight(1)},
      {HarmonicClaim::Kind::PH0, 1.0, PhiFamily::power()},
      {HarmonicClaim::Kind::WH0, 0.5, PhiFamily::power()},
  };
  for (const auto& claim : claims) {
    const auto eq = claim.kind == HarmonicClaim::Kind::PH0 ? build_PH0_equation(claim.family, claim.parameter)
                                                           : build_WH0_equation(claim.family, claim.parameter);
    for (double r : {0.1, 0.3, 0.6}) {
      CHECK(std::abs(extremal_bohr_sum(claim, r) - eq.lhs(r)) < 1e-11);
    }
    // The margin changes sign exactly at the solver root.
    const double root = solve_radius(eq).root;
    CHECK(verify_harmonic_bohr(claim, root - 1e-9).worst_margin <= 1e-12);
    CHECK(verify_harmonic_bohr(claim, root + 1e-9).worst_margin > 0.0);
  }
}
