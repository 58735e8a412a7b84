#pragma once

#include <map>
#include <string>
#include <vector>

#include "bohr/phi_family.hpp"

namespace bohr {

/// The sharp constant (221 − 43√17)/64 on the area-ratio term.
double sharp_lambda();
/// The sharp radius (√17 − 3)/4.
double sharp_radius();

struct Witness {
  std::map<std::string, double> params;
  double value = 0.0;
};

struct VerificationReport {
  std::string claim_id;
  std::string grid;
  double worst_margin = 0.0;  ///< max of lhs − rhs over the grid
  double tolerance = 0.0;
  std::vector<Witness> witnesses;
  bool passed = false;
};

/// Bohr–Rogosinski functional with area term for the Möbius map with
/// parameter a, evaluated at z = r.
double eval_L1(double a, double r, double lambda);
/// eval_L1 − 1 without the cancellation in |f(r)| − 1.
double eval_L1_excess(double a, double r, double lambda);

/// Majorant of the functional over every Schur function with |f(0)| = a.
double eval_A1_majorant(double a, double r, double lambda);
double eval_A1_excess(double a, double r, double lambda);

/// Quintic numerator polynomials (which = 1 or 2) with the printed
/// coefficients in ℚ(√17).
double poly_F(int which, double a);
/// Denominator of the factored excess at the sharp radius.
double excess_denominator(double a);
/// Coefficient of ε in the excess at the sharp radius when λ is increased by ε.
double excess_epsilon_coefficient(double a);

/// Sweep a in {1/(n_a+1), …, n_a/(n_a+1)} and n_r uniform radii on
/// [0, sharp_radius()]; passes when both the majorant and the functional stay
/// at most 1 + tol.
VerificationReport verify_thm22(int grid_a = 99, int grid_r = 100, double tol = 1e-10,
                                double lambda = sharp_lambda());

/// Search for a with eval_L1 > 1 at the sharp radius with λ = sharp + ε.
/// Passes when such a witness exists. Samples the uniform grid plus a log
/// grid a = 1 − 10^−t that resolves the (1−a)² scale of the excess.
VerificationReport sharpness_probe_thm22(double epsilon, int a_grid = 99);

struct HarmonicClaim {
  enum class Kind { PH0, WH0 };
  Kind kind = Kind::PH0;
  double parameter = 0.0;  ///< M or α
  PhiFamily family = PhiFamily::power();
};

/// Generalized Bohr sum A_f(r) for the extremal member of the class.
double extremal_bohr_sum(const HarmonicClaim& claim, double r);

/// Below the radius A_f(r) ≤ d + tol must hold; above it the extremal must
/// violate strictly. worst_margin is A_f(r) − d.
VerificationReport verify_harmonic_bohr(const HarmonicClaim& claim, double r, double tol = 1e-12);

}  // namespace bohr
