#pragma once

#include "bohr/series_value.hpp"

namespace bohr::specfun {

/// Arguments of the Hurwitz–Lerch transcendent Φ(z, 1, a).
///
/// z must lie in [-1, 1); z = -1 is the conditionally convergent
/// alternating case. a must be positive.
struct PhiArgs {
  double z = 0.0;
  double a = 1.0;
};

/// Digamma ψ(x) = Γ'(x)/Γ(x) for x > 0.
///
/// Upward recurrence until x >= 6, then the asymptotic expansion with
/// Bernoulli coefficients through B₂₀.
double digamma(double x);

/// Φ(z, 1, a) = Σ_{n≥0} zⁿ/(n+a) with a certified error bound ≤ tol.
///
/// For z = -1 the terms are summed in pairs and the remaining tail is
/// closed with an Euler–Maclaurin expansion whose first omitted term bounds
/// the error. For -1 < z < 1 the bound is geometric.
SeriesValue lerch_phi(const PhiArgs& args, double tol);

/// Φ(-1, 1, a) through the digamma identity ½(ψ((a+1)/2) − ψ(a/2)).
double lerch_phi_via_digamma(double a);

/// H(α) = Φ(-1, 1, 1 + 1/α), α > 0.
double h_alpha(double alpha);

/// Gauss hypergeometric ₂F₁(a, b; c; z) for z in [0, 1) by direct series.
SeriesValue gauss_2f1(double a, double b, double c, double z, double tol);

}  // namespace bohr::specfun
