#pragma once

#include <variant>

#include "bohr/coefficients.hpp"
#include "bohr/phi_family.hpp"

namespace bohr {

/// Möbius self-map (a + z)/(1 + a z) of the unit disk, a in [0, 1).
struct MoebiusExtremal {
  double a = 0.0;

  static MoebiusExtremal make(double a);

  double coeff(int n) const;
  /// Values on the positive real axis.
  double value(double r) const;
  double derivative(double r) const;
  /// Σ |a_n| rⁿ in closed form.
  double majorant(double r) const;
  CoefficientSequence coefficients() const;
};

/// Extremal harmonic map z + 2M Σ zⁿ/(n(n−1)).
struct HarmonicPH0Extremal {
  double M = 0.0;

  static HarmonicPH0Extremal make(double M);

  /// Combined magnitude |a_n| + |b_n|; 0 at n = 0.
  double coeff(int n) const;
  CoefficientSequence coefficients() const;
};

/// Extremal harmonic map z + Σ 2zⁿ/(αn² + (1−α)n).
struct HarmonicWH0Extremal {
  double alpha = 0.0;

  static HarmonicWH0Extremal make(double alpha);

  double coeff(int n) const;
  CoefficientSequence coefficients() const;
};

using HarmonicExtremal = std::variant<HarmonicPH0Extremal, HarmonicWH0Extremal>;

enum class GrowthSide { Lower, Upper };

/// Growth envelope for the PH0 class: r + 2M Σ (±1)^{n−1} rⁿ/(n(n−1)).
double growth_PH0(double M, double r, GrowthSide side);

/// Growth envelope for the WH0 class, α in [0, 1].
double growth_WH0(double alpha, double r, GrowthSide side);

/// Upper limit on M for the PH0 radius equation to have a root.
/// Infinite when every M > 0 is admissible.
double admissible_M_bound(const PhiFamily& family);

/// Lower bound on d(f(0), ∂f(𝔻)), i.e. the lower growth envelope at r = 1.
double dist_lower_bound(const HarmonicExtremal& model);

}  // namespace bohr
