#pragma once

#include <functional>
#include <string>

namespace bohr {

/// A sequence {φₙ(r)} of weight functions on [0, 1].
///
/// Power:        φₙ(r) = rⁿ
/// PolyWeight:   φₙ(r) = n^k rⁿ
/// ShiftWeight:  φₙ(r) = (n+1)^k rⁿ
/// Custom:       user callables for φₙ and φₙ'
///
/// With `phi0_override` set, φ₀ ≡ 1 regardless of kind. Values are immutable
/// once built and safe to share between threads.
class PhiFamily {
 public:
  enum class Kind { Power, PolyWeight, ShiftWeight, Custom };

  using Fn = std::function<double(int n, double r)>;

  static PhiFamily power();
  static PhiFamily poly_weight(double exponent, bool phi0_override = true);
  static PhiFamily shift_weight(double exponent);
  static PhiFamily custom(Fn phi, Fn dphi, std::string description, bool phi0_override = false);

  /// Parses the CLI spelling: `power`, `poly:<k>`, `shift:<k>`.
  static PhiFamily parse(const std::string& text);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  bool phi0_override() const { return phi0_override_; }
  const std::string& description() const { return description_; }

  /// True when the exponent is one of 0, 1, 2, 3 exactly.
  bool has_integer_exponent() const;

  /// φₙ(r) = 1 at r = 1 for every n (the boundary hypothesis of the
  /// harmonic radius theorems).
  bool unit_at_boundary() const;

  /// True for the closed-form kinds, whose successive-term ratio obeys
  /// φₙ₊₁(r)/φₙ(r) ≤ r (1 + 1/n)^exponent.
  bool has_ratio_bound() const { return kind_ != Kind::Custom; }

  /// The growth factor g(n) with φₙ(r) = g(n) rⁿ for n ≥ 1 (closed-form kinds).
  double growth(int n) const;

 private:
  PhiFamily() = default;

  Kind kind_ = Kind::Power;
  double exponent_ = 0.0;
  bool phi0_override_ = false;
  std::string description_;
  Fn custom_phi_;
  Fn custom_dphi_;

  friend double eval_phi(const PhiFamily&, int, double);
  friend double eval_dphi(const PhiFamily&, int, double);
};

/// φₙ(r) for r in [0, 1].
double eval_phi(const PhiFamily& family, int n, double r);

/// φₙ'(r) for r in [0, 1).
double eval_dphi(const PhiFamily& family, int n, double r);

struct GMembershipReport {
  bool passed = false;
  /// Empty when passed; otherwise the first violated predicate.
  std::string violated;
  /// sup of φₙ₊₁/φₙ over the tail window and grid.
  double tail_ratio = 0.0;
  double tail_derivative_ratio = 0.0;
};

struct GMembershipOptions {
  int max_index = 64;      ///< indices 0..max_index for sign/monotonicity
  int tail_start = 512;    ///< tail ratio window [tail_start, 2 tail_start]
};

/// Sampled check of class-𝒢 membership on [0, r_max]: nonnegativity,
/// monotonicity in r, and a uniform tail ratio < 1 for Σφₙ and Σφₙ'.
GMembershipReport check_in_G(const PhiFamily& family, double r_max, int grid = 256,
                             const GMembershipOptions& options = {});

}  // namespace bohr
