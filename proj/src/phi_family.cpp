#include "bohr/phi_family.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <fmt/format.h>

#include "bohr/errors.hpp"

namespace bohr {

namespace {

void require_unit_interval(double r, const char* what) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError(fmt::format("{}: r = {} outside [0, 1]", what, r));
  }
}

double parse_exponent(const std::string& text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !(value >= 0.0) || !std::isfinite(value)) {
    throw ParameterError(fmt::format("invalid family exponent '{}'", text));
  }
  return value;
}

}  // namespace

PhiFamily PhiFamily::power() {
  PhiFamily f;
  f.kind_ = Kind::Power;
  f.description_ = "power";
  return f;
}

PhiFamily PhiFamily::poly_weight(double exponent, bool phi0_override) {
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw ParameterError("poly_weight: exponent must be >= 0");
  }
  PhiFamily f;
  f.kind_ = Kind::PolyWeight;
  f.exponent_ = exponent;
  f.phi0_override_ = phi0_override;
  f.description_ = fmt::format("poly:{}", exponent);
  return f;
}

PhiFamily PhiFamily::shift_weight(double exponent) {
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw ParameterError("shift_weight: exponent must be >= 0");
  }
  PhiFamily f;
  f.kind_ = Kind::ShiftWeight;
  f.exponent_ = exponent;
  f.description_ = fmt::format("shift:{}", exponent);
  return f;
}

PhiFamily PhiFamily::custom(Fn phi, Fn dphi, std::string description, bool phi0_override) {
  if (!phi || !dphi) {
    throw ParameterError("custom family needs both phi and dphi");
  }
  PhiFamily f;
  f.kind_ = Kind::Custom;
  f.phi0_override_ = phi0_override;
  f.description_ = std::move(description);
  f.custom_phi_ = std::move(phi);
  f.custom_dphi_ = std::move(dphi);
  return f;
}

PhiFamily PhiFamily::parse(const std::string& text) {
  if (text == "power") return power();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto head = text.substr(0, colon);
    const auto exponent = parse_exponent(text.substr(colon + 1));
    if (head == "poly") return poly_weight(exponent);
    if (head == "shift") return shift_weight(exponent);
  }
  throw ParameterError(fmt::format("unknown family '{}' (expected power, poly:<k>, shift:<k>)", text));
}

bool PhiFamily::has_integer_exponent() const {
  return exponent_ == 0.0 || exponent_ == 1.0 || exponent_ == 2.0 || exponent_ == 3.0;
}

bool PhiFamily::unit_at_boundary() const {
  switch (kind_) {
    case Kind::Power:
      return true;
    case Kind::PolyWeight:
    case Kind::ShiftWeight:
      return exponent_ == 0.0;
    case Kind::Custom:
      return false;
  }
  return false;
}

double PhiFamily::growth(int n) const {
  switch (kind_) {
    case Kind::Power:
      return 1.0;
    case Kind::PolyWeight:
      return std::pow(static_cast<double>(n), exponent_);
    case Kind::ShiftWeight:
      return std::pow(static_cast<double>(n) + 1.0, exponent_);
    case Kind::Custom:
      break;
  }
  throw ParameterError("growth factor is undefined for custom families");
}

double eval_phi(const PhiFamily& family, int n, double r) {
  require_unit_interval(r, "eval_phi");
  if (n < 0) throw DomainError("eval_phi: n must be >= 0");
  if (n == 0 && family.phi0_override_) return 1.0;
  if (family.kind_ == PhiFamily::Kind::Custom) return family.custom_phi_(n, r);
  return family.growth(n) * std::pow(r, n);
}

double eval_dphi(const PhiFamily& family, int n, double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw DomainError(fmt::format("eval_dphi: r = {} outside [0, 1)", r));
  }
  if (n < 0) throw DomainError("eval_dphi: n must be >= 0");
  if (n == 0 && family.phi0_override_) return 0.0;
  if (family.kind_ == PhiFamily::Kind::Custom) return family.custom_dphi_(n, r);
  if (n == 0) return 0.0;
  return family.growth(n) * static_cast<double>(n) * std::pow(r, n - 1);
}

GMembershipReport check_in_G(const PhiFamily& family, double r_max, int grid,
                             const GMembershipOptions& options) {
  if (!(r_max > 0.0 && r_max < 1.0) || grid < 2) {
    throw DomainError("check_in_G: need 0 < r_max < 1 and grid >= 2");
  }
  GMembershipReport report;
  auto fail = [&](std::string what) {
    report.passed = false;
    report.violated = std::move(what);
    return report;
  };
  auto grid_point = [&](int i) { return r_max * static_cast<double>(i) / (grid - 1); };

  for (int n = 0; n <= options.max_index; ++n) {
    double previous = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double r = grid_point(i);
      const double value = eval_phi(family, n, r);
      if (!(value >= 0.0)) {
        return fail(fmt::format("nonnegativity: phi_{}({}) = {}", n, r, value));
      }
      if (i > 0 && value + 1e-15 < previous) {
        return fail(fmt::format("monotonicity: phi_{} decreases near r = {}", n, r));
      }
      previous = value;
    }
  }

  // Sup over the tail window of successive ratios. Pairs that have underflowed
  // into the subnormal range carry no information and count as 0.
  constexpr double kUnderflow = 1e-280;
  auto ratio = [](double next, double current) {
    if (current < kUnderflow) return next < kUnderflow ? 0.0 : std::numeric_limits<double>::infinity();
    return next / current;
  };
  for (int n = options.tail_start; n < 2 * options.tail_start; ++n) {
    for (int i = 1; i < grid; ++i) {
      const double r = grid_point(i);
      report.tail_ratio =
          std::max(report.tail_ratio, ratio(eval_phi(family, n + 1, r), eval_phi(family, n, r)));
      report.tail_derivative_ratio = std::max(
          report.tail_derivative_ratio, ratio(eval_dphi(family, n + 1, r), eval_dphi(family, n, r)));
    }
  }
  if (!(report.tail_ratio < 1.0)) {
    return fail(fmt::format("tail ratio of sum phi_n is {} (not < 1)", report.tail_ratio));
  }
  if (!(report.tail_derivative_ratio < 1.0)) {
    return fail(fmt::format("tail ratio of sum phi_n' is {} (not < 1)", report.tail_derivative_ratio));
  }
  report.passed = true;
  return report;
}

}  // namespace bohr
