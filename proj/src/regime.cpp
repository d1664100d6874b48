#include "kdvvar/regime.hpp"

#include <cmath>

#include "kdvvar/error.hpp"
#include "kdvvar/powersum.hpp"
#include "kdvvar/soliton.hpp"

namespace kdv::regime {

namespace {

bool near(double x, double ref) { return std::abs(x - ref) <= kBoundaryTol * std::abs(ref); }

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Case1:
      return "Case1";
    case Regime::Case2:
      return "Case2";
    case Regime::Case3:
      return "Case3";
    default:
      return "Infeasible";
  }
}

double mu_const() { return 36.0 / 5.0 * std::pow(12.0, -5.0 / 3.0); }

ConstraintPoint classify(double a, double b) {
  ConstraintPoint p{a, b, Regime::Infeasible, {}};
  if (!std::isfinite(a) || !std::isfinite(b) || !(a > 0.0)) return p;
  const double lower = -mu_const() * std::pow(a, 5.0 / 3.0);
  const double split = lower / std::pow(2.0, 2.0 / 3.0);
  if (near(b, lower)) {
    p.regime = Regime::Case1;
    p.speeds = {std::pow(a / 12.0, 2.0 / 3.0)};
  } else if (b < lower) {
    p.regime = Regime::Infeasible;
  } else if (near(b, split) || b > split) {
    p.regime = Regime::Case3;
  } else {
    p.regime = Regime::Case2;
    const auto [c1, c2] = invert(a, b);
    p.speeds = {c1, c2};
  }
  return p;
}

std::pair<double, double> forward(std::span<const double> speeds) {
  SolitonParams::make({speeds.begin(), speeds.end()}, std::vector<double>(speeds.size(), 0.0));
  return {closed_form_energy(2, speeds), closed_form_energy(3, speeds)};
}

std::pair<double, double> invert(double a, double b) {
  if (!(a > 0.0) || !(b < 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("invert: (a, b) is not in Case2");
  }
  const double lower = -mu_const() * std::pow(a, 5.0 / 3.0);
  const double split = lower / std::pow(2.0, 2.0 / 3.0);
  if (near(b, lower) || b < lower || near(b, split) || b > split) {
    throw DomainError("invert: (a, b) is not in Case2");
  }
  const double A = std::cbrt(a / 12.0);
  const double B = std::pow(-5.0 * b / 36.0, 0.2);
  const auto sols = powersum::solve_two_term(powersum::System::one_one, A, B);
  if (sols.size() != 2) throw DomainError("invert: (a, b) is not in Case2");
  // sols[0] = (α, β) with α < β; y = √C
  return {sols[0].y1 * sols[0].y1, sols[0].y2 * sols[0].y2};
}

std::optional<double> j_value(double a, double b) {
  const auto p = classify(a, b);
  switch (p.regime) {
    case Regime::Case1:
    case Regime::Case2:
      return closed_form_energy(4, p.speeds);
    case Regime::Case3:
      return std::nullopt;
    default:
      throw DomainError("j_value: (a, b) is infeasible");
  }
}

}  // namespace kdv::regime
