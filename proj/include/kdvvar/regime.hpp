#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace kdv::regime {

enum class Regime { Infeasible, Case1, Case2, Case3 };

std::string_view to_string(Regime r);

/// Constraint values a = E2, b = E3 with their regime. speeds holds C for
/// Case1, (C1, C2) for Case2 and is empty otherwise.
struct ConstraintPoint {
  double a = 0.0;
  double b = 0.0;
  Regime regime = Regime::Infeasible;
  std::vector<double> speeds;
};

/// μ = (36/5)·12^{−5/3}; the feasible set is a > 0, b ≥ −μa^{5/3}.
double mu_const();

/// Relative tolerance on b at the two regime boundaries.
inline constexpr double kBoundaryTol = 1e-9;

/// Case1 on b = −μa^{5/3}, Case2 strictly between that and −μa^{5/3}/2^{2/3},
/// Case3 from −μa^{5/3}/2^{2/3} upwards. Never throws on finite input.
ConstraintPoint classify(double a, double b);

/// (12 ΣC^{3/2}, −(36/5) ΣC^{5/2}) for strictly increasing positive speeds.
std::pair<double, double> forward(std::span<const double> speeds);

/// The speeds 0 < C1 < C2 with forward = (a, b). DomainError outside Case2.
std::pair<double, double> invert(double a, double b);

/// Minimum of E4 on {E2 = a, E3 = b}: E4 of the soliton in Case1/Case2,
/// nullopt in Case3 where no minimizer exists. DomainError if infeasible.
std::optional<double> j_value(double a, double b);

}  // namespace kdv::regime
