#pragma once

#include <string_view>
#include <vector>

namespace kdv::powersum {

/// g(t) = (1+t⁵)³/(1+t³)⁵
double g_fn(double t);
/// h(t) = (2+t⁵)³/(2+t³)⁵
double h_fn(double t);
/// k(t) = (1+t⁷)⁵/(1+t⁵)⁷
double k_fn(double t);

/// 2^{−2/15} and 3^{−2/15}: the lower ends of the feasible ratio B/A for two
/// and three parts.
double ratio_floor(int parts);

enum class System { one_one, two_one };

std::string_view to_string(System s);
/// "one_one" / "two_one"; throws InvalidInput otherwise.
System parse_system(std::string_view name);

/// Solution of
///   one_one:  y1³ + y2³ = A³,   y1⁵ + y2⁵ = B⁵
///   two_one: 2y1³ + y2³ = A³,  2y1⁵ + y2⁵ = B⁵
/// theta is min/max for one_one and y2/y1 for two_one (+∞ when y1 = 0).
struct PowerSumSolution {
  double y1 = 0.0;
  double y2 = 0.0;
  System system = System::one_one;
  double theta = 0.0;
};

/// Relative tolerance used to snap B/A onto 1, 2^{−2/15} and 3^{−2/15}.
inline constexpr double kBoundaryTol = 1e-12;

/// All solutions in the closed first quadrant. one_one solutions come as
/// (α, β), (β, α) with α < β; two_one solutions are ordered by theta.
/// Throws InvalidInput for A, B ≤ 0 and DomainError for B/A > 1.
std::vector<PowerSumSolution> solve_two_term(System system, double A, double B);

/// y1⁷ + y2⁷ for the one_one solution with y1 ≤ y2. DomainError unless
/// 2^{−2/15} ≤ B/A ≤ 1.
double m_value(double A, double B);

/// x1⁷ + x2⁷ + x3⁷ − m((Σx³)^{1/3}, (Σx⁵)^{1/5}) for x1 ≥ x2 ≥ x3 > 0.
/// DomainError when the induced ratio is outside the two-part range.
double excess_E(double x1, double x2, double x3);

/// (1/k)^{2/15} ≤ B/A ≤ 1.
bool ratio_bound_check(int k, double A, double B);

/// Minimum of Σx_i⁷ over Σx_i³ ≤ A³, Σx_i⁵ ≥ B⁵, x_1 ≥ … ≥ x_n ≥ 0. For each
/// part count k ≤ n the ratio simplex is scanned on a lattice and the best
/// lattice point refined by Nelder–Mead on its support; the overall best
/// wins, fewer parts on ties within 1e−12 relative.
struct BruteForceResult {
  double value = 0.0;
  std::vector<double> point;
  /// Number of nonzero entries of point.
  int support = 0;
};

inline constexpr int kDefaultResolution = 400;

BruteForceResult brute_force_min_x7(double A, double B, int n, int resolution = kDefaultResolution);

/// Determinant of the bordered Hessian of the Lagrangian for
/// min Σx⁷ s.t. Σx³, Σx⁵ fixed, at Q = (γ, γ, δ), next to 6300γ⁷δ⁴(γ²−δ²)³.
struct HessianDet {
  double numeric = 0.0;
  double closed_form = 0.0;
};

HessianDet hessian_det(double gamma, double delta);

}  // namespace kdv::powersum
