#include "kdvvar/powersum.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_linalg.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <string>

#include "kdvvar/error.hpp"
#include "kdvvar/kernels.hpp"

namespace kdv::powersum {

namespace {

double cube(double x) { return x * x * x; }
double pow5(double x) { return x * x * x * x * x; }
double pow7(double x) { return pow5(x) * x * x; }

// h(1/s), finite on [0, 1]
double h_inverted(double s) { return cube(1.0 + 2.0 * pow5(s)) / pow5(1.0 + 2.0 * cube(s)); }

// Root of a decreasing f on [0, 1] with f(0) ≥ target ≥ f(1).
double bisect_decreasing(double (*f)(double), double target) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-16 * hi) break;
  }
  return 0.5 * (lo + hi);
}

bool near(double x, double ref) { return std::abs(x - ref) <= kBoundaryTol * std::abs(ref); }

void require_positive(double A, double B) {
  if (!std::isfinite(A) || !std::isfinite(B) || !(A > 0.0) || !(B > 0.0)) {
    throw InvalidInput("power sums: A and B must be positive and finite");
  }
}

// B/A snapped to the case boundaries.
double checked_ratio(double A, double B) {
  require_positive(A, B);
  const double r = B / A;
  if (near(r, 1.0)) return 1.0;
  if (r > 1.0) throw DomainError("power sums: B/A > 1 is infeasible");
  return r;
}

PowerSumSolution one_one_from_theta(double A, double theta, bool small_first) {
  const double big = A / std::cbrt(1.0 + cube(theta));
  const double small = theta * big;
  return small_first ? PowerSumSolution{small, big, System::one_one, theta}
                     : PowerSumSolution{big, small, System::one_one, theta};
}

// y2 = t·y1, 2y1³ + y2³ = A³
PowerSumSolution two_one_from_t(double A, double t) {
  const double y1 = A / std::cbrt(2.0 + cube(t));
  return {y1, t * y1, System::two_one, t};
}

PowerSumSolution two_one_from_s(double A, double s) {
  // t = 1/s > 1; y1 = s·y2, 2s³y2³ + y2³ = A³
  const double y2 = A / std::cbrt(1.0 + 2.0 * cube(s));
  return {s * y2, y2, System::two_one, s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity()};
}

}  // namespace

double g_fn(double t) { return cube(1.0 + pow5(t)) / pow5(1.0 + cube(t)); }
double h_fn(double t) { return cube(2.0 + pow5(t)) / pow5(2.0 + cube(t)); }
double k_fn(double t) { return pow5(1.0 + pow7(t)) / pow7(1.0 + pow5(t)); }

double ratio_floor(int parts) {
  if (parts < 1) throw InvalidInput("ratio_floor: parts must be positive");
  return std::pow(static_cast<double>(parts), -2.0 / 15.0);
}

std::string_view to_string(System s) { return s == System::one_one ? "one_one" : "two_one"; }

System parse_system(std::string_view name) {
  if (name == "one_one") return System::one_one;
  if (name == "two_one") return System::two_one;
  throw InvalidInput("unknown system '" + std::string(name) + "' (expected one_one or two_one)");
}

std::vector<PowerSumSolution> solve_two_term(System system, double A, double B) {
  const double r = checked_ratio(A, B);
  const double r15 = std::pow(r, 15);
  const double floor2 = ratio_floor(2), floor3 = ratio_floor(3);

  if (system == System::one_one) {
    if (r == 1.0) {
      return {{0.0, A, System::one_one, 0.0}, {A, 0.0, System::one_one, 0.0}};
    }
    if (near(r, floor2)) {
      const double y = A / std::cbrt(2.0);
      return {{y, y, System::one_one, 1.0}};
    }
    if (r < floor2) return {};
    const double theta = bisect_decreasing(g_fn, r15);
    return {one_one_from_theta(A, theta, true), one_one_from_theta(A, theta, false)};
  }

  // two_one: h falls from 1/4 to 1/9 on [0, 1] and rises to 1 on [1, ∞)
  if (r == 1.0) return {{0.0, A, System::two_one, std::numeric_limits<double>::infinity()}};
  std::vector<PowerSumSolution> out;
  if (near(r, floor3)) {
    const double y = A / std::cbrt(3.0);
    return {{y, y, System::two_one, 1.0}};
  }
  if (r < floor3) return {};
  if (near(r, floor2)) {
    out.push_back({A / std::cbrt(2.0), 0.0, System::two_one, 0.0});
  } else if (r < floor2) {
    out.push_back(two_one_from_t(A, bisect_decreasing(h_fn, r15)));
  }
  out.push_back(two_one_from_s(A, bisect_decreasing(h_inverted, r15)));
  return out;
}

double m_value(double A, double B) {
  const double r = checked_ratio(A, B);
  const double floor2 = ratio_floor(2);
  if (r < floor2 && !near(r, floor2)) {
    throw DomainError("m_value: B/A below 2^(-2/15)");
  }
  const double theta = near(r, floor2) ? 1.0 : (r == 1.0 ? 0.0 : bisect_decreasing(g_fn, std::pow(r, 15)));
  const auto s = one_one_from_theta(A, theta, true);
  return pow7(s.y1) + pow7(s.y2);
}

double excess_E(double x1, double x2, double x3) {
  for (double x : {x1, x2, x3}) {
    if (!std::isfinite(x)) throw InvalidInput("excess_E: non-finite input");
  }
  if (!(x1 >= x2 && x2 >= x3 && x3 > 0.0)) throw InvalidInput("excess_E: need x1 >= x2 >= x3 > 0");
  const double a = std::cbrt(cube(x1) + cube(x2) + cube(x3));
  const double b = std::pow(pow5(x1) + pow5(x2) + pow5(x3), 0.2);
  const double floor2 = ratio_floor(2);
  if (b / a < floor2 && !near(b / a, floor2)) {
    throw DomainError("excess_E: induced ratio B/A below 2^(-2/15)");
  }
  return pow7(x1) + pow7(x2) + pow7(x3) - m_value(a, b);
}

bool ratio_bound_check(int k, double A, double B) {
  if (k < 1) throw InvalidInput("ratio_bound_check: k must be at least 1");
  require_positive(A, B);
  const double r = B / A;
  const double lo = ratio_floor(k);
  return (r >= lo || near(r, lo)) && (r <= 1.0 || near(r, 1.0));
}

namespace {

// Scale-free score (Σr⁷)⁵/(Σr⁵)⁷ with r = (1, tail...); infeasible or
// unordered ratios score +∞.
double penalised_score(std::span<const double> tail, double ratio15) {
  double s3 = 1.0, s5 = 1.0, s7 = 1.0, prev = 1.0;
  for (double r : tail) {
    if (!(r >= 0.0) || r > prev) return std::numeric_limits<double>::infinity();
    prev = r;
    s3 += cube(r);
    s5 += pow5(r);
    s7 += pow7(r);
  }
  if (ratio15 * pow5(s3) > cube(s5) * (1.0 + 1e-12)) return std::numeric_limits<double>::infinity();
  return pow5(s7) / pow7(s5);
}

double refine_objective(const gsl_vector* v, void* data) {
  const double ratio15 = *static_cast<const double*>(data);
  const double s = penalised_score({v->data, v->size}, ratio15);
  return std::isfinite(s) ? s : 1e300;
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* s) const { gsl_multimin_fminimizer_free(s); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

std::vector<double> refine(std::vector<double> start, double ratio15, double step) {
  const std::size_t n = start.size();
  if (n == 0) return start;
  gsl_set_error_handler_off();
  gsl_multimin_function f{&refine_objective, n, &ratio15};
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n)), ss(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x.get(), i, start[i]);
    gsl_vector_set(ss.get(), i, step);
  }
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(s.get(), &f, x.get(), ss.get());
  for (int iter = 0; iter < 5000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_fminimizer_size(s.get()) < 1e-14) break;
  }
  std::vector<double> best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = gsl_vector_get(s->x, i);
  return best;
}

}  // namespace

BruteForceResult brute_force_min_x7(double A, double B, int n, int resolution) {
  require_positive(A, B);
  if (n < 1 || n > 6) throw InvalidInput("brute_force_min_x7: n must be in [1, 6]");
  if (resolution < 2) throw InvalidInput("brute_force_min_x7: resolution must be at least 2");
  if (!ratio_bound_check(n, A, B)) throw DomainError("brute_force_min_x7: infeasible (A, B) for n parts");

  const double ratio_ba = std::min(B / A, 1.0);
  const double ratio15 = std::pow(ratio_ba, 15);

  // Best refined point with at most k parts, for each k. A coarse lattice
  // point near the feasibility edge can carry a spurious one-step part, so
  // every part count gets its own scan and refinement.
  std::vector<double> best_tail;
  double best_score = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int k = 1; k <= n; ++k) {
    const auto lattice = kernels::parallel::lattice_search(ratio_ba, k, resolution);
    if (!lattice.found) continue;
    std::vector<double> tail;
    for (int idx : lattice.index) {
      if (idx > 0) tail.push_back(static_cast<double>(idx) / resolution);
    }
    auto refined = refine(tail, ratio15, 0.5 / resolution);
    if (penalised_score(refined, ratio15) < penalised_score(tail, ratio15)) tail = std::move(refined);
    while (!tail.empty() && tail.back() == 0.0) tail.pop_back();
    const double score = penalised_score(tail, ratio15);
    if (!found || score < best_score * (1.0 - 1e-12)) {
      found = true;
      best_score = score;
      best_tail = std::move(tail);
    }
  }
  if (!found) throw DomainError("brute_force_min_x7: no feasible lattice point");

  std::vector<double> ratios{1.0};
  ratios.insert(ratios.end(), best_tail.begin(), best_tail.end());
  double s5 = 0.0;
  for (double r : ratios) s5 += pow5(r);
  const double t = B / std::pow(s5, 0.2);
  BruteForceResult out;
  out.point.assign(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    out.point[i] = t * ratios[i];
    out.value += pow7(out.point[i]);
  }
  out.support = static_cast<int>(ratios.size());
  return out;
}

HessianDet hessian_det(double gamma, double delta) {
  if (!std::isfinite(gamma) || !std::isfinite(delta) || !(gamma > 0.0) || !(gamma < delta)) {
    throw InvalidInput("hessian_det: need 0 < gamma < delta");
  }
  const double g2 = gamma * gamma, d2 = delta * delta;
  const double xs[3] = {gamma, gamma, delta};
  // Lagrangian Hessian 42x⁵ − 6λ1x − 20λ2x³ with the multipliers fixed by
  // stationarity at x = γ and x = δ
  const double diag[3] = {14.0 * cube(gamma) * (g2 - d2), 14.0 * cube(gamma) * (g2 - d2),
                          14.0 * cube(delta) * (d2 - g2)};

  gsl_matrix* h = gsl_matrix_calloc(5, 5);
  for (std::size_t j = 0; j < 3; ++j) {
    const double c3 = 3.0 * xs[j] * xs[j];
    const double c5 = 5.0 * xs[j] * xs[j] * xs[j] * xs[j];
    gsl_matrix_set(h, 0, 2 + j, c3);
    gsl_matrix_set(h, 1, 2 + j, c5);
    gsl_matrix_set(h, 2 + j, 0, c3);
    gsl_matrix_set(h, 2 + j, 1, c5);
    gsl_matrix_set(h, 2 + j, 2 + j, diag[j]);
  }
  gsl_permutation* perm = gsl_permutation_alloc(5);
  int signum = 0;
  gsl_linalg_LU_decomp(h, perm, &signum);
  const double det = gsl_linalg_LU_det(h, signum);
  gsl_permutation_free(perm);
  gsl_matrix_free(h);

  return {det, 6300.0 * pow7(gamma) * d2 * d2 * cube(g2 - d2)};
}

}  // namespace kdv::powersum
