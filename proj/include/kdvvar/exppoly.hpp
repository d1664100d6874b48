#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace kdv {

/// One term c·e^{μx}.
struct ExpTerm {
  double coeff = 0.0;
  double rate = 0.0;

  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Value m·e^{s}; lets ratios of huge exponential sums be formed without
/// overflow.
struct ScaledValue {
  double mantissa = 0.0;
  double log_offset = 0.0;
};

/// Exponential polynomial Σ c_k e^{μ_k x} held in canonical form: rates
/// strictly increasing, no zero coefficients. The empty polynomial is 0.
///
/// Equal rates are merged only on exact bitwise equality. Coefficients whose
/// magnitude falls below kDustThreshold after merging are dropped.
class ExpPoly {
 public:
  static constexpr double kDustThreshold = 1e-300;

  ExpPoly() = default;

  /// Builds the canonical form of an arbitrary term list. Throws
  /// InvalidInput on non-finite entries.
  static ExpPoly canonicalize(std::vector<ExpTerm> terms);
  static ExpPoly constant(double c);
  static ExpPoly exponential(double coeff, double rate);

  [[nodiscard]] std::span<const ExpTerm> terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] ExpPoly derivative(int order = 1) const;

  [[nodiscard]] double eval(double x) const;
  [[nodiscard]] ScaledValue eval_scaled(double x) const;

  /// Sum of |c_k|; bounds the mantissa returned by eval_scaled.
  [[nodiscard]] double abs_coeff_sum() const;

  friend ExpPoly operator+(const ExpPoly& p, const ExpPoly& q);
  friend ExpPoly operator-(const ExpPoly& p, const ExpPoly& q);
  friend ExpPoly operator*(const ExpPoly& p, const ExpPoly& q);
  friend ExpPoly operator*(double s, const ExpPoly& p);
  friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

 private:
  explicit ExpPoly(std::vector<ExpTerm> canonical) : terms_(std::move(canonical)) {}
  std::vector<ExpTerm> terms_;
};

ExpPoly mul(const ExpPoly& p, const ExpPoly& q);
ExpPoly derivative(const ExpPoly& p, int order);

/// p(x)/q(x)^power evaluated through scaled forms. q must be nonzero at x.
/// Underflows cleanly to 0 when the true value is below the double range.
double scaled_ratio(const ExpPoly& p, const ExpPoly& q, int power, double x);

}  // namespace kdv
