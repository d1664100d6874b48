#include "kdvvar/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kdvvar/error.hpp"

namespace kdv {

ExpPoly ExpPoly::canonicalize(std::vector<ExpTerm> terms) {
  for (const auto& t : terms) {
    if (!std::isfinite(t.coeff) || !std::isfinite(t.rate)) {
      throw InvalidInput("ExpPoly: non-finite coefficient or rate");
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const ExpTerm& a, const ExpTerm& b) { return a.rate < b.rate; });

  std::vector<ExpTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().rate == t.rate) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const ExpTerm& t) { return std::abs(t.coeff) < kDustThreshold; });
  for (const auto& t : out) {
    if (!std::isfinite(t.coeff)) throw NonFinite("ExpPoly: coefficient overflow");
  }
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::constant(double c) { return canonicalize({{c, 0.0}}); }

ExpPoly ExpPoly::exponential(double coeff, double rate) { return canonicalize({{coeff, rate}}); }

ExpPoly ExpPoly::derivative(int order) const {
  if (order < 0) throw InvalidInput("ExpPoly::derivative: negative order");
  std::vector<ExpTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    double c = t.coeff;
    for (int i = 0; i < order; ++i) c *= t.rate;
    out.push_back({c, t.rate});
  }
  return canonicalize(std::move(out));
}

double ExpPoly::eval(double x) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coeff * std::exp(t.rate * x);
  return s;
}

ScaledValue ExpPoly::eval_scaled(double x) const {
  if (terms_.empty()) return {0.0, 0.0};
  double offset = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) offset = std::max(offset, t.rate * x);
  double m = 0.0;
  for (const auto& t : terms_) m += t.coeff * std::exp(t.rate * x - offset);
  return {m, offset};
}

double ExpPoly::abs_coeff_sum() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

ExpPoly operator+(const ExpPoly& p, const ExpPoly& q) {
  std::vector<ExpTerm> all(p.terms_.begin(), p.terms_.end());
  all.insert(all.end(), q.terms_.begin(), q.terms_.end());
  return ExpPoly::canonicalize(std::move(all));
}

ExpPoly operator-(const ExpPoly& p, const ExpPoly& q) { return p + (-1.0) * q; }

ExpPoly operator*(const ExpPoly& p, const ExpPoly& q) {
  std::vector<ExpTerm> all;
  all.reserve(p.size() * q.size());
  for (const auto& a : p.terms_) {
    for (const auto& b : q.terms_) all.push_back({a.coeff * b.coeff, a.rate + b.rate});
  }
  return ExpPoly::canonicalize(std::move(all));
}

ExpPoly operator*(double s, const ExpPoly& p) {
  std::vector<ExpTerm> all(p.terms_.begin(), p.terms_.end());
  for (auto& t : all) t.coeff *= s;
  return ExpPoly::canonicalize(std::move(all));
}

ExpPoly mul(const ExpPoly& p, const ExpPoly& q) { return p * q; }

ExpPoly derivative(const ExpPoly& p, int order) { return p.derivative(order); }

double scaled_ratio(const ExpPoly& p, const ExpPoly& q, int power, double x) {
  const ScaledValue num = p.eval_scaled(x);
  if (num.mantissa == 0.0) return 0.0;
  const ScaledValue den = q.eval_scaled(x);
  const double m = num.mantissa / std::pow(den.mantissa, power);
  return m * std::exp(num.log_offset - power * den.log_offset);
}

}  // namespace kdv
