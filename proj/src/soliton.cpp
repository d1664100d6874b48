#include "kdvvar/soliton.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "kdvvar/error.hpp"
#include "kdvvar/functionals.hpp"

namespace kdv {

SolitonParams SolitonParams::make(std::vector<double> speeds, std::vector<double> phases) {
  SolitonParams p{std::move(speeds), std::move(phases)};
  p.validate();
  return p;
}

void SolitonParams::validate() const {
  if (speeds.empty()) throw InvalidInput("soliton: need at least one speed");
  if (speeds.size() != phases.size()) throw InvalidInput("soliton: speeds and phases differ in length");
  for (std::size_t j = 0; j < speeds.size(); ++j) {
    if (!std::isfinite(speeds[j]) || !std::isfinite(phases[j])) {
      throw InvalidInput("soliton: non-finite parameter");
    }
    if (!(speeds[j] > 0.0)) throw InvalidInput("soliton: speeds must be positive");
    if (j > 0 && !(speeds[j] > speeds[j - 1])) {
      throw InvalidInput("soliton: speeds must be strictly increasing");
    }
  }
}

namespace {

// y_j = e^{η_j} + (−1)^{j−1} e^{−η_j},  η_j = k_j (x − γ_j),  k_j = √C_j / 2
ExpPoly building_block(double speed, double phase, std::size_t j) {
  const double k = 0.5 * std::sqrt(speed);
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;  // j is 0-based
  return ExpPoly::canonicalize({{std::exp(-k * phase), k}, {sign * std::exp(k * phase), -k}});
}

// Laplace expansion along rows, memoised over column subsets: minor[S] is the
// determinant of the first |S| rows restricted to the columns in S.
ExpPoly wronskian(const std::vector<std::vector<ExpPoly>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<ExpPoly> minor(full + 1);
  minor[0] = ExpPoly::constant(1.0);
  for (std::size_t set = 1; set <= full; ++set) {
    const auto k = static_cast<std::size_t>(std::popcount(set));
    const std::size_t row = k - 1;
    ExpPoly acc;
    std::size_t position = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(set & (std::size_t{1} << col))) continue;
      const double sign = ((row + position) % 2 == 0) ? 1.0 : -1.0;
      acc = acc + sign * (rows[row][col] * minor[set & ~(std::size_t{1} << col)]);
      ++position;
    }
    minor[set] = std::move(acc);
  }
  return minor[full];
}

}  // namespace

ProfileKernel::ProfileKernel(const SolitonParams& params) {
  params.validate();
  const std::size_t n = params.size();
  if (n > kMaxSolitons) throw Unsupported("soliton: at most 8 solitons are supported");

  std::vector<std::vector<ExpPoly>> rows(n, std::vector<ExpPoly>(n));
  for (std::size_t j = 0; j < n; ++j) {
    ExpPoly y = building_block(params.speeds[j], params.phases[j], j);
    for (std::size_t i = 0; i < n; ++i) {
      rows[i][j] = y;
      y = y.derivative(1);
    }
  }
  tau_[0] = wronskian(rows);
  for (int o = 1; o <= kMaxTauOrder; ++o) tau_[o] = tau_[o - 1].derivative(1);

  // ψ^{(n)} = 12 N_n / τ^{n+2},  N_{n+1} = N_n' τ − (n+2) N_n τ'
  numer_[0] = tau_[2] * tau_[0] - tau_[1] * tau_[1];
  for (int o = 0; o < kMaxProfileOrder; ++o) {
    numer_[o + 1] = numer_[o].derivative(1) * tau_[0] - static_cast<double>(o + 2) * (numer_[o] * tau_[1]);
  }

  // τ > 0 on the real line; sample well past every phase
  double lo = *std::min_element(params.phases.begin(), params.phases.end());
  double hi = *std::max_element(params.phases.begin(), params.phases.end());
  const double reach = 80.0 / std::sqrt(params.speeds.front());
  lo -= reach;
  hi += reach;
  for (int i = 0; i <= 400; ++i) {
    const double x = lo + (hi - lo) * i / 400.0;
    if (!(tau_[0].eval_scaled(x).mantissa > 0.0)) {
      throw DomainError("soliton: tau-function is not positive");
    }
  }
}

const ExpPoly& ProfileKernel::tau_derivative(int order) const {
  if (order < 0 || order > kMaxTauOrder) throw InvalidInput("tau derivative order out of range");
  return tau_[static_cast<std::size_t>(order)];
}

const ExpPoly& ProfileKernel::numerator(int order) const {
  if (order < 0 || order > kMaxProfileOrder) throw InvalidInput("profile order out of range");
  return numer_[static_cast<std::size_t>(order)];
}

double ProfileKernel::psi(double x, int order) const {
  return 12.0 * scaled_ratio(numerator(order), tau_[0], order + 2, x);
}

std::vector<double> ProfileKernel::psi_upto(double x, int max_order) const {
  if (max_order < 0 || max_order > kMaxProfileOrder) throw InvalidInput("profile order out of range");
  const ScaledValue t = tau_[0].eval_scaled(x);
  std::vector<double> out;
  for (int o = 0; o <= max_order; ++o) {
    const ScaledValue num = numer_[static_cast<std::size_t>(o)].eval_scaled(x);
    if (num.mantissa == 0.0) {
      out.push_back(0.0);
      continue;
    }
    const int p = o + 2;
    out.push_back(12.0 * num.mantissa / std::pow(t.mantissa, p) *
                  std::exp(num.log_offset - p * t.log_offset));
  }
  return out;
}

ProfileKernel tau(const SolitonParams& params) { return ProfileKernel(params); }

std::vector<double> profile(const SolitonParams& params, double x, int max_order) {
  return ProfileKernel(params).psi_upto(x, max_order);
}

GridFunction sample_profile(const SolitonParams& params, const Grid& grid, int order) {
  const ProfileKernel kernel(params);
  return GridFunction::sample(grid, [&](double x) { return kernel.psi(x, order); });
}

double closed_form_energy(int k, std::span<const double> speeds) {
  if (k < 2) throw InvalidInput("closed_form_energy: k must be at least 2");
  double s = 0.0;
  for (double c : speeds) {
    if (!(c > 0.0)) throw InvalidInput("closed_form_energy: speeds must be positive");
    s += std::pow(c, (2.0 * k - 1.0) / 2.0);
  }
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * 36.0 / (2.0 * k - 1.0) * s;
}

SolitonParams evolve(const SolitonParams& params, double t) {
  params.validate();
  SolitonParams out = params;
  for (std::size_t j = 0; j < out.size(); ++j) out.phases[j] += out.speeds[j] * t;
  return out;
}

std::pair<double, double> asymptotic_centers(double c1, double c2, double gamma1, double gamma2) {
  if (!(c1 > 0.0) || !(c2 > c1)) throw InvalidInput("asymptotic_centers: need 0 < C1 < C2");
  const double k1 = 0.5 * std::sqrt(c1), k2 = 0.5 * std::sqrt(c2);
  const double shift = std::atanh(k1 / k2);
  const double s = (gamma1 > gamma2) ? 1.0 : (gamma1 < gamma2 ? -1.0 : 0.0);
  return {gamma1 + s * shift / k1, gamma2 - s * shift / k2};
}

double separation_defect(double c1, double c2, double gamma1, double gamma2, const Grid& grid) {
  grid.validate();
  if (!(c1 > 0.0) || !(c2 > c1)) throw InvalidInput("separation_defect: need 0 < C1 < C2");
  const double margin = 30.0 / std::sqrt(c1);
  for (double g : {gamma1, gamma2}) {
    if (g - margin < -grid.half_width || g + margin > grid.half_width) {
      throw GridError("separation_defect: grid does not cover the phases with margin 30/sqrt(C1)");
    }
  }
  const auto [x1, x2] = asymptotic_centers(c1, c2, gamma1, gamma2);
  const auto pair = sample_profile(SolitonParams::make({c1, c2}, {gamma1, gamma2}), grid);
  const auto sum = sample_profile(SolitonParams::make({c1}, {x1}), grid) +
                   sample_profile(SolitonParams::make({c2}, {x2}), grid);
  return h2_distance(pair, sum);
}

}  // namespace kdv
