#include "kdvvar/minimizer.hpp"

#include <gsl/gsl_linalg.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "kdvvar/error.hpp"
#include "kdvvar/soliton.hpp"
#include "spectral.hpp"

namespace kdv {

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

// Minimum-norm solution of m·x = rhs, dropping singular values below
// 1e−10·σ_max so that parallel columns give the reduced answer.
std::array<double, 2> solve2(const Mat2& m, std::array<double, 2> rhs) {
  gsl_matrix* a = gsl_matrix_alloc(2, 2);
  gsl_matrix* v = gsl_matrix_alloc(2, 2);
  gsl_vector* s = gsl_vector_alloc(2);
  gsl_vector* work = gsl_vector_alloc(2);
  gsl_vector* b = gsl_vector_alloc(2);
  gsl_vector* x = gsl_vector_alloc(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) gsl_matrix_set(a, i, j, m[i][j]);
    gsl_vector_set(b, i, rhs[i]);
  }
  gsl_linalg_SV_decomp(a, v, s, work);
  const double smax = gsl_vector_get(s, 0);
  for (std::size_t i = 0; i < 2; ++i) {
    if (!(gsl_vector_get(s, i) > 1e-10 * smax)) gsl_vector_set(s, i, 0.0);
  }
  std::array<double, 2> out{0.0, 0.0};
  if (smax > 0.0) {
    gsl_linalg_SV_solve(a, v, s, b, x);
    out = {gsl_vector_get(x, 0), gsl_vector_get(x, 1)};
  }
  gsl_vector_free(x);
  gsl_vector_free(b);
  gsl_vector_free(work);
  gsl_vector_free(s);
  gsl_matrix_free(v);
  gsl_matrix_free(a);
  return out;
}

double constraint_tol(double a, double b) {
  return 1e-11 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Projected {
  GridFunction v;
  EnergyState state;
};

Projected project(const GridFunction& u, const EnergyState& at_u, double a, double b) {
  const double tol = constraint_tol(a, b);
  const GridFunction& d2 = at_u.grad[0];
  const GridFunction& d3 = at_u.grad[1];
  auto residual = [&](const EnergyState& st) {
    return std::array<double, 2>{st.value[0] - a, st.value[1] - b};
  };
  auto size = [](const std::array<double, 2>& f) { return std::hypot(f[0], f[1]); };

  std::array<double, 2> s{0.0, 0.0};
  GridFunction v = u;
  EnergyState st = at_u;
  auto f = residual(st);
  for (int step = 0; step < 50; ++step) {
    if (std::abs(f[0]) < tol && std::abs(f[1]) < tol) return {std::move(v), std::move(st)};
    const Mat2 jac{{{inner(st.grad[0], d2), inner(st.grad[0], d3)},
                    {inner(st.grad[1], d2), inner(st.grad[1], d3)}}};
    const auto delta = solve2(jac, {-f[0], -f[1]});
    if (delta[0] == 0.0 && delta[1] == 0.0) break;
    bool improved = false;
    double damp = 1.0;
    for (int halving = 0; halving < 12; ++halving, damp *= 0.5) {
      const std::array<double, 2> trial{s[0] + damp * delta[0], s[1] + damp * delta[1]};
      GridFunction w = u + (trial[0] * d2 + trial[1] * d3);
      EnergyState ws = evaluate_energies(w);
      const auto wf = residual(ws);
      if (std::isfinite(wf[0]) && std::isfinite(wf[1]) && size(wf) < size(f)) {
        s = trial;
        v = std::move(w);
        st = std::move(ws);
        f = wf;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (std::abs(f[0]) < tol && std::abs(f[1]) < tol) return {std::move(v), std::move(st)};
  throw ProjectionFailure("projection onto the constraint set did not converge");
}

// (κ² + c1)(κ² + c2), the symbol of the linearised stationary operator.
struct Preconditioner {
  double c1;
  double c2;
  [[nodiscard]] GridFunction apply(const GridFunction& g) const {
    const double p = c1, q = c2;
    return {g.grid(), spectral::apply_multiplier(g.values(), g.grid(), [p, q](double k) {
              const double k2 = k * k;
              return 1.0 / ((k2 + p) * (k2 + q));
            })};
  }
};

struct Direction {
  GridFunction d;      // preconditioned tangent direction
  double slope = 0.0;  // ⟨∇E4, d⟩
};

Direction descent_direction(const EnergyState& st, const Preconditioner& pre) {
  const auto& g2 = st.grad[0];
  const auto& g3 = st.grad[1];
  const auto& g4 = st.grad[2];
  const auto p2 = pre.apply(g2), p3 = pre.apply(g3), p4 = pre.apply(g4);
  const Mat2 gram{{{inner(g2, p2), inner(g2, p3)}, {inner(g3, p2), inner(g3, p3)}}};
  const auto mu = solve2(gram, {inner(g2, p4), inner(g3, p4)});
  GridFunction d = p4 - (mu[0] * p2 + mu[1] * p3);
  const double slope = inner(g4, d);
  return {std::move(d), slope};
}

// L² residual of ∇E4 after removing its L² projection onto span{∇E2, ∇E3}.
double stationarity(const EnergyState& st) {
  const auto& g2 = st.grad[0];
  const auto& g3 = st.grad[1];
  const auto& g4 = st.grad[2];
  const Mat2 gram{{{inner(g2, g2), inner(g2, g3)}, {inner(g3, g2), inner(g3, g3)}}};
  const auto lam = solve2(gram, {inner(g2, g4), inner(g3, g4)});
  return l2_norm(g4 - (lam[0] * g2 + lam[1] * g3));
}

double solve_sech_width(double a, double b) {
  // α sech²(βx): E2 = 2α²/(3β), E3 = 8α²β/15 − 8α³/(45β). With α² = 3aβ/2 and
  // s = √β this is b = (4a/5)s⁴ − K s, K = (8/45)(3a/2)^{3/2}.
  const double k = 8.0 / 45.0 * std::pow(1.5 * a, 1.5);
  auto f = [&](double s) { return 0.8 * a * s * s * s * s - k * s; };
  const double s_min = std::cbrt(5.0 * k / (16.0 * a));
  if (b <= f(s_min)) return s_min * s_min;
  double lo = s_min, hi = 2.0 * s_min;
  while (f(hi) < b) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < b ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  return s * s;
}

GridFunction smooth_noise(const Grid& grid, std::uint64_t seed, double centre_span) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-centre_span, centre_span);
  std::uniform_real_distribution<double> width(1.0, 3.0);
  std::normal_distribution<double> weight(0.0, 1.0);
  std::vector<std::array<double, 3>> bumps(12);
  for (auto& bmp : bumps) bmp = {centre(rng), width(rng), weight(rng)};
  auto noise = GridFunction::sample(grid, [&](double x) {
    double s = 0.0;
    for (const auto& [c, w, k] : bumps) s += k * std::exp(-((x - c) * (x - c)) / (w * w));
    return s;
  });
  const double peak = noise.max_abs();
  return peak > 0.0 ? (1.0 / peak) * noise : noise;
}

std::vector<double> guess_speeds(const MinimizeConfig& cfg, const regime::ConstraintPoint& p) {
  if (!cfg.guess_speeds.empty()) return cfg.guess_speeds;
  if (!p.speeds.empty()) return p.speeds;
  throw InvalidInput("minimize: soliton initialisation needs speeds in Case3");
}

GridFunction initial_profile(const MinimizeConfig& cfg, const regime::ConstraintPoint& p) {
  if (cfg.init == InitKind::scaled_sech) return scaled_sech(cfg.a, cfg.b, cfg.grid);
  if (cfg.init == InitKind::perturbed && cfg.guess_speeds.empty() && p.speeds.empty()) {
    // Case3 without a guess: perturb the sech² start instead
    auto u = scaled_sech(cfg.a, cfg.b, cfg.grid);
    const double span = 10.0 / std::sqrt(std::pow(cfg.a / 12.0, 2.0 / 3.0));
    return u + (cfg.amplitude * u.max_abs()) * smooth_noise(cfg.grid, cfg.seed, span);
  }
  auto speeds = guess_speeds(cfg, p);
  auto phases = cfg.guess_phases.empty() ? std::vector<double>(speeds.size(), 0.0) : cfg.guess_phases;
  const auto params = SolitonParams::make(std::move(speeds), std::move(phases));
  auto u = sample_profile(params, cfg.grid);
  if (cfg.init == InitKind::perturbed) {
    const double span = 10.0 / std::sqrt(params.speeds.front());
    u = u + (cfg.amplitude * u.max_abs()) * smooth_noise(cfg.grid, cfg.seed, span);
  }
  return u;
}

Preconditioner preconditioner_for(const regime::ConstraintPoint& p) {
  if (p.regime == regime::Regime::Case1) return {p.speeds[0], p.speeds[0]};
  if (p.regime == regime::Regime::Case2) return {p.speeds[0], p.speeds[1]};
  const double c = std::pow(p.a / 12.0, 2.0 / 3.0);
  return {c, c};
}

double periodic_distance(double x, double y, const Grid& g) {
  const double period = 2.0 * g.half_width;
  double d = std::fmod(std::abs(x - y), period);
  return std::min(d, period - d);
}

Checkpoint make_checkpoint(int iter, const GridFunction& u, double e4, double radius, double eps) {
  Checkpoint cp;
  cp.iter = iter;
  cp.e4 = e4;
  cp.sites = extract_concentrations(density(u), radius, eps).sites;
  if (cp.sites.size() >= 2) {
    cp.separation = periodic_distance(cp.sites[0].center, cp.sites[1].center, u.grid());
  }
  return cp;
}

}  // namespace

void MinimizeConfig::validate() const {
  grid.validate();
  if (!(step0 > 0.0) || !(grad_tol > 0.0) || max_iters < 0 || checkpoint_every <= 0) {
    throw InvalidInput("minimize: step0, grad_tol and checkpoint_every must be positive");
  }
  if (!(amplitude >= 0.0) || !(site_radius >= 0.0) || !(site_eps > 0.0)) {
    throw InvalidInput("minimize: amplitude, site_radius and site_eps out of range");
  }
}

std::vector<double> MinimizeResult::e4_history() const {
  std::vector<double> out;
  out.reserve(history.size());
  for (const auto& r : history) out.push_back(r.e4);
  return out;
}

GridFunction project_to_constraints(const GridFunction& u, double a, double b) {
  if (!(l2_norm(u) > 0.0)) throw InvalidInput("project_to_constraints: zero function");
  return project(u, evaluate_energies(u), a, b).v;
}

GridFunction scaled_sech(double a, double b, const Grid& grid) {
  grid.validate();
  if (!(a > 0.0)) throw DomainError("scaled_sech: need a > 0");
  const double beta = solve_sech_width(a, b);
  const double alpha = std::sqrt(1.5 * a * beta);
  return GridFunction::sample(grid, [&](double x) {
    const double c = 1.0 / std::cosh(beta * x);
    return alpha * c * c;
  });
}

MinimizeResult minimize(const MinimizeConfig& cfg) {
  cfg.validate();
  MinimizeResult res;
  res.point = regime::classify(cfg.a, cfg.b);
  if (res.point.regime == regime::Regime::Infeasible) {
    throw DomainError("minimize: (a, b) is infeasible");
  }
  const bool case3 = res.point.regime == regime::Regime::Case3;
  const auto pre = preconditioner_for(res.point);
  const double radius = cfg.site_radius > 0.0 ? cfg.site_radius : default_radius(std::min(pre.c1, pre.c2));

  auto start = initial_profile(cfg, res.point);
  auto [u, st] = project(start, evaluate_energies(start), cfg.a, cfg.b);

  auto record = [&](int iter, const EnergyState& s, double gnorm) {
    res.history.push_back({iter, s.value[0], s.value[1], s.value[2], gnorm});
  };

  double step = cfg.step0;
  double gnorm = stationarity(st);
  record(0, st, gnorm);
  if (case3) res.checkpoints.push_back(make_checkpoint(0, u, st.value[2], radius, cfg.site_eps));
  res.stop_reason = "max_iters";

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if (gnorm <= cfg.grad_tol * l2_norm(st.grad[2])) {
      res.converged = true;
      res.stop_reason = "converged";
      break;
    }
    const auto dir = descent_direction(st, pre);
    bool accepted = false;
    while (step >= 1e-14) {
      try {
        const GridFunction trial = u - step * dir.d;
        auto proj = project(trial, evaluate_energies(trial), cfg.a, cfg.b);
        if (proj.state.value[2] <= st.value[2] - 1e-4 * step * dir.slope) {
          u = std::move(proj.v);
          st = std::move(proj.state);
          accepted = true;
        }
      } catch (const ProjectionFailure&) {
      }
      if (accepted) break;
      step *= 0.5;
    }
    if (!accepted) {
      res.stop_reason = "stagnation";
      break;
    }
    step = std::min(1.0, 1.2 * step);
    gnorm = stationarity(st);
    record(iter, st, gnorm);
    if (case3 && iter % cfg.checkpoint_every == 0) {
      res.checkpoints.push_back(make_checkpoint(iter, u, st.value[2], radius, cfg.site_eps));
    }
  }
  if (!res.converged && gnorm <= cfg.grad_tol * l2_norm(st.grad[2])) {
    res.converged = true;
    res.stop_reason = "converged";
  }
  if (case3 && (res.checkpoints.empty() || res.checkpoints.back().iter != res.history.back().iter)) {
    res.checkpoints.push_back(make_checkpoint(res.history.back().iter, u, st.value[2], radius, cfg.site_eps));
  }

  res.el = el_residual(u);
  if (res.point.regime == regime::Regime::Case1) {
    res.fitted = fit_one_soliton(u, res.point.speeds[0]);
  } else if (res.point.regime == regime::Regime::Case2) {
    res.fitted = fit_two_soliton(u, res.point.speeds[0], res.point.speeds[1]);
  }
  res.final = std::move(u);
  return res;
}

}  // namespace kdv
