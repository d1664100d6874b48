// kdvvar command-line front end.
//
// Exit status: 0 success, 1 domain or precondition error (one line on
// stderr), 2 malformed arguments or configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kdvvar/error.hpp"
#include "kdvvar/functionals.hpp"
#include "kdvvar/io.hpp"
#include "kdvvar/massdecomp.hpp"
#include "kdvvar/minimizer.hpp"
#include "kdvvar/powersum.hpp"
#include "kdvvar/regime.hpp"
#include "kdvvar/soliton.hpp"
#include "kdvvar/verify.hpp"
#include "svg.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Bad command line or configuration file content.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  double half_width = 60.0;
  std::size_t points = 2048;
  std::string out;
  std::uint64_t seed = 0;
  bool json = false;

  [[nodiscard]] kdv::Grid grid() const {
    kdv::Grid g{half_width, points};
    g.validate();
    return g;
  }
};

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json numbers(const std::vector<double>& vs) {
  json a = json::array();
  for (double v : vs) a.push_back(number(v));
  return a;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// Writes `text` to out/name when --out is set, else to stdout.
void emit(const Globals& g, const std::string& name, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(g.out);
  const fs::path path = fs::path(g.out) / name;
  std::ofstream f(path);
  if (!f) throw kdv::InvalidInput("cannot write " + path.string());
  f << text;
}

void write_file(const Globals& g, const std::string& name, const std::string& text) {
  const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  fs::create_directories(dir);
  std::ofstream f(dir / name);
  if (!f) throw kdv::InvalidInput("cannot write " + (dir / name).string());
  f << text;
}

kdv::GridFunction read_profile(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw kdv::InvalidInput("cannot open " + path);
  return kdv::io::read_grid_csv(f);
}

// ---- soliton ---------------------------------------------------------------

struct SolitonArgs {
  std::vector<double> speeds;
  std::vector<double> phases;
  int max_order = 4;
};

int run_soliton(const Globals& g, const SolitonArgs& a) {
  auto phases = a.phases.empty() ? std::vector<double>(a.speeds.size(), 0.0) : a.phases;
  const auto params = kdv::SolitonParams::make(a.speeds, phases);
  if (a.max_order < 0 || a.max_order > 4) throw kdv::InvalidInput("--max-order must be in [0, 4]");
  const kdv::ProfileKernel kernel(params);
  const auto grid = g.grid();
  std::vector<std::string> header{"x", "psi"};
  for (int o = 1; o <= a.max_order; ++o) header.push_back("psi" + std::to_string(o));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double x = grid.x(i);
    auto r = kernel.psi_upto(x, a.max_order);
    r.insert(r.begin(), x);
    rows.push_back(std::move(r));
  }
  std::ostringstream csv;
  kdv::io::write_csv(csv, header, rows);
  emit(g, "soliton.csv", csv.str());
  return 0;
}

// ---- energy ----------------------------------------------------------------

struct EnergyArgs {
  std::vector<double> speeds;
  std::vector<double> phases;
  std::string profile;
};

int run_energy(const Globals& g, const EnergyArgs& a) {
  json out;
  kdv::GridFunction u;
  if (!a.profile.empty()) {
    if (!a.speeds.empty()) throw UsageError("energy: give either --profile or --speeds, not both");
    u = read_profile(a.profile);
  } else {
    if (a.speeds.empty()) throw UsageError("energy: --speeds or --profile is required");
    auto phases = a.phases.empty() ? std::vector<double>(a.speeds.size(), 0.0) : a.phases;
    const auto params = kdv::SolitonParams::make(a.speeds, phases);
    u = kdv::sample_profile(params, g.grid());
    out["closed_form"] = {{"E2", kdv::closed_form_energy(2, a.speeds)},
                          {"E3", kdv::closed_form_energy(3, a.speeds)},
                          {"E4", kdv::closed_form_energy(4, a.speeds)}};
  }
  out["quadrature"] = {{"E2", kdv::energy(2, u)}, {"E3", kdv::energy(3, u)}, {"E4", kdv::energy(4, u)}};
  const auto el = kdv::el_residual(u);
  out["el"] = {{"lambda2", el.lambda2}, {"lambda3", el.lambda3}, {"residual_rel", el.residual_rel},
               {"reduced", el.reduced}};
  out["h2_norm"] = kdv::h2_norm(u);
  out["compactly_supported"] = u.compactly_supported();
  print_json(out);
  return 0;
}

// ---- regime ----------------------------------------------------------------

json regime_json(const kdv::regime::ConstraintPoint& p) {
  json j{{"regime", std::string(kdv::regime::to_string(p.regime))}, {"a", p.a}, {"b", p.b}};
  j["speeds"] = numbers(p.speeds);
  if (p.regime == kdv::regime::Regime::Case1) j["C"] = p.speeds[0];
  if (p.regime == kdv::regime::Regime::Case2) {
    j["C1"] = p.speeds[0];
    j["C2"] = p.speeds[1];
  }
  if (p.regime != kdv::regime::Regime::Infeasible) {
    const auto jv = kdv::regime::j_value(p.a, p.b);
    j["J"] = jv ? json(*jv) : json("NoMinimizer");
  }
  return j;
}

struct MapArgs {
  double a_min = 0.5, a_max = 120.0, b_min = -300.0, b_max = 20.0;
  int na = 200, nb = 200;
  bool svg = false;
};

int run_regime_map(const Globals& g, const MapArgs& m) {
  if (m.na < 1 || m.nb < 1 || !(m.a_max > m.a_min) || !(m.b_max > m.b_min)) {
    throw kdv::InvalidInput("regime map: empty or inverted box");
  }
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<int>> codes(static_cast<std::size_t>(m.nb), std::vector<int>(static_cast<std::size_t>(m.na)));
  for (int j = 0; j < m.nb; ++j) {
    const double b = m.b_min + (m.b_max - m.b_min) * (j + 0.5) / m.nb;
    for (int i = 0; i < m.na; ++i) {
      const double a = m.a_min + (m.a_max - m.a_min) * (i + 0.5) / m.na;
      const int code = static_cast<int>(kdv::regime::classify(a, b).regime);
      codes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = code;
      rows.push_back({a, b, static_cast<double>(code)});
    }
  }
  std::ostringstream csv;
  kdv::io::write_csv(csv, {"a", "b", "regime"}, rows);
  emit(g, "regime_map.csv", csv.str());
  if (m.svg) write_file(g, "regime_map.svg", kdvtool::regime_raster(codes, m.a_min, m.a_max, m.b_min, m.b_max));
  return 0;
}

// ---- powersum --------------------------------------------------------------

json solution_json(const kdv::powersum::PowerSumSolution& s) {
  return {{"y1", s.y1}, {"y2", s.y2}, {"system", std::string(kdv::powersum::to_string(s.system))},
          {"theta", number(s.theta)}};
}

// ---- minimize --------------------------------------------------------------

kdv::MinimizeConfig parse_config(const std::string& path, const Globals& g) {
  std::ifstream f(path);
  if (!f) throw kdv::InvalidInput("cannot open " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config: top level must be an object");
  static const std::vector<std::string> known{"a",      "b",         "init",     "speeds",         "phases",
                                              "seed",   "amplitude", "step0",    "grad_tol",       "max_iters",
                                              "checkpoint_every", "site_radius", "site_eps"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw UsageError("config: unknown key '" + key + "'");
  }
  if (!j.contains("a") || !j.contains("b")) throw UsageError("config: 'a' and 'b' are required");

  kdv::MinimizeConfig c;
  c.grid = g.grid();
  c.seed = g.seed;
  try {
    c.a = j.at("a").get<double>();
    c.b = j.at("b").get<double>();
    const std::string init = j.value("init", std::string("perturbed"));
    if (init == "scaled_sech") {
      c.init = kdv::InitKind::scaled_sech;
    } else if (init == "soliton_guess") {
      c.init = kdv::InitKind::soliton_guess;
    } else if (init == "perturbed") {
      c.init = kdv::InitKind::perturbed;
    } else {
      throw UsageError("config: init must be scaled_sech, soliton_guess or perturbed");
    }
    c.guess_speeds = j.value("speeds", std::vector<double>{});
    c.guess_phases = j.value("phases", std::vector<double>{});
    c.seed = j.value("seed", c.seed);
    c.amplitude = j.value("amplitude", c.amplitude);
    c.step0 = j.value("step0", c.step0);
    c.grad_tol = j.value("grad_tol", c.grad_tol);
    c.max_iters = j.value("max_iters", c.max_iters);
    c.checkpoint_every = j.value("checkpoint_every", c.checkpoint_every);
    c.site_radius = j.value("site_radius", c.site_radius);
    c.site_eps = j.value("site_eps", c.site_eps);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return c;
}

json sites_json(const std::vector<kdv::ConcentrationSite>& sites) {
  json a = json::array();
  for (const auto& s : sites) a.push_back({{"center", s.center}, {"radius", s.radius}, {"mass", s.mass}});
  return a;
}

int run_minimize(const Globals& g, const std::string& config, bool svg) {
  const auto cfg = parse_config(config, g);
  const auto r = kdv::minimize(cfg);

  std::vector<std::vector<double>> iters;
  for (const auto& h : r.history) {
    iters.push_back({static_cast<double>(h.iter), h.e2, h.e3, h.e4, h.grad_norm});
  }
  std::ostringstream icsv, pcsv;
  kdv::io::write_csv(icsv, {"iter", "E2", "E3", "E4", "grad_norm"}, iters);
  kdv::io::write_grid_csv(pcsv, r.final);
  write_file(g, "iterations.csv", icsv.str());
  write_file(g, "profile.csv", pcsv.str());

  json out{{"converged", r.converged}, {"stop_reason", r.stop_reason}, {"iterations", r.history.back().iter}};
  out["point"] = regime_json(r.point);
  out["final"] = {{"E2", r.history.back().e2}, {"E3", r.history.back().e3}, {"E4", r.history.back().e4},
                  {"grad_norm", r.history.back().grad_norm}};
  out["el"] = {{"lambda2", r.el.lambda2}, {"lambda3", r.el.lambda3}, {"residual_rel", r.el.residual_rel},
               {"reduced", r.el.reduced}};
  if (r.fitted) {
    out["fitted"] = {{"speeds", numbers(r.fitted->speeds)}, {"phases", numbers(r.fitted->phases)},
                     {"distance", r.fitted->distance}};
  }
  json cps = json::array();
  for (const auto& cp : r.checkpoints) {
    cps.push_back({{"iter", cp.iter}, {"E4", cp.e4}, {"separation", cp.separation}, {"sites", sites_json(cp.sites)}});
  }
  out["checkpoints"] = cps;
  write_file(g, "result.json", out.dump(2) + "\n");
  if (svg) {
    std::vector<double> xs, ys;
    for (const auto& h : r.history) {
      xs.push_back(h.iter);
      ys.push_back(h.grad_norm);
    }
    write_file(g, "convergence.svg", kdvtool::line_plot("projected gradient norm", xs, ys, true));
  }
  print_json(out);
  return 0;
}

// ---- massdecomp ------------------------------------------------------------

int run_massdecomp(const std::string& profile, double radius, double eps) {
  const auto u = read_profile(profile);
  const auto d = kdv::density(u);
  const auto ex = kdv::extract_concentrations(d, radius, eps);
  json out{{"total_mass", d.total_mass},
           {"vanishing_metric", kdv::vanishing_metric(d, radius)},
           {"residual_mass", ex.residual_mass},
           {"sites", sites_json(ex.sites)}};
  print_json(out);
  return 0;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const Globals& g, const std::string& level) {
  if (level != "fast" && level != "full") throw UsageError("verify: level must be fast or full");
  const auto results = kdv::verify::run_verify(level == "fast" ? kdv::verify::Level::fast : kdv::verify::Level::full);
  bool all = true;
  json checks = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    checks.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    if (!g.json) std::printf("%s %s: %s %s\n", r.id.c_str(), r.passed ? "PASS" : "FAIL", r.title.c_str(), r.detail.c_str());
  }
  if (g.json) print_json({{"level", level}, {"passed", all}, {"checks", checks}});
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soliton profiles, conserved functionals and the E4 variational problem"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--half-width", g.half_width, "grid half width L")->capture_default_str();
  app.add_option("--points", g.points, "grid points M (power of two >= 256)")->capture_default_str();
  app.add_option("--out", g.out, "output directory");
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_flag("--json", g.json, "machine-readable output where text is the default");

  SolitonArgs sa;
  auto* soliton = app.add_subcommand("soliton", "sample an N-soliton profile and its derivatives as CSV");
  soliton->add_option("--speeds", sa.speeds, "speeds C1 < ... < CN")->delimiter(',')->required();
  soliton->add_option("--phases", sa.phases, "phases (default 0)")->delimiter(',');
  soliton->add_option("--max-order", sa.max_order, "highest derivative")->capture_default_str();

  EnergyArgs ea;
  auto* energy = app.add_subcommand("energy", "E2, E3, E4 and EL multipliers of a soliton or a profile CSV");
  energy->add_option("--speeds", ea.speeds)->delimiter(',');
  energy->add_option("--phases", ea.phases)->delimiter(',');
  energy->add_option("--profile", ea.profile, "CSV with columns x,value");

  auto* reg = app.add_subcommand("regime", "constraint-space regimes");
  reg->require_subcommand(1);
  double ca = 0, cb = 0;
  auto* classify = reg->add_subcommand("classify", "classify (a, b)");
  classify->add_option("--a", ca)->required();
  classify->add_option("--b", cb)->required();
  MapArgs ma;
  auto* map = reg->add_subcommand("map", "CSV raster of regimes over an (a, b) box");
  map->add_option("--a-min", ma.a_min)->capture_default_str();
  map->add_option("--a-max", ma.a_max)->capture_default_str();
  map->add_option("--b-min", ma.b_min)->capture_default_str();
  map->add_option("--b-max", ma.b_max)->capture_default_str();
  map->add_option("--na", ma.na)->capture_default_str();
  map->add_option("--nb", ma.nb)->capture_default_str();
  map->add_flag("--svg", ma.svg, "also write regime_map.svg");

  auto* ps = app.add_subcommand("powersum", "two-term power-sum systems");
  ps->require_subcommand(1);
  std::string system = "one_one";
  double pa = 0, pb = 0, gamma = 0, delta = 0;
  auto* solve = ps->add_subcommand("solve", "all solutions of a two-term system");
  solve->add_option("--system", system)->check(CLI::IsMember({"one_one", "two_one"}))->capture_default_str();
  solve->add_option("--A", pa)->required();
  solve->add_option("--B", pb)->required();
  auto* mcmd = ps->add_subcommand("m", "m(A, B)");
  mcmd->add_option("--A", pa)->required();
  mcmd->add_option("--B", pb)->required();
  auto* hess = ps->add_subcommand("hessian", "bordered Hessian determinant at (gamma, gamma, delta)");
  hess->add_option("--gamma", gamma)->required();
  hess->add_option("--delta", delta)->required();

  std::string config;
  bool svg = false;
  auto* mini = app.add_subcommand("minimize", "constrained E4 descent from a JSON config");
  mini->add_option("--config", config, "JSON config file")->required();
  mini->add_flag("--svg", svg, "also write convergence.svg");

  std::string profile;
  double radius = 10.0, eps = 0.01;
  auto* mass = app.add_subcommand("massdecomp", "concentration sites of a profile CSV");
  mass->add_option("--profile", profile)->required();
  mass->add_option("--radius", radius)->capture_default_str();
  mass->add_option("--eps", eps)->capture_default_str();

  std::string level = "fast";
  auto* ver = app.add_subcommand("verify", "run the acceptance checks");
  ver->add_option("level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (soliton->parsed()) return run_soliton(g, sa);
    if (energy->parsed()) return run_energy(g, ea);
    if (classify->parsed()) {
      print_json(regime_json(kdv::regime::classify(ca, cb)));
      return 0;
    }
    if (map->parsed()) return run_regime_map(g, ma);
    if (solve->parsed()) {
      json a = json::array();
      for (const auto& s : kdv::powersum::solve_two_term(kdv::powersum::parse_system(system), pa, pb)) {
        a.push_back(solution_json(s));
      }
      print_json({{"system", system}, {"A", pa}, {"B", pb}, {"solutions", a}});
      return 0;
    }
    if (mcmd->parsed()) {
      print_json({{"A", pa}, {"B", pb}, {"m", kdv::powersum::m_value(pa, pb)}});
      return 0;
    }
    if (hess->parsed()) {
      const auto h = kdv::powersum::hessian_det(gamma, delta);
      print_json({{"gamma", gamma}, {"delta", delta}, {"numeric", h.numeric}, {"closed_form", h.closed_form}});
      return 0;
    }
    if (mini->parsed()) return run_minimize(g, config, svg);
    if (mass->parsed()) return run_massdecomp(profile, radius, eps);
    if (ver->parsed()) return run_verify(g, level);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
