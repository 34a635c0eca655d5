// Command-line laboratory for the radial cubic NLS with inverse-square
// potential: ground states and sharp constants, time evolution with
// conservation and virial diagnostics, dichotomy classification, parameter
// sweeps, and the spectral property battery.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlslab/classify.hpp"
#include "nlslab/io.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/virial.hpp"

using namespace nlslab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitWarn = 2; // converged with warnings (flagged Pohozaev)

json grid_config(double a, double r_max, std::size_t n) {
  return {{"a", a}, {"r_max", r_max}, {"n", n}};
}

// --data <path|builtin:lambdaQ:lambda>
RadialField load_data(const std::string& spec, const PotentialParam& p,
                      const RadialGrid& g, double gs_tol, Flavor flavor) {
  const std::string prefix = "builtin:lambdaQ:";
  if (spec.rfind(prefix, 0) == 0) {
    const double lambda = std::stod(spec.substr(prefix.size()));
    GroundStateResult gs = solve_ground_state(p, g, gs_tol, flavor);
    RadialField u = gs.profile;
    u *= lambda;
    return u;
  }
  return io::read_field_csv(spec, g);
}

int cmd_ground_state(double a, bool radial, double r_max, std::size_t n, double tol,
                     const std::string& out) {
  const PotentialParam p(a);
  const Flavor flavor = (radial || a > 0.0) ? Flavor::radial : Flavor::general;
  const RadialGrid g(r_max, n);
  GroundStateResult gs = solve_ground_state(p, g, tol, flavor);
  Thresholds th = thresholds_from(gs);

  fs::path base(out);
  fs::create_directories(base.parent_path().empty() ? "." : base.parent_path());
  json cfg = grid_config(a, r_max, n);
  cfg["tol"] = tol;
  cfg["flavor"] = to_string(flavor);
  io::write_profile_csv(base.string() + ".csv", gs.profile);
  io::write_thresholds_json(base.string() + ".json", a, gs, th, cfg.dump());
  std::cout << "C = " << io::fmt(gs.c_constant) << "  rho1 = " << io::fmt(gs.pohozaev_rho1)
            << "  rho2 = " << io::fmt(gs.pohozaev_rho2)
            << (gs.converged ? "" : "  [unconverged]") << "\n";
  return gs.converged ? kExitOk : kExitWarn;
}

int cmd_evolve(double a, const std::string& data, double dt, double t_final,
               double r_max, std::size_t n, double blowup_factor, double t1, double t2,
               double gs_tol, const std::string& out_dir) {
  const PotentialParam p(a);
  const RadialGrid g(r_max, n);
  const Flavor flavor = a > 0.0 ? Flavor::radial : Flavor::general;
  RadialField u0 = load_data(data, p, g, gs_tol, flavor);

  EvolveConfig cfg;
  cfg.dt = dt;
  cfg.t_final = t_final;
  cfg.blowup_factor = blowup_factor;
  cfg.scatter_t1 = t1;
  cfg.scatter_t2 = t2;

  Trajectory traj = evolve(u0, p, cfg);

  fs::create_directories(out_dir);
  json jcfg = grid_config(a, r_max, n);
  jcfg["data"] = data;
  jcfg["dt"] = dt;
  jcfg["t_final"] = t_final;
  jcfg["blowup_factor"] = blowup_factor;
  jcfg["scatter_t1"] = t1;
  jcfg["scatter_t2"] = t2;
  io::write_trajectory_csv((fs::path(out_dir) / "trajectory.csv").string(), traj);
  io::write_outcome_json((fs::path(out_dir) / "outcome.json").string(), traj, jcfg.dump());
  std::cout << "outcome: " << to_string(traj.outcome) << " at t = " << io::fmt(traj.t_end)
            << "\n";
  return kExitOk;
}

int cmd_classify(double a, const std::string& data, bool radial, double r_max,
                 std::size_t n, double gs_tol, bool experiment, double dt, double t_final,
                 double blowup_factor, double t1, double t2, const std::string& out) {
  const PotentialParam p(a);
  const RadialGrid g(r_max, n);
  const Flavor flavor = (radial || a > 0.0) ? Flavor::radial : Flavor::general;

  // thresholds: general flavor above a = 0 uses the a = 0 constant
  Thresholds th;
  if (!radial && a > 0.0) {
    GroundStateResult gs0 = solve_ground_state(PotentialParam(0.0), g, gs_tol);
    th = thresholds_from(gs0.c_constant, Flavor::general);
  } else {
    GroundStateResult gs = solve_ground_state(p, g, gs_tol, flavor);
    th = thresholds_from(gs);
  }

  RadialField u0 = load_data(data, p, g, gs_tol, flavor);
  Classification cls;
  if (experiment) {
    EvolveConfig cfg;
    cfg.dt = dt;
    cfg.t_final = t_final;
    cfg.blowup_factor = blowup_factor;
    cfg.scatter_t1 = t1;
    cfg.scatter_t2 = t2;
    cls = run_experiment(u0, p, th, cfg);
  } else {
    cls = classify(u0, p, th);
  }

  json jcfg = grid_config(a, r_max, n);
  jcfg["data"] = data;
  jcfg["flavor"] = to_string(flavor);
  jcfg["experiment"] = experiment;
  if (!out.empty()) {
    io::write_classification_json(out, cls, jcfg.dump());
  }
  std::cout << "predicted: " << to_string(cls.predicted)
            << "  ME/E = " << io::fmt(cls.me_ratio) << "  MK/K = " << io::fmt(cls.mk_ratio);
  if (cls.has_observation)
    std::cout << "  observed: " << to_string(cls.observed)
              << "  agreement: " << (cls.agreement ? "yes" : "no");
  std::cout << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out, int jobs) {
  std::ifstream f(config_path);
  if (!f) {
    std::cerr << "cannot open config: " << config_path << "\n";
    return kExitError;
  }
  json cfg = json::parse(f);

  static const std::vector<std::string> known = {
      "a_list", "lambda_list", "r_max", "n",      "gs_tol",     "dt",
      "t_final", "blowup_factor", "monitor_stride", "scatter_t1", "scatter_t2",
      "scatter_tol"};
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      std::cerr << "unknown config key: " << it.key() << "\n";
      return kExitError;
    }
  }
  if (!cfg.contains("a_list") || !cfg.contains("lambda_list")) {
    std::cerr << "config must provide a_list and lambda_list\n";
    return kExitError;
  }

  SweepSettings st;
  st.r_max = cfg.value("r_max", 60.0);
  st.n = cfg.value("n", std::size_t{12000});
  st.gs_tol = cfg.value("gs_tol", 1e-10);
  st.evolve.dt = cfg.value("dt", 1e-3);
  st.evolve.t_final = cfg.value("t_final", 50.0);
  st.evolve.blowup_factor = cfg.value("blowup_factor", 10.0);
  st.evolve.monitor_stride = cfg.value("monitor_stride", std::size_t{50});
  st.evolve.scatter_t1 = cfg.value("scatter_t1", 20.0);
  st.evolve.scatter_t2 = cfg.value("scatter_t2", 30.0);
  st.evolve.scatter_tol = cfg.value("scatter_tol", 1e-2);
  st.jobs = jobs;

  const auto a_list = cfg["a_list"].get<std::vector<double>>();
  const auto lambda_list = cfg["lambda_list"].get<std::vector<double>>();
  auto cells = sweep(a_list, lambda_list, st);

  io::write_sweep_csv(out, cells);
  std::size_t errors = 0;
  for (const auto& c : cells)
    if (!c.error.empty()) ++errors;
  std::cout << cells.size() << " cells, " << errors << " errors -> " << out << "\n";
  return kExitOk;
}

// one pass/fail line per property; returns the number of failures
int cmd_spectral_check(double a, double r_max, std::size_t n);

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the radial cubic NLS with inverse-square potential"};
  app.require_subcommand(1);

  // ground-state
  double a = 0.0, r_max = 30.0, tol = 1e-6, gs_tol = 1e-10;
  std::size_t n = 6000;
  bool radial = false;
  std::string out = "ground_state";
  auto* gs = app.add_subcommand("ground-state", "solve the soliton profile and thresholds");
  gs->add_option("--a", a, "inverse-square coupling, a > -1/4")->required();
  gs->add_flag("--radial", radial, "radial flavor (required for a > 0)");
  gs->add_option("--rmax", r_max, "domain radius");
  gs->add_option("--n", n, "grid nodes");
  gs->add_option("--tol", tol, "bisection relative tolerance");
  gs->add_option("--out", out, "output basename (.csv profile, .json thresholds)");

  // evolve
  double dt = 1e-3, t_final = 10.0, blowup_factor = 10.0, t1 = 0.0, t2 = 0.0;
  std::string data = "builtin:lambdaQ:1.0", out_dir = "run";
  auto* ev = app.add_subcommand("evolve", "integrate initial data and record diagnostics");
  ev->add_option("--a", a, "inverse-square coupling")->required();
  ev->add_option("--data", data, "CSV path or builtin:lambdaQ:<lambda>");
  ev->add_option("--dt", dt, "time step");
  ev->add_option("--tfinal", t_final, "horizon");
  ev->add_option("--rmax", r_max, "domain radius");
  ev->add_option("--n", n, "grid nodes");
  ev->add_option("--blowup-factor", blowup_factor, "kinetic trip factor");
  ev->add_option("--t1", t1, "scattering probe time 1 (0 disables)");
  ev->add_option("--t2", t2, "scattering probe time 2");
  ev->add_option("--gs-tol", gs_tol, "ground-state tolerance for builtin data");
  ev->add_option("--out", out_dir, "output directory");

  // classify
  bool experiment = false;
  std::string cls_out;
  auto* cl = app.add_subcommand("classify", "dichotomy prediction for initial data");
  cl->add_option("--a", a, "inverse-square coupling")->required();
  cl->add_option("--data", data, "CSV path or builtin:lambdaQ:<lambda>");
  cl->add_flag("--radial", radial, "use radial-flavor thresholds for a > 0");
  cl->add_option("--rmax", r_max, "domain radius");
  cl->add_option("--n", n, "grid nodes");
  cl->add_option("--gs-tol", gs_tol, "ground-state tolerance");
  cl->add_flag("--experiment", experiment, "also evolve and record the observed outcome");
  cl->add_option("--dt", dt, "time step (with --experiment)");
  cl->add_option("--tfinal", t_final, "horizon (with --experiment)");
  cl->add_option("--blowup-factor", blowup_factor, "kinetic trip factor");
  cl->add_option("--t1", t1, "scattering probe time 1");
  cl->add_option("--t2", t2, "scattering probe time 2");
  cl->add_option("--out", cls_out, "classification JSON path");

  // sweep
  std::string sweep_config, sweep_out = "sweep.csv";
  int jobs = 0;
  auto* sw = app.add_subcommand("sweep", "phase-diagram sweep from a JSON config");
  sw->add_option("--config", sweep_config, "JSON config with a_list, lambda_list, ...")
      ->required();
  sw->add_option("--out", sweep_out, "sweep table CSV path");
  sw->add_option("--jobs", jobs, "work-pool threads (0 = default)");

  // spectral-check
  double sc_rmax = 30.0;
  std::size_t sc_n = 1536;
  auto* sc = app.add_subcommand("spectral-check", "run the spectral property battery");
  sc->add_option("--a", a, "inverse-square coupling")->required();
  sc->add_option("--rmax", sc_rmax, "domain radius");
  sc->add_option("--n", sc_n, "grid nodes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gs->parsed()) return cmd_ground_state(a, radial, r_max, n, tol, out);
    if (ev->parsed())
      return cmd_evolve(a, data, dt, t_final, r_max, n, blowup_factor, t1, t2, gs_tol,
                        out_dir);
    if (cl->parsed())
      return cmd_classify(a, data, radial, r_max, n, gs_tol, experiment, dt, t_final,
                          blowup_factor, t1, t2, cls_out);
    if (sw->parsed()) return cmd_sweep(sweep_config, sweep_out, jobs);
    if (sc->parsed()) return cmd_spectral_check(a, sc_rmax, sc_n);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

namespace {

int cmd_spectral_check(double a, double r_max, std::size_t n) {
  const PotentialParam p(a);
  const RadialGrid g(r_max, n);
  auto basis = eigendecompose(p, g);
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, double value) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  (" << io::fmt(value)
              << ")\n";
    if (!ok) ++failures;
  };

  RadialField bump = gaussian_field(g, 1.0, 2.0, 6.0);

  // semigroup law
  {
    RadialField one = heat_apply(heat_apply(bump, *basis, 0.3), *basis, 0.7);
    RadialField two = heat_apply(bump, *basis, 1.0);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
      num += std::norm(one[j] - two[j]);
      den += std::norm(two[j]);
    }
    const double rel = std::sqrt(num / den);
    report("semigroup law e^{-t1 L} e^{-t2 L} = e^{-(t1+t2) L}", rel < 1e-10, rel);
  }

  // self-adjointness in the discrete L^2(r^2 dr) inner product
  {
    RadialField v = gaussian_field(g, 0.7, 1.5, 10.0);
    RadialField hu = heat_apply(bump, *basis, 0.5);
    RadialField hv = heat_apply(v, *basis, 0.5);
    cplx lhs{0.0, 0.0}, rhs{0.0, 0.0};
    for (std::size_t j = 0; j < g.n(); ++j) {
      const double w = g.r(j) * g.r(j);
      lhs += w * std::conj(hu[j]) * v[j];
      rhs += w * std::conj(bump[j]) * hv[j];
    }
    const double rel = std::abs(lhs - rhs) / std::abs(rhs);
    report("self-adjointness of e^{-t L}", rel < 1e-10, rel);
  }

  // Littlewood-Paley partition of identity over the dyadic window
  {
    RadialField sum(g);
    for (int e = -10; e <= 10; ++e) {
      RadialField piece = lp_project(bump, *basis, std::ldexp(1.0, e));
      for (std::size_t j = 0; j < g.n(); ++j) sum[j] += piece[j];
    }
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
      num += g.weights()[j] * std::norm(sum[j] - bump[j]);
      den += g.weights()[j] * std::norm(bump[j]);
    }
    const double rel = std::sqrt(num / den);
    report("LP partition of identity (window 2^-10..2^10)", rel < 1e-3, rel);
  }

  // Bernstein comparability at s = 1 over the data's spectral range
  {
    std::vector<cplx> w(g.n()), c(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) w[j] = g.r(j) * bump[j];
    basis->analyze(w, c);
    double total = 0.0;
    for (std::size_t k = 0; k < g.n(); ++k) total += std::norm(c[k]);
    // 1% and 99% spectral quantiles
    double acc = 0.0, lam_lo = basis->eigenvalues().front(),
           lam_hi = basis->eigenvalues().back();
    bool lo_set = false;
    for (std::size_t k = 0; k < g.n(); ++k) {
      acc += std::norm(c[k]);
      if (!lo_set && acc > 0.01 * total) {
        lam_lo = basis->eigenvalues()[k];
        lo_set = true;
      }
      if (acc < 0.99 * total) lam_hi = basis->eigenvalues()[k];
    }
    bool ok = true;
    double worst = 1.0;
    for (int e = -10; e <= 10; ++e) {
      const double N = std::ldexp(1.0, e);
      if (N * N < lam_lo || N * N > lam_hi) continue;
      RadialField piece = lp_project(bump, *basis, N);
      double l2 = 0.0;
      for (std::size_t j = 0; j < g.n(); ++j)
        l2 += g.r(j) * g.r(j) * std::norm(piece[j]);
      l2 = std::sqrt(l2);
      const double h1 = std::sqrt(spectral_h1_norm2(piece, *basis) /
                                  (4.0 * std::numbers::pi * g.h()));
      if (l2 == 0.0) continue;
      const double ratio = N * l2 / h1;
      worst = std::max({worst, ratio, 1.0 / ratio});
      ok = ok && ratio > 0.1 && ratio < 10.0;
    }
    report("Bernstein s=1 comparability in [1/10, 10]", ok, worst);
  }

  // square function at s = 0 and s = 1
  for (int s : {0, 1}) {
    const double ratio = square_function_check(bump, *basis, s);
    report("square function ratio s=" + std::to_string(s) + " in [1/10, 10]",
           ratio > 0.1 && ratio < 10.0, ratio);
  }

  // form equivalence, direct vs shifted, on a smooth corpus at n = 6000
  {
    const RadialGrid g6(30.0, 6000);
    RadialField u = gaussian_field(g6, 1.0, 2.0, 8.0);
    const double d = quadratic_form(u, p, QuadFormMode::direct);
    const double s = quadratic_form(u, p, QuadFormMode::shifted);
    const double rel = std::abs(d - s) / std::abs(d);
    report("form equivalence direct vs shifted (1e-4)", rel < 1e-4, rel);
  }

  // Sobolev equivalence at s = 1, p = 2: ||L^{1/2} u|| vs ||grad u||
  {
    double worst = 1.0;
    bool ok = true;
    for (double center : {4.0, 8.0, 12.0}) {
      RadialField u = gaussian_field(g, 1.0, 1.5, center);
      const double h1a = spectral_h1_norm2(u, *basis);
      const PotentialParam p0(0.0);
      QuadFormInfo qi;
      const double grad2 = quadratic_form(u, p0, QuadFormMode::direct, &qi);
      const double ratio = std::sqrt(h1a / grad2);
      worst = std::max({worst, ratio, 1.0 / ratio});
      ok = ok && ratio > 0.1 && ratio < 10.0;
    }
    report("Sobolev equivalence s=1, p=2", ok, worst);
  }

  // heat kernel probe: positivity and (for a > 0) small-r suppression
  {
    const std::size_t js = g.n() / 2;
    RadialField col = heat_apply(
        [&] {
          RadialField d(g);
          d[js] = cplx{1.0, 0.0};
          return d;
        }(),
        *basis, 0.25);
    double min_entry = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j)
      min_entry = std::min(min_entry, col[j].real());
    report("heat kernel positivity", min_entry > -1e-10, min_entry);
  }

  std::cout << (failures == 0 ? "all properties pass" : "FAILURES present") << "\n";
  return failures == 0 ? kExitOk : kExitError;
}

} // namespace
