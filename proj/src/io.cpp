#include "nlslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nlslab::io {

using nlohmann::json;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}
} // namespace

void write_field_csv(const std::string& path, const RadialField& u) {
  auto f = open_out(path);
  f << "r,re_u,im_u\n";
  const RadialGrid& g = u.grid();
  for (std::size_t j = 0; j < g.n(); ++j)
    f << fmt(g.r(j)) << ',' << fmt(u[j].real()) << ',' << fmt(u[j].imag()) << '\n';
}

RadialField read_field_csv(const std::string& path, const RadialGrid& g) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open data file: " + path);
  std::string line;
  if (!std::getline(f, line) || line.rfind("r,re_u,im_u", 0) != 0)
    throw std::runtime_error(path + ":1: expected header r,re_u,im_u");
  RadialField u(g);
  std::size_t j = 0;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (j >= g.n())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": more rows than grid nodes");
    double r, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r, &re, &im) != 3)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed row");
    if (std::abs(r - g.r(j)) > 1e-9 * g.r_max())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": radius does not match the grid");
    u[j++] = cplx{re, im};
  }
  if (j != g.n())
    throw std::runtime_error(path + ": fewer rows than grid nodes");
  return u;
}

void write_profile_csv(const std::string& path, const RadialField& profile) {
  auto f = open_out(path);
  f << "r,Q\n";
  const RadialGrid& g = profile.grid();
  for (std::size_t j = 0; j < g.n(); ++j)
    f << fmt(g.r(j)) << ',' << fmt(profile[j].real()) << '\n';
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto f = open_out(path);
  f << "t,mass,kinetic_a,l4,energy,V,dV,d2V\n";
  for (const auto& s : traj.samples) {
    f << fmt(s.t) << ',' << fmt(s.f.mass) << ',' << fmt(s.f.kinetic_a) << ','
      << fmt(s.f.l4) << ',' << fmt(s.f.energy_a) << ',' << fmt(s.V) << ','
      << fmt(s.dV) << ',' << fmt(s.d2V) << '\n';
  }
}

namespace {
json config_or_empty(const std::string& config_json) {
  if (config_json.empty()) return json::object();
  return json::parse(config_json);
}
} // namespace

void write_thresholds_json(const std::string& path, double a, const GroundStateResult& gs,
                           const Thresholds& th, const std::string& config_json) {
  json j;
  j["format_version"] = kFormatVersion;
  j["a"] = a;
  j["flavor"] = to_string(th.flavor);
  j["C"] = th.c_constant;
  j["E_threshold"] = th.energy_threshold;
  j["K_threshold"] = th.k_threshold;
  j["rho1"] = gs.pohozaev_rho1;
  j["rho2"] = gs.pohozaev_rho2;
  j["mass"] = gs.f.mass;
  j["kinetic_a"] = gs.f.kinetic_a;
  j["l4"] = gs.f.l4;
  j["energy_a"] = gs.f.energy_a;
  j["shoot_c"] = gs.shoot_c;
  j["converged"] = gs.converged;
  j["config"] = config_or_empty(config_json);
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

void write_outcome_json(const std::string& path, const Trajectory& traj,
                        const std::string& config_json) {
  json j;
  j["format_version"] = kFormatVersion;
  j["outcome"] = to_string(traj.outcome);
  j["t_end"] = traj.t_end;
  if (traj.outcome == Outcome::blowup_detected) j["blowup_time"] = traj.blowup_time;
  if (traj.scatter_distance >= 0.0) j["scatter_distance"] = traj.scatter_distance;
  if (!traj.annotation.empty()) j["annotation"] = traj.annotation;
  j["dt_refinements"] = traj.dt_refinements;
  if (!traj.samples.empty()) {
    const auto& first = traj.samples.front();
    const auto& last = traj.samples.back();
    j["mass_drift"] =
        std::abs(last.f.mass - first.f.mass) / std::max(first.f.mass, 1e-300);
    j["energy_drift"] = std::abs(last.f.energy_a - first.f.energy_a) /
                        std::max(std::abs(first.f.energy_a), 1e-300);
  }
  j["config"] = config_or_empty(config_json);
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

void write_classification_json(const std::string& path, const Classification& cls,
                               const std::string& config_json) {
  json j;
  j["format_version"] = kFormatVersion;
  j["predicted"] = to_string(cls.predicted);
  j["observed"] = cls.has_observation ? to_string(cls.observed) : "none";
  j["agreement"] = cls.agreement;
  j["ME_product"] = cls.me_product;
  j["MK_product"] = cls.mk_product;
  j["ME_over_E_threshold"] = cls.me_ratio;
  j["MK_over_K_threshold"] = cls.mk_ratio;
  j["thresholds"] = {{"C", cls.thresholds.c_constant},
                     {"E_threshold", cls.thresholds.energy_threshold},
                     {"K_threshold", cls.thresholds.k_threshold},
                     {"flavor", to_string(cls.thresholds.flavor)}};
  j["config"] = config_or_empty(config_json);
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

void write_sweep_csv(const std::string& path, const std::vector<SweepCell>& cells) {
  auto f = open_out(path);
  f << "a,lambda,ME_over_E,MK_over_K,predicted,observed,t_blowup,scatter_distance,error\n";
  for (const auto& c : cells) {
    f << fmt(c.a) << ',' << fmt(c.lambda) << ',' << fmt(c.cls.me_ratio) << ','
      << fmt(c.cls.mk_ratio) << ',' << to_string(c.cls.predicted) << ','
      << (c.cls.has_observation ? to_string(c.cls.observed) : "none") << ','
      << (c.t_blowup >= 0.0 ? fmt(c.t_blowup) : "") << ','
      << (c.scatter_distance >= 0.0 ? fmt(c.scatter_distance) : "") << ','
      << c.error << '\n';
  }
}

} // namespace nlslab::io
