#include "nlslab/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "nlslab/kernels.hpp"
#include "nlslab/virial.hpp"

namespace nlslab {

void linear_step(RadialField& u, const SymTridiag& A, double dt) {
  const std::size_t n = u.size();
  if (A.n() != n) throw std::invalid_argument("operator/grid size mismatch");
  if (dt == 0.0) return;
  const RadialGrid& g = u.grid();
  static thread_local std::vector<cplx> w, rhs;
  w.resize(n);
  rhs.resize(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = g.r(j) * u[j];
  // (I + i dt/2 A) w+ = (I - i dt/2 A) w
  const cplx z{0.0, 0.5 * dt};
  A.apply(std::span<const cplx>(w), std::span<cplx>(rhs));
  for (std::size_t j = 0; j < n; ++j) rhs[j] = w[j] - z * rhs[j];
  solve_shifted(A, z, rhs);
  for (std::size_t j = 0; j < n; ++j) u[j] = rhs[j] / g.r(j);
}

void nonlinear_phase_step(RadialField& u, double dt) {
  if (dt == 0.0) return;
  const std::size_t n = u.size();
  static thread_local std::vector<double> angle;
  angle.resize(n);
  for (std::size_t j = 0; j < n; ++j) angle[j] = std::norm(u[j]) * dt;
  kernels::phase_rotate(u.values(), angle);
}

void strang_step(RadialField& u, const SymTridiag& A, double dt) {
  nonlinear_phase_step(u, 0.5 * dt);
  linear_step(u, A, dt);
  nonlinear_phase_step(u, 0.5 * dt);
}

namespace {

TrajectorySample make_sample(double t, const RadialField& u, const PotentialParam& p,
                             const VirialWeight& vw) {
  TrajectorySample s;
  s.t = t;
  s.f = functionals_of(u, p);
  s.V = moment(u, vw);
  s.dV = dV_formula(u, p, vw);
  s.d2V = d2V_full_formula(s.f);
  return s;
}

} // namespace

Trajectory evolve(const RadialField& u0, const PotentialParam& p, const EvolveConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.blowup_factor > 1.0))
    throw std::invalid_argument("blowup_factor must exceed 1");
  const bool probe = cfg.scatter_t2 > 0.0;
  if (probe && !(cfg.scatter_t1 < cfg.scatter_t2 && cfg.scatter_t2 <= cfg.t_final))
    throw std::invalid_argument("scatter window needs t1 < t2 <= t_final");

  const RadialGrid& g = u0.grid();
  const SymTridiag A = assemble_operator(p, g);
  const VirialWeight vw = VirialWeight::full_square();

  Trajectory traj;
  RadialField u = u0;
  double t = 0.0;
  double dt = cfg.dt;

  TrajectorySample s0 = make_sample(0.0, u, p, vw);
  if (!std::isfinite(s0.f.mass) || !std::isfinite(s0.f.kinetic_a))
    throw std::invalid_argument("initial data has non-finite functionals");
  traj.samples.push_back(s0);
  const double trip_level =
      cfg.blowup_factor * cfg.blowup_factor * std::max(s0.f.kinetic_a, 1e-300);
  const double data_h1 = std::sqrt(s0.f.mass + s0.f.kinetic_a);

  RadialField snap1(g), snap2(g);
  double snap_t1 = -1.0, snap_t2 = -1.0;
  double last_stable_t = 0.0;
  std::size_t step = 0;

  while (t < cfg.t_final - 1e-12) {
    dt = std::min(dt, cfg.t_final - t);
    strang_step(u, A, dt);
    t += dt;
    ++step;

    if (probe) {
      if (snap_t1 < 0.0 && t >= cfg.scatter_t1 - 0.5 * dt) {
        snap1 = u;
        snap_t1 = t;
      }
      if (snap_t2 < 0.0 && t >= cfg.scatter_t2 - 0.5 * dt) {
        snap2 = u;
        snap_t2 = t;
      }
    }

    if (step % cfg.monitor_stride == 0 || t >= cfg.t_final - 1e-12) {
      TrajectorySample s = make_sample(t, u, p, vw);
      const bool finite = std::isfinite(s.f.mass) && std::isfinite(s.f.kinetic_a) &&
                          std::isfinite(s.f.l4);
      if (!finite || s.f.kinetic_a > trip_level) {
        if (finite && traj.dt_refinements < 4) {
          ++traj.dt_refinements;
          dt *= 0.5;
          traj.samples.push_back(s);
          continue;
        }
        traj.outcome = Outcome::blowup_detected;
        traj.blowup_time = last_stable_t;
        traj.t_end = t;
        if (!finite) traj.annotation = "numeric-overflow in field";
        traj.samples.push_back(s);
        return traj;
      }
      last_stable_t = t;
      traj.samples.push_back(s);
    }
  }

  traj.t_end = t;
  if (probe && snap_t1 > 0.0 && snap_t2 > 0.0) {
    traj.scatter_distance =
        scattering_distance(snap1, snap_t1, snap2, snap_t2, p, cfg.dt, data_h1);
    if (traj.scatter_distance < cfg.scatter_tol)
      traj.outcome = Outcome::scattering_detected;
  }
  return traj;
}

double scattering_distance(const RadialField& u_t1, double t1, const RadialField& u_t2,
                           double t2, const PotentialParam& p, double dt,
                           double data_h1_norm) {
  if (!(t1 < t2)) throw std::invalid_argument("need t1 < t2");
  const RadialGrid& g = u_t1.grid();
  const SymTridiag A = assemble_operator(p, g);

  auto backward = [&](const RadialField& v, double tb) {
    RadialField out = v;
    const auto steps = static_cast<std::size_t>(std::llround(tb / dt));
    for (std::size_t k = 0; k < steps; ++k) linear_step(out, A, -dt);
    return out;
  };
  RadialField b1 = backward(u_t1, t1);
  RadialField b2 = backward(u_t2, t2);
  for (std::size_t j = 0; j < b1.size(); ++j) b1[j] -= b2[j];
  QuadFormInfo qi;
  const double kin = quadratic_form(b1, p, QuadFormMode::direct, &qi);
  const double mass = kernels::weighted_norm2(g.weights(), b1.values());
  return std::sqrt(std::max(mass + kin, 0.0)) / data_h1_norm;
}

} // namespace nlslab
