// Crank-Nicolson step, nonlinear phase, Strang composition, the evolve
// driver with its detectors, and the Cauchy scattering criterion.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlslab/evolution.hpp"
#include "nlslab/ground_state.hpp"
#include "nlslab/kernels.hpp"

using namespace nlslab;
using std::numbers::pi;

namespace {
double plain_l2_w(const RadialField& u) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j)
    s += std::norm(u[j]) * u.grid().r(j) * u.grid().r(j);
  return std::sqrt(s);
}
} // namespace

TEST_CASE("linear_step: unitarity, reversibility, exact eigenmode phase") {
  const RadialGrid g(20.0, 1024);
  PotentialParam p0(0.0);
  SymTridiag A = assemble_operator(p0, g);
  const double dt = 1e-2;

  SUBCASE("dt = 0 is the identity") {
    RadialField u = gaussian_field(g, 1.0, 2.0, 5.0);
    RadialField v = u;
    linear_step(v, A, 0.0);
    for (std::size_t j = 0; j < g.n(); j += 101) CHECK(v[j] == u[j]);
  }

  SUBCASE("discrete l2 norm of w preserved to 1e-12 per step") {
    RadialField u = gaussian_field(g, 1.0, 1.5, 6.0);
    const double n0 = plain_l2_w(u);
    for (int k = 0; k < 50; ++k) linear_step(u, A, dt);
    CHECK(plain_l2_w(u) == doctest::Approx(n0).epsilon(1e-12));
  }

  SUBCASE("step followed by reversed step is the identity") {
    RadialField u = gaussian_field(g, 1.0, 1.5, 6.0);
    RadialField v = u;
    linear_step(v, A, dt);
    linear_step(v, A, -dt);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
      num += std::norm(v[j] - u[j]);
      den += std::norm(u[j]);
    }
    CHECK(std::sqrt(num / den) < 1e-12);
  }

  SUBCASE("exact Cayley phase on a discrete eigenvector") {
    // w_j = sin(k pi j / (n+1)) with eigenvalue (4/h^2) sin^2(k pi / (2(n+1)))
    const std::size_t n = g.n();
    const double h = g.h();
    const int k = 3;
    const double lam =
        4.0 / (h * h) * std::pow(std::sin(k * pi / (2.0 * (n + 1))), 2);
    RadialField u(g);
    for (std::size_t j = 0; j < n; ++j)
      u[j] = std::sin(k * pi * (j + 1) / double(n + 1)) / g.r(j);
    RadialField v = u;
    linear_step(v, A, dt);
    // multiplier (1 - i dt lam / 2) / (1 + i dt lam / 2) = e^{-2 i atan(dt lam / 2)}
    const double phase = -2.0 * std::atan(0.5 * dt * lam);
    const cplx mult{std::cos(phase), std::sin(phase)};
    for (std::size_t j = 0; j < n; j += 37) {
      CHECK(std::abs(v[j] - mult * u[j]) <= 1e-12 * std::abs(u[j]));
    }
    // and the continuum phase -dt (k pi / L)^2 is approached at O(h^2, dt^3)
    const double cont = -dt * std::pow(k * pi / (g.r_max() + h), 2);
    CHECK(phase == doctest::Approx(cont).epsilon(1e-4));
  }
}

TEST_CASE("nonlinear_phase_step: modulus and mass invariance") {
  const RadialGrid g(20.0, 512);
  RadialField u = gaussian_field(g, 1.7, 2.0, 4.0);
  const double dt = 0.3;
  RadialField v = u;
  nonlinear_phase_step(v, dt);
  for (std::size_t j = 0; j < g.n(); j += 13) {
    CHECK(std::abs(v[j]) == doctest::Approx(std::abs(u[j])).epsilon(1e-14));
    // real data rotates by |u|^2 dt
    const double expected = std::norm(u[j]) * dt;
    if (std::abs(u[j]) > 1e-12)
      CHECK(std::arg(v[j]) == doctest::Approx(expected).epsilon(1e-12));
  }
  const double m0 = kernels::weighted_norm2(g.weights(), u.values());
  const double m1 = kernels::weighted_norm2(g.weights(), v.values());
  CHECK(m1 == doctest::Approx(m0).epsilon(1e-15));
}

TEST_CASE("strang_step: fixed point, mass conservation, soliton local order") {
  const RadialGrid g(20.0, 1024);
  PotentialParam p0(0.0);
  SymTridiag A = assemble_operator(p0, g);

  SUBCASE("zero field is a fixed point") {
    RadialField z(g);
    strang_step(z, A, 1e-2);
    CHECK(z.max_abs() == 0.0);
  }

  SUBCASE("mass conserved to 1e-10 over 1e4 steps") {
    RadialField u = gaussian_field(g, 0.8, 2.0, 5.0);
    const double m0 = kernels::weighted_norm2(g.weights(), u.values());
    for (int k = 0; k < 10000; ++k) strang_step(u, A, 1e-3);
    const double m1 = kernels::weighted_norm2(g.weights(), u.values());
    CHECK(std::abs(m1 - m0) / m0 < 1e-10);
  }

  SUBCASE("one step on the soliton reproduces e^{it} Q at third order") {
    // L Q = Q^3 - Q makes the exact solution a pure phase; the one-step
    // modulus defect is the O(dt^3) splitting error.
    const RadialGrid gq(30.0, 3000);
    GroundStateResult gs = solve_ground_state(p0, gq, 1e-10);
    SymTridiag Aq = assemble_operator(p0, gq);
    auto defect = [&](double dt) {
      RadialField u = gs.profile;
      strang_step(u, Aq, dt);
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < gq.n(); ++j) {
        const double d = std::abs(u[j]) - gs.profile[j].real();
        num += gq.weights()[j] * d * d;
        den += gq.weights()[j] * std::norm(gs.profile[j]);
      }
      return std::sqrt(num / den);
    };
    const double d1 = defect(2e-2);
    const double d2 = defect(1e-2);
    CHECK(d1 / d2 == doctest::Approx(8.0).epsilon(0.35)); // O(dt^3) locally
  }
}

TEST_CASE("evolve: validation, horizon, blowup detection") {
  SUBCASE("config validation") {
    const RadialGrid g(20.0, 256);
    RadialField u = gaussian_field(g, 0.5, 2.0, 5.0);
    EvolveConfig bad;
    bad.dt = -1.0;
    CHECK_THROWS_AS(evolve(u, PotentialParam(0.0), bad), std::invalid_argument);
    EvolveConfig bad2;
    bad2.blowup_factor = 0.5;
    CHECK_THROWS_AS(evolve(u, PotentialParam(0.0), bad2), std::invalid_argument);
  }

  SUBCASE("small data runs to the horizon with increasing sample times") {
    const RadialGrid g(20.0, 512);
    RadialField u = gaussian_field(g, 0.3, 2.0, 5.0);
    EvolveConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_final = 1.0;
    cfg.monitor_stride = 10;
    Trajectory traj = evolve(u, PotentialParam(0.0), cfg);
    CHECK(traj.outcome == Outcome::ran_to_horizon);
    CHECK(traj.t_end == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
      CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  }

  SUBCASE("super-threshold soliton multiple blows up quickly") {
    const RadialGrid g(20.0, 2000);
    PotentialParam p(-0.1);
    GroundStateResult gs = solve_ground_state(p, g, 1e-8);
    RadialField u = gs.profile;
    u *= 1.1;
    EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 10.0;
    cfg.blowup_factor = 10.0;
    cfg.monitor_stride = 20;
    Trajectory traj = evolve(u, p, cfg);
    CHECK(traj.outcome == Outcome::blowup_detected);
    CHECK(traj.t_end < 10.0);
    CHECK(traj.dt_refinements >= 1);
  }
}

TEST_CASE("scattering distance") {
  const RadialGrid g(30.0, 1500);
  PotentialParam p0(0.0);
  SymTridiag A = assemble_operator(p0, g);
  const double dt = 1e-2;

  SUBCASE("free linear evolution gives zero distance") {
    RadialField u = gaussian_field(g, 1.0, 2.0, 6.0);
    const Functionals f0 = functionals_of(u, p0);
    const double norm0 = std::sqrt(f0.mass + f0.kinetic_a);
    RadialField u1 = u;
    for (int k = 0; k < 100; ++k) linear_step(u1, A, dt); // t1 = 1
    RadialField u2 = u1;
    for (int k = 0; k < 150; ++k) linear_step(u2, A, dt); // t2 = 2.5
    const double d = scattering_distance(u1, 1.0, u2, 2.5, p0, dt, norm0);
    CHECK(d < 1e-10);
  }

  SUBCASE("the soliton never scatters: O(1) distance on an early window") {
    GroundStateResult gs = solve_ground_state(p0, g, 1e-8);
    EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 3.0;
    cfg.blowup_factor = 50.0;
    cfg.scatter_t1 = 1.0;
    cfg.scatter_t2 = 3.0;
    Trajectory traj = evolve(gs.profile, p0, cfg);
    CHECK(traj.outcome != Outcome::scattering_detected);
    CHECK(traj.scatter_distance > 0.2);
  }
}
