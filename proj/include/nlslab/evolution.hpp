#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/functionals.hpp"
#include "nlslab/tridiag.hpp"

namespace nlslab {

struct EvolveConfig {
  double dt = 1e-3;
  double t_final = 10.0;
  std::size_t monitor_stride = 50; // steps between recorded samples
  double blowup_factor = 100.0;    // trip when kinetic > factor^2 * initial
  double scatter_t1 = 0.0;         // late probe times; 0,0 disables the probe
  double scatter_t2 = 0.0;
  double scatter_tol = 1e-2;
  double cn_theta = 0.5; // Crank-Nicolson; fixed, kept for the record
};

enum class Outcome { ran_to_horizon, blowup_detected, scattering_detected };

struct TrajectorySample {
  double t;
  Functionals f;
  double V;   // full-square virial moment
  double dV;  // first-derivative formula
  double d2V; // second-derivative formula (full)
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  Outcome outcome = Outcome::ran_to_horizon;
  double t_end = 0.0;            // last time reached
  double blowup_time = 0.0;      // set when outcome == blowup_detected
  std::string annotation;        // e.g. numeric-overflow note
  double scatter_distance = -1.0; // Cauchy distance when probed (else -1)
  std::size_t dt_refinements = 0;
};

/// One Crank-Nicolson step of e^{-i dt L_a} on the reduced field:
/// (I + i dt/2 A) w+ = (I - i dt/2 A) w.  Unitary in the unweighted
/// discrete l2 norm of w up to solve roundoff; dt may be negative.
void linear_step(RadialField& u, const SymTridiag& A, double dt);

/// Exact nonlinear phase flow of i u_t = -|u|^2 u over dt:
/// u <- u exp(i |u|^2 dt); the modulus is invariant pointwise.
void nonlinear_phase_step(RadialField& u, double dt);

/// Strang composition: half nonlinear phase, full linear step, half phase.
void strang_step(RadialField& u, const SymTridiag& A, double dt);

/// Steps u0 to t_final or until a detector fires, recording diagnostics
/// every monitor_stride steps.  On a blowup trip the step is halved and the
/// run continues, up to 4 refinements, before blowup is declared at the
/// current time.  NaN or overflow declares blowup with an annotation.
/// When a scatter window is set and the run reaches t2, the Cauchy
/// scattering criterion below decides scattering_detected.
Trajectory evolve(const RadialField& u0, const PotentialParam& p, const EvolveConfig& cfg);

/// Cauchy scattering criterion: propagate u(t1) and u(t2) backward by the
/// free discrete flow to t = 0 and compare in the H^1_a norm relative to
/// the initial data norm: scattered iff
///   || e^{i t1 L} u(t1) - e^{i t2 L} u(t2) ||_{H^1_a} / ||u0||_{H^1_a} < tol.
/// The backward propagation uses the same Crank-Nicolson step and dt, so
/// the distance measures exactly the nonlinear increment between t1 and t2
/// of the discrete dynamics.
double scattering_distance(const RadialField& u_t1, double t1, const RadialField& u_t2,
                           double t2, const PotentialParam& p, double dt,
                           double data_h1_norm);

} // namespace nlslab
