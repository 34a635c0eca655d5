#pragma once

#include <vector>

#include "nlslab/functionals.hpp"

namespace nlslab {

/// Radial virial weight: either the full square |x|^2 or the truncated
/// profile w_R(x) = R^2 phi(x/R) with phi a C^2 piecewise polynomial,
///   phi(s) = s^2 on [0,1],  constant plateau on [3, inf),
/// bridged so that phi' <= 2s and |phi''| <= 2 hold everywhere (phi'' is
/// continuous piecewise linear on [1,3]).  Note the plateau value is 4,
/// the largest round value the derivative caps allow: phi(1) = 1 and
/// phi'(1) = 2 with phi'' <= 2 and phi'(3) = 0 force
/// int_1^3 phi' <= 3.5, so a plateau of 9 is unreachable.
class VirialWeight {
public:
  static VirialWeight full_square();
  static VirialWeight truncated(double R);

  bool is_truncated() const { return truncated_; }
  double R() const { return R_; }

  double w(double r) const;   // weight value
  double dw(double r) const;  // w'
  double d2w(double r) const; // w''

  // The underlying profile phi and derivatives (s = r / R).
  static double phi(double s);
  static double dphi(double s);
  static double d2phi(double s);

private:
  VirialWeight(bool trunc, double R) : truncated_(trunc), R_(R) {}
  bool truncated_ = false;
  double R_ = 0.0;
};

/// V(u; w) = int |u|^2 w(r) 4 pi r^2 dr.
double moment(const RadialField& u, const VirialWeight& weight);

/// dV/dt along the flow: int 2 Im(conj(u) u_r) w'(r) 4 pi r^2 dr.
double dV_formula(const RadialField& u, const PotentialParam& p, const VirialWeight& weight);

/// Full-weight second derivative: 8 [ kinetic_a - (3/4) l4 ].
double d2V_full_formula(const RadialField& u, const PotentialParam& p);
double d2V_full_formula(const Functionals& f);

struct TruncatedVirialTerms {
  double main = 0.0;                // 8 [kinetic - (3/4) l4]
  double exterior_correction = 0.0; // the r > R block; <= 0 by the weight caps
  double error_band = 0.0;          // int_{r>=R} R^{-2}|u|^2 + |u|^4 (C = 1)
};

/// Radial reduction of the truncated identity: for radial u the Hessian
/// term contracts to |u_r|^2 w_R''(r), and the exterior block is
///   4 int_{r>R} [ |u_r|^2 w_R'' + a |u|^2 w_R'/r^3 ] dx
///   - 8 int_{r>R} [ |u_r|^2 + a |u|^2 / r^2 ] dx,
/// the last integral standing in for the nonlocal half-power localization.
/// Requires 1 < R < r_max / 3.
TruncatedVirialTerms d2V_truncated_terms(const RadialField& u, const PotentialParam& p,
                                         double R);

} // namespace nlslab
