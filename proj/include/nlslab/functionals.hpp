#pragma once

#include <optional>
#include <span>

#include "nlslab/field.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/potential.hpp"

namespace nlslab {

/// Mass, kinetic quadratic form, L^4 norm to the fourth, and the energy
/// E_a(u) = kinetic/2 - l4/4 of a field.
struct Functionals {
  double mass = 0.0;
  double kinetic_a = 0.0;
  double l4 = 0.0;
  double energy_a = 0.0;
};

enum class QuadFormMode {
  direct,  // int |u'|^2 + (a/r^2)|u|^2  4 pi r^2 dr
  shifted, // int |u' + (sigma/r) u|^2   4 pi r^2 dr
};

struct QuadFormInfo {
  bool tail_ok = true; // |u(r_max)| < 1e-6 * peak
};

/// The quadratic form ||u||^2_{H^1_a-dot} by quadrature.  Derivatives are
/// centered differences with one-sided second-order closures at the ends.
/// Both modes agree up to discretization; shifted is the numerically robust
/// one near the origin when sigma != 0.  If info is null and the field does
/// not decay at r_max a warning is printed once per call site's run.
double quadratic_form(const RadialField& u, const PotentialParam& p,
                      QuadFormMode mode, QuadFormInfo* info = nullptr);

/// mass / kinetic(direct) / l4 / energy of u.
Functionals functionals_of(const RadialField& u, const PotentialParam& p);

/// l4 / (mass^{1/2} kinetic^{3/2}); scale and phase invariant.
/// Throws std::invalid_argument on the zero field.
double gn_quotient(const RadialField& u, const PotentialParam& p);
double gn_quotient(const Functionals& f);

/// Centered-difference derivative samples with one-sided ends.
std::vector<cplx> radial_derivative(const RadialField& u);

} // namespace nlslab
