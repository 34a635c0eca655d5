#include "nlslab/functionals.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "nlslab/kernels.hpp"

namespace nlslab {

std::vector<cplx> radial_derivative(const RadialField& u) {
  const std::size_t n = u.size();
  const double h = u.grid().h();
  std::vector<cplx> du(n);
  // centered in the interior, second-order one-sided at both ends
  du[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  for (std::size_t j = 1; j + 1 < n; ++j) du[j] = (u[j + 1] - u[j - 1]) / (2.0 * h);
  du[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return du;
}

double quadratic_form(const RadialField& u, const PotentialParam& p,
                      QuadFormMode mode, QuadFormInfo* info) {
  const RadialGrid& g = u.grid();
  const std::size_t n = g.n();
  const bool tail_ok = u.tail_fraction() < 1e-6;
  if (info) {
    info->tail_ok = tail_ok;
  } else if (!tail_ok) {
    std::cerr << "nlslab: quadratic_form on a field that does not decay at r_max;"
                 " truncation contaminates the form\n";
  }

  const auto du = radial_derivative(u);
  std::vector<double> integrand(n);
  if (mode == QuadFormMode::direct) {
    for (std::size_t j = 0; j < n; ++j) {
      const double r = g.r(j);
      integrand[j] = std::norm(du[j]) + (p.a / (r * r)) * std::norm(u[j]);
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double r = g.r(j);
      integrand[j] = std::norm(du[j] + (p.sigma / r) * u[j]);
    }
  }
  return g.integrate(integrand);
}

Functionals functionals_of(const RadialField& u, const PotentialParam& p) {
  const RadialGrid& g = u.grid();
  Functionals f;
  f.mass = kernels::weighted_norm2(g.weights(), u.values());
  f.l4 = kernels::weighted_l4(g.weights(), u.values());
  QuadFormInfo qi;
  f.kinetic_a = quadratic_form(u, p, QuadFormMode::direct, &qi);
  f.energy_a = 0.5 * f.kinetic_a - 0.25 * f.l4;
  return f;
}

double gn_quotient(const Functionals& f) {
  if (f.mass <= 0.0)
    throw std::invalid_argument("gn_quotient needs a nonzero field");
  return f.l4 / (std::sqrt(f.mass) * std::pow(f.kinetic_a, 1.5));
}

double gn_quotient(const RadialField& u, const PotentialParam& p) {
  return gn_quotient(functionals_of(u, p));
}

} // namespace nlslab
