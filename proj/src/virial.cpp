#include "nlslab/virial.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

// Bridge profile on [1, 3]: phi'' is continuous piecewise linear through
// (1, 2) -> (1 + s1, -2) -> (1 + 2 s1, -2) -> (3, 0) with s1 the root of
// 2 s^2 + 4 s - 5 = 0, which makes phi' integrate to 3 (plateau 4) while
// keeping phi' <= 2 s and |phi''| <= 2 everywhere.
namespace {
const double kS1 = (-4.0 + std::sqrt(56.0)) / 4.0; // 0.87082869...
const double kS2 = 2.0 * kS1;
constexpr double kPlateau = 4.0;

// phi'' on the bridge, s in [0, 2] measured from 1
double bridge_d2(double s) {
  if (s <= kS1) return 2.0 - 4.0 * s / kS1;
  if (s <= kS2) return -2.0;
  return -2.0 * (2.0 - s) / (2.0 - kS2);
}

// phi' = 2 + int_0^s phi''
double bridge_d1(double s) {
  if (s <= kS1) return 2.0 + 2.0 * s - 2.0 * s * s / kS1;
  if (s <= kS2) return 2.0 - 2.0 * (s - kS1);
  const double u = 2.0 - s; // phi' = u^2 / (2 - s2) so phi'(2) = 0
  return u * u / (2.0 - kS2);
}

// phi = 1 + int_0^s phi'
double bridge_val(double s) {
  if (s <= kS1) return 1.0 + 2.0 * s + s * s - 2.0 * s * s * s / (3.0 * kS1);
  const double f_s1 = 1.0 + 2.0 * kS1 + kS1 * kS1 - 2.0 * kS1 * kS1 / 3.0;
  if (s <= kS2) {
    const double d = s - kS1;
    return f_s1 + (2.0 - 2.0 * kS1) * d - d * d;
  }
  const double u = 2.0 - s;
  const double u3 = u * u * u;
  return kPlateau - u3 / (3.0 * (2.0 - kS2));
}
} // namespace

double VirialWeight::phi(double s) {
  if (s <= 1.0) return s * s;
  if (s >= 3.0) return kPlateau;
  return bridge_val(s - 1.0);
}

double VirialWeight::dphi(double s) {
  if (s <= 1.0) return 2.0 * s;
  if (s >= 3.0) return 0.0;
  return bridge_d1(s - 1.0);
}

double VirialWeight::d2phi(double s) {
  if (s <= 1.0) return 2.0;
  if (s >= 3.0) return 0.0;
  return bridge_d2(s - 1.0);
}

VirialWeight VirialWeight::full_square() { return VirialWeight(false, 0.0); }

VirialWeight VirialWeight::truncated(double R) {
  if (!(R > 1.0)) throw std::invalid_argument("truncated weight needs R > 1");
  return VirialWeight(true, R);
}

double VirialWeight::w(double r) const {
  if (!truncated_) return r * r;
  return R_ * R_ * phi(r / R_);
}

double VirialWeight::dw(double r) const {
  if (!truncated_) return 2.0 * r;
  return R_ * dphi(r / R_);
}

double VirialWeight::d2w(double r) const {
  if (!truncated_) return 2.0;
  return d2phi(r / R_);
}

double moment(const RadialField& u, const VirialWeight& weight) {
  const RadialGrid& g = u.grid();
  std::vector<double> f(g.n());
  for (std::size_t j = 0; j < g.n(); ++j)
    f[j] = std::norm(u[j]) * weight.w(g.r(j));
  return g.integrate(f);
}

double dV_formula(const RadialField& u, const PotentialParam& /*p*/,
                  const VirialWeight& weight) {
  const RadialGrid& g = u.grid();
  const auto du = radial_derivative(u);
  std::vector<double> f(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double im = std::imag(std::conj(u[j]) * du[j]);
    f[j] = 2.0 * im * weight.dw(g.r(j));
  }
  return g.integrate(f);
}

double d2V_full_formula(const Functionals& f) {
  return 8.0 * (f.kinetic_a - 0.75 * f.l4);
}

double d2V_full_formula(const RadialField& u, const PotentialParam& p) {
  return d2V_full_formula(functionals_of(u, p));
}

TruncatedVirialTerms d2V_truncated_terms(const RadialField& u, const PotentialParam& p,
                                         double R) {
  const RadialGrid& g = u.grid();
  if (!(R > 1.0 && R < g.r_max() / 3.0))
    throw std::invalid_argument("need 1 < R < r_max / 3");
  const VirialWeight vw = VirialWeight::truncated(R);
  const auto du = radial_derivative(u);

  TruncatedVirialTerms out;
  const Functionals f = functionals_of(u, p);
  out.main = d2V_full_formula(f);

  std::vector<double> corr(g.n(), 0.0), band(g.n(), 0.0);
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double r = g.r(j);
    if (r <= R) continue;
    const double ur2 = std::norm(du[j]);
    const double m2 = std::norm(u[j]);
    // 4 [ |u_r|^2 w'' + a |u|^2 w'/r^3 ] - 8 [ |u_r|^2 + a |u|^2 / r^2 ]
    corr[j] = 4.0 * (ur2 * vw.d2w(r) + p.a * m2 * vw.dw(r) / (r * r * r)) -
              8.0 * (ur2 + p.a * m2 / (r * r));
    band[j] = m2 / (R * R) + m2 * m2;
  }
  out.exterior_correction = g.integrate(corr);
  out.error_band = g.integrate(band);
  return out;
}

} // namespace nlslab
