#include "nlslab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlslab {

RadialGrid::RadialGrid(double r_max, std::size_t n) : n_(n), r_max_(r_max) {
  if (!(r_max > 0.0))
    throw std::invalid_argument("r_max must be positive");
  if (n < 16)
    throw std::invalid_argument("grid needs at least 16 nodes");
  h_ = r_max / static_cast<double>(n);
  r_.resize(n);
  w_.resize(n);
  const double fourpi = 4.0 * std::numbers::pi;
  for (std::size_t j = 0; j < n; ++j) {
    r_[j] = h_ * static_cast<double>(j + 1);
    w_[j] = fourpi * r_[j] * r_[j] * h_;
  }
  w_[n - 1] *= 0.5; // trapezoid end; the r = 0 end has zero integrand weight
}

double RadialGrid::integrate(std::span<const double> f) const {
  double s = 0.0;
  for (std::size_t j = 0; j < n_; ++j) s += w_[j] * f[j];
  return s;
}

double RadialGrid::integrate_power_aware(std::span<const double> f) const {
  double s = integrate(f);
  // First cell: the trapezoid assumed g(r) = 4 pi r^2 f(r) linear on [0, h]
  // with g(0) = 0, i.e. contribution h g_1 / 2.  Fit g = g_1 (r/h)^p through
  // the first two samples instead and integrate that exactly.
  const double fourpi = 4.0 * std::numbers::pi;
  const double g1 = fourpi * r_[0] * r_[0] * f[0];
  const double g2 = fourpi * r_[1] * r_[1] * f[1];
  if (g1 > 0.0 && g2 > 0.0) {
    const double p = std::log2(g2 / g1); // r_2 / r_1 = 2 on the uniform grid
    if (p > -0.9 && std::isfinite(p))
      s += h_ * g1 * (1.0 / (p + 1.0) - 0.5);
  }
  return s;
}

} // namespace nlslab
