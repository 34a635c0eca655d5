#include "nlslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlslab {

RadialField::RadialField(const RadialGrid& g, std::vector<cplx> values)
    : grid_(&g), v_(std::move(values)) {
  if (v_.size() != g.n())
    throw std::invalid_argument("field length must equal grid node count");
}

double RadialField::max_abs() const {
  double m = 0.0;
  for (const auto& z : v_) m = std::max(m, std::abs(z));
  return m;
}

double RadialField::tail_fraction() const {
  const double peak = max_abs();
  if (peak == 0.0) return 0.0;
  return std::abs(v_.back()) / peak;
}

RadialField& RadialField::operator*=(double s) {
  for (auto& z : v_) z *= s;
  return *this;
}

RadialField& RadialField::operator*=(cplx s) {
  for (auto& z : v_) z *= s;
  return *this;
}

RadialField field_from_real(const RadialGrid& g, std::span<const double> values) {
  if (values.size() != g.n())
    throw std::invalid_argument("field length must equal grid node count");
  RadialField u(g);
  for (std::size_t j = 0; j < g.n(); ++j) u[j] = cplx{values[j], 0.0};
  return u;
}

RadialField rescale(const RadialField& u, double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("rescale needs lambda > 0");
  const RadialGrid& g = u.grid();
  if (lambda == 1.0) return u;

  // Contracting (lambda > 1) samples u beyond r_max; reject unless the
  // truncated part is at tail level.
  if (lambda > 1.0) {
    const double peak = u.max_abs();
    const double r_keep = g.r_max() / lambda;
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (g.r(j) > r_keep + g.h() && std::abs(u[j]) > 1e-8 * peak)
        throw std::invalid_argument("rescaled support does not fit the grid");
    }
  }

  RadialField out(g);
  const double h = g.h();
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double rs = lambda * g.r(j);
    if (rs >= g.r_max()) {
      out[j] = cplx{0.0, 0.0};
      continue;
    }
    if (rs <= g.r(0)) {
      out[j] = lambda * u[0]; // clamp below the first node
      continue;
    }
    const double x = rs / h; // node index + 1 in continuous coordinates
    const auto k = static_cast<std::size_t>(x) - 1;
    const double frac = x - static_cast<double>(k + 1);
    out[j] = lambda * ((1.0 - frac) * u[k] + frac * u[k + 1]);
  }
  return out;
}

RadialField gaussian_field(const RadialGrid& g, double amplitude, double width,
                           double center) {
  RadialField u(g);
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double d = g.r(j) - center;
    u[j] = cplx{amplitude * std::exp(-d * d / (2.0 * width * width)), 0.0};
  }
  return u;
}

} // namespace nlslab
