#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

using cplx = std::complex<double>;

/// Complex radial samples u_j = u(r_j) on a RadialGrid.  The reduced field
/// w_j = r_j u_j is the variable all tridiagonal linear algebra acts on,
/// with implicit boundary values w(0) = 0 and w beyond r_max = 0.
class RadialField {
public:
  explicit RadialField(const RadialGrid& g) : grid_(&g), v_(g.n(), cplx{0.0, 0.0}) {}
  RadialField(const RadialGrid& g, std::vector<cplx> values);

  const RadialGrid& grid() const { return *grid_; }
  std::size_t size() const { return v_.size(); }

  cplx& operator[](std::size_t j) { return v_[j]; }
  const cplx& operator[](std::size_t j) const { return v_[j]; }

  std::span<cplx> values() { return v_; }
  std::span<const cplx> values() const { return v_; }

  double max_abs() const;
  /// |u(r_max)| / max_j |u_j|; fields feeding the quadratic form should keep
  /// this below 1e-6 so the Dirichlet truncation is harmless.
  double tail_fraction() const;

  RadialField& operator*=(double s);
  RadialField& operator*=(cplx s);

private:
  const RadialGrid* grid_;
  std::vector<cplx> v_;
};

/// Real non-negative samples interpreted as a field (ground states, seeds).
RadialField field_from_real(const RadialGrid& g, std::span<const double> values);

/// Spatial part of the scaling u -> lambda u(lambda r), by linear
/// interpolation onto the same grid.  Samples needed beyond r_max are
/// treated as zero; if the truncated part carries more than 1e-8 of the
/// peak amplitude the support does not fit and std::invalid_argument is
/// thrown.  Below the first node the first sample is used.
RadialField rescale(const RadialField& u, double lambda);

/// Gaussian bump exp(-(r-center)^2 / (2 width^2)) as a real field.
RadialField gaussian_field(const RadialGrid& g, double amplitude, double width,
                           double center = 0.0);

} // namespace nlslab
