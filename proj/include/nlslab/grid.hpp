#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlslab {

/// Uniform radial mesh r_j = j*h, j = 1..n, with trapezoidal quadrature
/// weights for integrals of the form  int_0^{r_max} f(r) 4 pi r^2 dr.
/// The r = 0 endpoint carries zero weight (the 4 pi r^2 factor vanishes);
/// the r_max endpoint carries the usual half weight.
class RadialGrid {
public:
  RadialGrid(double r_max, std::size_t n);

  std::size_t n() const { return n_; }
  double h() const { return h_; }
  double r_max() const { return r_max_; }
  double r(std::size_t j) const { return r_[j]; }

  std::span<const double> nodes() const { return r_; }
  std::span<const double> weights() const { return w_; }

  /// Integral of sampled values f_j against the 4 pi r^2 weights.
  double integrate(std::span<const double> f) const;

  /// Same integral, but the first cell [0, h] is integrated assuming f(r)
  /// behaves like a power law fitted through the first two samples; this
  /// removes the leading quadrature error for integrands with fractional
  /// power behaviour at the origin (fields u ~ r^{-sigma} with a < 0).
  /// Falls back to the plain trapezoidal rule when the fit is impossible.
  double integrate_power_aware(std::span<const double> f) const;

private:
  std::size_t n_;
  double h_;
  double r_max_;
  std::vector<double> r_;
  std::vector<double> w_;
};

} // namespace nlslab
