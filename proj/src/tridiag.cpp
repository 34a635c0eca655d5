#include "nlslab/tridiag.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace nlslab {

void SymTridiag::apply(std::span<const double> w, std::span<double> out) const {
  const std::size_t m = n();
  for (std::size_t j = 0; j < m; ++j) {
    double s = diag[j] * w[j];
    if (j > 0) s += off[j - 1] * w[j - 1];
    if (j + 1 < m) s += off[j] * w[j + 1];
    out[j] = s;
  }
}

void SymTridiag::apply(std::span<const cplx> w, std::span<cplx> out) const {
  const std::size_t m = n();
  for (std::size_t j = 0; j < m; ++j) {
    cplx s = diag[j] * w[j];
    if (j > 0) s += off[j - 1] * w[j - 1];
    if (j + 1 < m) s += off[j] * w[j + 1];
    out[j] = s;
  }
}

double SymTridiag::form(std::span<const double> w) const {
  const std::size_t m = n();
  double s = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    s += diag[j] * w[j] * w[j];
    if (j + 1 < m) s += 2.0 * off[j] * w[j] * w[j + 1];
  }
  return s;
}

SymTridiag assemble_operator(const PotentialParam& p, const RadialGrid& g) {
  SymTridiag A;
  const std::size_t n = g.n();
  const double h = g.h();
  A.h = h;
  A.diag.resize(n);
  A.off.assign(n - 1, -1.0 / (h * h));
  for (std::size_t j = 0; j < n; ++j) {
    const double r = g.r(j);
    A.diag[j] = 2.0 / (h * h) + p.a / (r * r);
  }
  return A;
}

void solve_shifted(const SymTridiag& A, cplx z, std::span<cplx> b) {
  const std::size_t n = A.n();
  // Thomas elimination on (I + z A); scratch for the modified upper band.
  static thread_local std::vector<cplx> cp;
  cp.resize(n);
  cplx d = 1.0 + z * A.diag[0];
  if (std::abs(d) == 0.0) throw std::runtime_error("singular tridiagonal solve");
  cp[0] = z * A.off[0] / d;
  b[0] /= d;
  for (std::size_t j = 1; j < n; ++j) {
    const cplx lower = z * A.off[j - 1];
    d = (1.0 + z * A.diag[j]) - lower * cp[j - 1];
    if (std::abs(d) == 0.0) throw std::runtime_error("singular tridiagonal solve");
    if (j + 1 < n) cp[j] = z * A.off[j] / d;
    b[j] = (b[j] - lower * b[j - 1]) / d;
  }
  for (std::size_t j = n - 1; j-- > 0;) b[j] -= cp[j] * b[j + 1];
}

void solve_shifted_real(const SymTridiag& A, double s, std::span<double> b) {
  const std::size_t n = A.n();
  static thread_local std::vector<double> cp;
  cp.resize(n);
  double d = s + A.diag[0];
  cp[0] = A.off[0] / d;
  b[0] /= d;
  for (std::size_t j = 1; j < n; ++j) {
    const double lower = A.off[j - 1];
    d = (s + A.diag[j]) - lower * cp[j - 1];
    if (j + 1 < n) cp[j] = A.off[j] / d;
    b[j] = (b[j] - lower * b[j - 1]) / d;
  }
  for (std::size_t j = n - 1; j-- > 0;) b[j] -= cp[j] * b[j + 1];
}

} // namespace nlslab
