#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/potential.hpp"

namespace nlslab {

/// Symmetric tridiagonal matrix acting on the reduced field w = r u:
///   (A w)_j = [-w_{j-1} + 2 w_j - w_{j+1}] / h^2 + (a / r_j^2) w_j
/// with implicit zero neighbours at both ends (Dirichlet rows).  This
/// realizes the radial operator through  L_a u = (1/r)(-w'' + (a/r^2) w).
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off; // size n-1
  double h = 0.0;

  std::size_t n() const { return diag.size(); }

  void apply(std::span<const double> w, std::span<double> out) const;
  void apply(std::span<const cplx> w, std::span<cplx> out) const;

  /// w^T A w for real w (the discrete quadratic form on the reduced field).
  double form(std::span<const double> w) const;
};

/// The discretized operator for (p, g); see SymTridiag.
SymTridiag assemble_operator(const PotentialParam& p, const RadialGrid& g);

/// Solves (I + z A) x = b in place by the Thomas algorithm, z complex.
/// b is overwritten with x.  Used by the Crank-Nicolson step and the
/// preconditioned gradient flow; the matrix is well conditioned there
/// (|1 + z lambda| >= 1 for purely imaginary z, A symmetric real).
void solve_shifted(const SymTridiag& A, cplx z, std::span<cplx> b);

/// Solves (s I + A) x = b for real s > 0, in place.
void solve_shifted_real(const SymTridiag& A, double s, std::span<double> b);

} // namespace nlslab
