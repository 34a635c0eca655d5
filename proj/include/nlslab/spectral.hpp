#pragma once

#include <memory>
#include <span>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/tridiag.hpp"

namespace nlslab {

/// Full symmetric-tridiagonal eigendecomposition of the assembled operator,
/// the functional-calculus backend: any multiplier m(L_a) becomes
/// u -> V m(lambda) V^T (r u) / r on the reduced field.  Eigenvectors are
/// orthonormal in the unweighted l2 inner product of w; all eigenvalues are
/// nonnegative up to roundoff (discrete Hardy), checked at construction.
class EigenBasis {
public:
  EigenBasis(const PotentialParam& p, const RadialGrid& g);

  std::size_t n() const { return lambda_.size(); }
  std::span<const double> eigenvalues() const { return lambda_; }
  /// k-th eigenvector (w-space samples), row k of the stored basis.
  std::span<const double> eigenvector(std::size_t k) const;

  /// coeffs = V^T w
  void analyze(std::span<const cplx> w, std::span<cplx> coeffs) const;
  /// w = V coeffs
  void synthesize(std::span<const cplx> coeffs, std::span<cplx> w) const;

  /// u -> multiplier(lambda) applied spectrally; returns a new field.
  RadialField apply_multiplier(const RadialField& u, std::span<const double> m) const;

  const PotentialParam& param() const { return p_; }
  const RadialGrid& grid() const { return *g_; }

private:
  PotentialParam p_;
  const RadialGrid* g_;
  std::vector<double> lambda_;
  std::vector<double> vecs_; // n x n, row k = eigenvector k
};

/// Shared, mutex-guarded cache keyed by (a, n, h): construction is exclusive,
/// readers share the result afterwards.
std::shared_ptr<const EigenBasis> eigendecompose(const PotentialParam& p,
                                                 const RadialGrid& g);

/// e^{-t L_a} u by spectral synthesis; t >= 0.
RadialField heat_apply(const RadialField& u, const EigenBasis& basis, double t);

/// Heat-kernel Littlewood-Paley piece P_N = e^{-L/N^2} - e^{-4L/N^2}.
RadialField lp_project(const RadialField& u, const EigenBasis& basis, double N);

/// Ratio of || (sum_N N^{2s} |P_N u|^2)^{1/2} ||_L2 over || L^{s/2} u ||_L2
/// for s in {0, 1}, with N dyadic in [2^-10, 2^10].
double square_function_check(const RadialField& u, const EigenBasis& basis, int s);

/// Column of the heat kernel: heat evolution of a discrete delta placed at
/// node j_source (u-space), after time t > 0.
RadialField heat_kernel_probe(const EigenBasis& basis, double t, std::size_t j_source);

/// ||L^{1/2} u||^2 computed spectrally (equals the discrete form on w).
double spectral_h1_norm2(const RadialField& u, const EigenBasis& basis);

} // namespace nlslab
