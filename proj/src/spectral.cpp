#include "nlslab/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "nlslab/kernels.hpp"

// LAPACK symmetric tridiagonal divide-and-conquer eigensolver.
extern "C" void dstedc_(const char* compz, const int* n, double* d, double* e, double* z,
                        const int* ldz, double* work, const int* lwork, int* iwork,
                        const int* liwork, int* info);

namespace nlslab {

EigenBasis::EigenBasis(const PotentialParam& p, const RadialGrid& g) : p_(p), g_(&g) {
  const SymTridiag A = assemble_operator(p, g);
  const int n = static_cast<int>(g.n());
  lambda_ = A.diag;
  std::vector<double> off = A.off;
  // dstedc returns eigenvectors as columns of a column-major matrix, which
  // reads as rows of a row-major one: row k of vecs_ is eigenvector k.
  vecs_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) vecs_[static_cast<std::size_t>(i) * n + i] = 1.0;

  int lwork = -1, liwork = -1, info = 0;
  double wq = 0.0;
  int iwq = 0;
  const char compz = 'I';
  dstedc_(&compz, &n, lambda_.data(), off.data(), vecs_.data(), &n, &wq, &lwork, &iwq,
          &liwork, &info);
  if (info != 0) throw std::runtime_error("dstedc workspace query failed");
  lwork = static_cast<int>(wq);
  liwork = iwq;
  std::vector<double> work(static_cast<std::size_t>(lwork));
  std::vector<int> iwork(static_cast<std::size_t>(liwork));
  dstedc_(&compz, &n, lambda_.data(), off.data(), vecs_.data(), &n, work.data(), &lwork,
          iwork.data(), &liwork, &info);
  if (info != 0) throw std::runtime_error("symmetric tridiagonal eigensolve failed");

  const double scale = std::abs(lambda_.back());
  if (lambda_.front() < -1e-8 * std::max(scale, 1.0))
    throw std::runtime_error(
        "negative eigenvalue: discretization violates Hardy positivity; shrink h");
}

std::span<const double> EigenBasis::eigenvector(std::size_t k) const {
  return {vecs_.data() + k * n(), n()};
}

void EigenBasis::analyze(std::span<const cplx> w, std::span<cplx> coeffs) const {
  kernels::matvec(vecs_, n(), w, coeffs);
}

void EigenBasis::synthesize(std::span<const cplx> coeffs, std::span<cplx> w) const {
  // V is orthogonal with rows = eigenvectors, so V^T c = sum_k c_k v_k.
  const std::size_t m = n();
  for (std::size_t j = 0; j < m; ++j) w[j] = cplx{0.0, 0.0};
#ifdef NLSLAB_HAVE_OPENMP
  if (kernels::current_exec() == kernels::Exec::openmp && m >= 512) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(m); ++j) {
      double re = 0.0, im = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double v = vecs_[k * m + static_cast<std::size_t>(j)];
        re += v * coeffs[k].real();
        im += v * coeffs[k].imag();
      }
      w[j] = {re, im};
    }
    return;
  }
#endif
  for (std::size_t j = 0; j < m; ++j) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double v = vecs_[k * m + j];
      re += v * coeffs[k].real();
      im += v * coeffs[k].imag();
    }
    w[j] = {re, im};
  }
}

RadialField EigenBasis::apply_multiplier(const RadialField& u,
                                         std::span<const double> m) const {
  const std::size_t nn = n();
  std::vector<cplx> w(nn), c(nn);
  for (std::size_t j = 0; j < nn; ++j) w[j] = g_->r(j) * u[j];
  analyze(w, c);
  for (std::size_t k = 0; k < nn; ++k) c[k] *= m[k];
  synthesize(c, w);
  RadialField out(*g_);
  for (std::size_t j = 0; j < nn; ++j) out[j] = w[j] / g_->r(j);
  return out;
}

namespace {
std::mutex g_cache_mutex;
std::map<std::tuple<double, std::size_t, double>, std::shared_ptr<const EigenBasis>>
    g_cache;
} // namespace

std::shared_ptr<const EigenBasis> eigendecompose(const PotentialParam& p,
                                                 const RadialGrid& g) {
  const auto key = std::make_tuple(p.a, g.n(), g.h());
  {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  auto basis = std::make_shared<const EigenBasis>(p, g);
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  auto [it, inserted] = g_cache.emplace(key, std::move(basis));
  return it->second;
}

RadialField heat_apply(const RadialField& u, const EigenBasis& basis, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat time must be nonnegative");
  std::vector<double> m(basis.n());
  for (std::size_t k = 0; k < basis.n(); ++k)
    m[k] = std::exp(-t * basis.eigenvalues()[k]);
  return basis.apply_multiplier(u, m);
}

RadialField lp_project(const RadialField& u, const EigenBasis& basis, double N) {
  if (!(N > 0.0)) throw std::invalid_argument("projection frequency must be positive");
  std::vector<double> m(basis.n());
  const double invN2 = 1.0 / (N * N);
  for (std::size_t k = 0; k < basis.n(); ++k) {
    const double l = basis.eigenvalues()[k];
    m[k] = std::exp(-l * invN2) - std::exp(-4.0 * l * invN2);
  }
  return basis.apply_multiplier(u, m);
}

double square_function_check(const RadialField& u, const EigenBasis& basis, int s) {
  if (s != 0 && s != 1) throw std::invalid_argument("s must be 0 or 1");
  const RadialGrid& g = basis.grid();
  const std::size_t n = basis.n();

  // sum over dyadic N in [2^-10, 2^10] of N^{2s} |P_N u|^2, pointwise
  std::vector<double> sq(n, 0.0);
  for (int e = -10; e <= 10; ++e) {
    const double N = std::ldexp(1.0, e);
    RadialField piece = lp_project(u, basis, N);
    const double ns = s == 0 ? 1.0 : N * N;
    for (std::size_t j = 0; j < n; ++j) sq[j] += ns * std::norm(piece[j]);
  }
  double lhs = 0.0;
  for (std::size_t j = 0; j < n; ++j) lhs += g.weights()[j] * sq[j];
  lhs = std::sqrt(lhs);

  // || L^{s/2} u ||_L2 spectrally
  std::vector<cplx> w(n), c(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = g.r(j) * u[j];
  basis.analyze(w, c);
  double rhs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double weight = s == 0 ? 1.0 : basis.eigenvalues()[k];
    rhs += weight * std::norm(c[k]);
  }
  rhs = std::sqrt(4.0 * std::numbers::pi * g.h() * rhs);
  return lhs / rhs;
}

RadialField heat_kernel_probe(const EigenBasis& basis, double t, std::size_t j_source) {
  if (!(t > 0.0)) throw std::invalid_argument("probe time must be positive");
  if (j_source + 1 >= basis.n())
    throw std::invalid_argument("source node must be interior");
  RadialField delta(basis.grid());
  delta[j_source] = cplx{1.0, 0.0};
  return heat_apply(delta, basis, t);
}

double spectral_h1_norm2(const RadialField& u, const EigenBasis& basis) {
  const RadialGrid& g = basis.grid();
  const std::size_t n = basis.n();
  std::vector<cplx> w(n), c(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = g.r(j) * u[j];
  basis.analyze(w, c);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += basis.eigenvalues()[k] * std::norm(c[k]);
  return 4.0 * std::numbers::pi * g.h() * s;
}

} // namespace nlslab
