#include "nlslab/kernels.hpp"

#include <atomic>
#include <cmath>

#ifdef NLSLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace nlslab::kernels {

namespace {
std::atomic<Exec> g_exec{
#ifdef NLSLAB_HAVE_OPENMP
    Exec::openmp
#else
    Exec::serial
#endif
};

// Below this size the parallel-for overhead dominates on any machine.
constexpr std::size_t kParThreshold = 4096;

inline bool go_parallel(Exec e, std::size_t n) {
#ifdef NLSLAB_HAVE_OPENMP
  return e == Exec::openmp && n >= kParThreshold;
#else
  (void)e;
  (void)n;
  return false;
#endif
}
} // namespace

Exec default_exec() {
#ifdef NLSLAB_HAVE_OPENMP
  return Exec::openmp;
#else
  return Exec::serial;
#endif
}

void set_default_exec(Exec e) { g_exec.store(e); }
Exec current_exec() { return g_exec.load(); }

double sum(std::span<const double> x, Exec e) {
  const std::size_t n = x.size();
  double s = 0.0;
  if (go_parallel(e, n)) {
#pragma omp parallel for reduction(+ : s)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) s += x[j];
  } else {
    for (std::size_t j = 0; j < n; ++j) s += x[j];
  }
  return s;
}

double dot(std::span<const double> x, std::span<const double> y, Exec e) {
  const std::size_t n = x.size();
  double s = 0.0;
  if (go_parallel(e, n)) {
#pragma omp parallel for reduction(+ : s)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) s += x[j] * y[j];
  } else {
    for (std::size_t j = 0; j < n; ++j) s += x[j] * y[j];
  }
  return s;
}

double weighted_norm2(std::span<const double> w, std::span<const cplx> v, Exec e) {
  const std::size_t n = v.size();
  double s = 0.0;
  if (go_parallel(e, n)) {
#pragma omp parallel for reduction(+ : s)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
      s += w[j] * std::norm(v[j]);
  } else {
    for (std::size_t j = 0; j < n; ++j) s += w[j] * std::norm(v[j]);
  }
  return s;
}

cplx weighted_dot(std::span<const double> w, std::span<const cplx> a,
                  std::span<const cplx> b, Exec e) {
  const std::size_t n = a.size();
  double re = 0.0, im = 0.0;
  if (go_parallel(e, n)) {
#pragma omp parallel for reduction(+ : re, im)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) {
      const cplx t = w[j] * std::conj(a[j]) * b[j];
      re += t.real();
      im += t.imag();
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx t = w[j] * std::conj(a[j]) * b[j];
      re += t.real();
      im += t.imag();
    }
  }
  return {re, im};
}

double weighted_l4(std::span<const double> w, std::span<const cplx> v, Exec e) {
  const std::size_t n = v.size();
  double s = 0.0;
  if (go_parallel(e, n)) {
#pragma omp parallel for reduction(+ : s)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) {
      const double m2 = std::norm(v[j]);
      s += w[j] * m2 * m2;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double m2 = std::norm(v[j]);
      s += w[j] * m2 * m2;
    }
  }
  return s;
}

void phase_rotate(std::span<cplx> v, std::span<const double> angle, Exec e) {
  const std::size_t n = v.size();
  if (go_parallel(e, n)) {
#pragma omp parallel for
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
      v[j] *= cplx{std::cos(angle[j]), std::sin(angle[j])};
  } else {
    for (std::size_t j = 0; j < n; ++j)
      v[j] *= cplx{std::cos(angle[j]), std::sin(angle[j])};
  }
}

void matvec(std::span<const double> M, std::size_t n, std::span<const cplx> x,
            std::span<cplx> y, Exec e) {
  if (go_parallel(e, n * n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      const double* row = M.data() + static_cast<std::size_t>(i) * n;
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        re += row[j] * x[j].real();
        im += row[j] * x[j].imag();
      }
      y[i] = {re, im};
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = M.data() + i * n;
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        re += row[j] * x[j].real();
        im += row[j] * x[j].imag();
      }
      y[i] = {re, im};
    }
  }
}

void matvec_real(std::span<const double> M, std::size_t n, std::span<const double> x,
                 std::span<double> y, Exec e) {
  if (go_parallel(e, n * n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      const double* row = M.data() + static_cast<std::size_t>(i) * n;
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
      y[i] = s;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = M.data() + i * n;
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
      y[i] = s;
    }
  }
}

} // namespace nlslab::kernels
