#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Data-parallel primitives behind the field and spectral operations.
// Every kernel exists in a serial reference version and an OpenMP version;
// the serial one is the correctness baseline the tests compare against and
// tools/bench_kernels.cpp times the two against each other.

namespace nlslab::kernels {

using cplx = std::complex<double>;

enum class Exec { serial, openmp };

/// openmp when compiled with it, serial otherwise.
Exec default_exec();
void set_default_exec(Exec e);
Exec current_exec();

double sum(std::span<const double> x, Exec e);
double dot(std::span<const double> x, std::span<const double> y, Exec e);

/// sum_j w_j |v_j|^2
double weighted_norm2(std::span<const double> w, std::span<const cplx> v, Exec e);
/// sum_j w_j conj(a_j) b_j
cplx weighted_dot(std::span<const double> w, std::span<const cplx> a,
                  std::span<const cplx> b, Exec e);
/// sum_j w_j |v_j|^4
double weighted_l4(std::span<const double> w, std::span<const cplx> v, Exec e);

/// v_j *= exp(i * angle_j)
void phase_rotate(std::span<cplx> v, std::span<const double> angle, Exec e);

/// y = M x with M real n x n row-major, x and y complex.
void matvec(std::span<const double> M, std::size_t n, std::span<const cplx> x,
            std::span<cplx> y, Exec e);
/// y = M x, all real.
void matvec_real(std::span<const double> M, std::size_t n, std::span<const double> x,
                 std::span<double> y, Exec e);

// Convenience overloads on the ambient default policy.
inline double sum(std::span<const double> x) { return sum(x, current_exec()); }
inline double dot(std::span<const double> x, std::span<const double> y) {
  return dot(x, y, current_exec());
}
inline double weighted_norm2(std::span<const double> w, std::span<const cplx> v) {
  return weighted_norm2(w, v, current_exec());
}
inline cplx weighted_dot(std::span<const double> w, std::span<const cplx> a,
                         std::span<const cplx> b) {
  return weighted_dot(w, a, b, current_exec());
}
inline double weighted_l4(std::span<const double> w, std::span<const cplx> v) {
  return weighted_l4(w, v, current_exec());
}
inline void phase_rotate(std::span<cplx> v, std::span<const double> angle) {
  phase_rotate(v, angle, current_exec());
}
inline void matvec(std::span<const double> M, std::size_t n, std::span<const cplx> x,
                   std::span<cplx> y) {
  matvec(M, n, x, y, current_exec());
}
inline void matvec_real(std::span<const double> M, std::size_t n,
                        std::span<const double> x, std::span<double> y) {
  matvec_real(M, n, x, y, current_exec());
}

} // namespace nlslab::kernels
