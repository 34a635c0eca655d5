// Times the serial reference kernels against the OpenMP variants on the
// sizes the laboratory actually uses (n = 6000 grids, n^2 spectral applies)
// and prints a small table.  With one thread the two columns should match.

#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "nlslab/kernels.hpp"

using namespace nlslab;
using kernels::cplx;
using kernels::Exec;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn(); // warm up
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

} // namespace

int main() {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  const std::size_t n = 6000;
  std::vector<double> w(n), x(n), y(n);
  std::vector<cplx> v(n), z(n);
  std::vector<double> angle(n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = std::abs(dist(rng));
    x[j] = dist(rng);
    y[j] = dist(rng);
    v[j] = {dist(rng), dist(rng)};
    angle[j] = dist(rng);
  }

  const std::size_t m = 2048;
  std::vector<double> M(m * m);
  std::vector<cplx> mx(m), my(m);
  for (auto& e : M) e = dist(rng);
  for (auto& e : mx) e = {dist(rng), dist(rng)};

  struct Row {
    const char* name;
    std::function<void(Exec)> run;
    int reps;
  };
  volatile double sink = 0.0;
  std::vector<Row> rows = {
      {"weighted_norm2 (n=6000, x200)",
       [&](Exec e) {
         double s = 0.0;
         for (int k = 0; k < 200; ++k) s += kernels::weighted_norm2(w, v, e);
         sink = s;
       },
       5},
      {"weighted_l4 (n=6000, x200)",
       [&](Exec e) {
         double s = 0.0;
         for (int k = 0; k < 200; ++k) s += kernels::weighted_l4(w, v, e);
         sink = s;
       },
       5},
      {"phase_rotate (n=6000, x200)",
       [&](Exec e) {
         for (int k = 0; k < 200; ++k) kernels::phase_rotate(v, angle, e);
       },
       5},
      {"dense matvec (n=2048, x10)",
       [&](Exec e) {
         for (int k = 0; k < 10; ++k) kernels::matvec(M, m, mx, my, e);
         sink = my[0].real();
       },
       5},
  };

  std::printf("%-34s %12s %12s %8s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");
  for (auto& row : rows) {
    const double ts = time_ms([&] { row.run(Exec::serial); }, row.reps);
    const double tp = time_ms([&] { row.run(Exec::openmp); }, row.reps);
    std::printf("%-34s %12.3f %12.3f %8.2f\n", row.name, ts, tp, ts / tp);
  }
  (void)sink;
  return 0;
}
