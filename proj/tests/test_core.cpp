// Grids, the discretized operator, quadratic forms and static functionals.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlslab/functionals.hpp"
#include "nlslab/kernels.hpp"
#include "nlslab/potential.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/tridiag.hpp"

using namespace nlslab;
using std::numbers::pi;

TEST_CASE("sigma_of: closed-form values and domain") {
  CHECK(sigma_of(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sigma_of(0.75) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(sigma_of(-3.0 / 16.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(sigma_of(-0.25), std::invalid_argument);
  CHECK_THROWS_AS(sigma_of(-0.3), std::invalid_argument);
  CHECK(sigma_of(-0.1) < 0.5);
  CHECK(sigma_of(100.0) < 0.0);
}

TEST_CASE("build_grid: nodes, volume, Gaussian mass") {
  CHECK_THROWS_AS(RadialGrid(-1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(RadialGrid(1.0, 4), std::invalid_argument);

  RadialGrid g16(1.0, 16);
  CHECK(g16.r(0) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK(g16.r(15) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g16.r_max() == doctest::Approx(g16.n() * g16.h()).epsilon(1e-15));

  // volume of the unit ball to 1e-6 relative at n = 1e4
  RadialGrid g(1.0, 10000);
  std::vector<double> one(g.n(), 1.0);
  CHECK(g.integrate(one) == doctest::Approx(4.0 / 3.0 * pi).epsilon(1e-6));

  // mass of exp(-r^2/2) equals pi^{3/2} (analytic Gaussian integral)
  RadialGrid g12(12.0, 6000);
  std::vector<double> f(g12.n());
  for (std::size_t j = 0; j < g12.n(); ++j) f[j] = std::exp(-g12.r(j) * g12.r(j));
  CHECK(g12.integrate(f) == doctest::Approx(std::pow(pi, 1.5)).epsilon(1e-6));
}

TEST_CASE("assemble_operator: stencil, symmetry, eigenmode, positivity") {
  const RadialGrid g(10.0, 1000);
  const double h = g.h();

  SUBCASE("direct stencil values at r = 1") {
    PotentialParam p(2.0);
    SymTridiag A = assemble_operator(p, g);
    CHECK(g.r(99) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(A.diag[99] == doctest::Approx(2.0 / (h * h) + 2.0).epsilon(1e-14));
    CHECK(A.off[99] == doctest::Approx(-1.0 / (h * h)).epsilon(1e-14));
  }

  SUBCASE("application is symmetric") {
    PotentialParam p(-0.2);
    SymTridiag A = assemble_operator(p, g);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> w(g.n()), v(g.n()), Aw(g.n()), Av(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
      w[j] = d(rng);
      v[j] = d(rng);
    }
    A.apply(std::span<const double>(w), std::span<double>(Aw));
    A.apply(std::span<const double>(v), std::span<double>(Av));
    double wAv = 0.0, vAw = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
      wAv += w[j] * Av[j];
      vAw += v[j] * Aw[j];
      scale += std::abs(w[j] * Av[j]);
    }
    CHECK(std::abs(wAv - vAw) <= 1e-12 * scale);
  }

  SUBCASE("Dirichlet Laplacian eigenmode, interior rows") {
    PotentialParam p(0.0);
    SymTridiag A = assemble_operator(p, g);
    // sin(pi r / r_max) is the continuum mode; interior rows reproduce
    // (pi/r_max)^2 with O(h^2) relative error.  The last row sees the
    // implicit Dirichlet neighbour beyond r_max and is excluded.
    std::vector<double> w(g.n()), Aw(g.n());
    for (std::size_t j = 0; j < g.n(); ++j)
      w[j] = std::sin(pi * g.r(j) / g.r_max());
    A.apply(std::span<const double>(w), std::span<double>(Aw));
    const double lam = std::pow(pi / g.r_max(), 2);
    for (std::size_t j = 1; j + 1 < g.n(); ++j) {
      if (std::abs(w[j]) < 0.1) continue; // avoid relative error near zeros
      CHECK(Aw[j] / w[j] == doctest::Approx(lam).epsilon(5e-5));
    }
  }

  SUBCASE("lowest eigenvalue nonnegative for a > -1/4 (sharp Hardy)") {
    const RadialGrid gs(10.0, 400);
    for (double a : {-0.24, -0.2, -0.1, 0.0, 0.5, 3.0}) {
      auto basis = eigendecompose(PotentialParam(a), gs);
      const double scale = std::max(1.0, std::abs(basis->eigenvalues().back()));
      CHECK(basis->eigenvalues().front() >= -1e-8 * scale);
    }
  }
}

TEST_CASE("quadratic_form: modes, zero field, tail warning") {
  const RadialGrid g(30.0, 6000);
  PotentialParam p(-0.2);

  SUBCASE("zero field gives zero in both modes") {
    RadialField z(g);
    CHECK(quadratic_form(z, p, QuadFormMode::direct) == 0.0);
    CHECK(quadratic_form(z, p, QuadFormMode::shifted) == 0.0);
  }

  SUBCASE("a = 0: the two modes coincide") {
    PotentialParam p0(0.0);
    RadialField u = gaussian_field(g, 1.0, 2.0, 8.0);
    const double d = quadratic_form(u, p0, QuadFormMode::direct);
    const double s = quadratic_form(u, p0, QuadFormMode::shifted);
    CHECK(d == doctest::Approx(s).epsilon(1e-13));
  }

  SUBCASE("smooth field away from 0 and r_max: equivalence to 1e-4") {
    RadialField u = gaussian_field(g, 1.0, 2.0, 10.0);
    const double d = quadratic_form(u, p, QuadFormMode::direct);
    const double s = quadratic_form(u, p, QuadFormMode::shifted);
    CHECK(std::abs(d - s) / std::abs(d) < 1e-4);
  }

  SUBCASE("tail flag trips on non-decaying data") {
    RadialField u(g);
    for (std::size_t j = 0; j < g.n(); ++j) u[j] = cplx{1.0, 0.0};
    QuadFormInfo info;
    (void)quadratic_form(u, p, QuadFormMode::direct, &info);
    CHECK_FALSE(info.tail_ok);
    RadialField good = gaussian_field(g, 1.0, 2.0, 8.0);
    (void)quadratic_form(good, p, QuadFormMode::direct, &info);
    CHECK(info.tail_ok);
  }

  SUBCASE("positivity on random smooth fields for every a > -1/4") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> ctr(2.0, 20.0);
    std::uniform_real_distribution<double> wid(0.5, 4.0);
    const RadialGrid gq(30.0, 3000);
    for (double a : {-0.24, -0.15, 0.0, 1.0, 4.0}) {
      PotentialParam pq(a);
      for (int trial = 0; trial < 8; ++trial) {
        RadialField u(gq);
        for (int b = 0; b < 3; ++b) {
          RadialField bump = gaussian_field(gq, amp(rng), wid(rng), ctr(rng));
          for (std::size_t j = 0; j < gq.n(); ++j) u[j] += bump[j];
        }
        const double q = quadratic_form(u, pq, QuadFormMode::direct);
        const double m = kernels::weighted_norm2(gq.weights(), u.values());
        CHECK(q >= -1e-8 * m);
      }
    }
  }

  SUBCASE("operator form and quadrature form are compatible discretizations") {
    RadialField u = gaussian_field(g, 1.0, 2.0, 10.0);
    SymTridiag A = assemble_operator(p, g);
    std::vector<double> w(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) w[j] = g.r(j) * u[j].real();
    const double opform = 4.0 * pi * g.h() * A.form(w);
    const double qform = quadratic_form(u, p, QuadFormMode::direct);
    CHECK(opform == doctest::Approx(qform).epsilon(5e-5)); // O(h^2)
  }
}

TEST_CASE("functionals_of and gn_quotient") {
  const RadialGrid g(30.0, 3000);
  PotentialParam p0(0.0);

  SUBCASE("zero field maps to zero functionals") {
    Functionals f = functionals_of(RadialField(g), p0);
    CHECK(f.mass == 0.0);
    CHECK(f.kinetic_a == 0.0);
    CHECK(f.l4 == 0.0);
    CHECK(f.energy_a == 0.0);
  }

  SUBCASE("energy identity") {
    RadialField u = gaussian_field(g, 1.3, 2.0, 6.0);
    Functionals f = functionals_of(u, p0);
    CHECK(f.energy_a == doctest::Approx(0.5 * f.kinetic_a - 0.25 * f.l4).epsilon(1e-15));
  }

  SUBCASE("scaling laws of the invariance rescaling at a = 0, lambda = 2") {
    // analytic rescale of a Gaussian: lambda u(lambda r).  The quadrature is
    // spectrally accurate on these integrands; the centered-difference
    // kinetic carries the O(h^2) error, so the J check runs on a fine grid.
    const double lam = 2.0;
    const RadialGrid gf(40.0, 16000);
    RadialField u = gaussian_field(gf, 1.0, 4.0, 0.0);
    RadialField ul = gaussian_field(gf, lam, 4.0 / lam, 0.0);
    Functionals f = functionals_of(u, p0);
    Functionals fl = functionals_of(ul, p0);
    CHECK(fl.mass == doctest::Approx(f.mass / lam).epsilon(1e-9));
    CHECK(fl.kinetic_a == doctest::Approx(f.kinetic_a * lam).epsilon(1e-5));
    CHECK(gn_quotient(fl) == doctest::Approx(gn_quotient(f)).epsilon(1e-6));
  }

  SUBCASE("J is homogeneous of degree zero") {
    RadialField u = gaussian_field(g, 1.0, 1.5, 4.0);
    RadialField v = u;
    v *= 3.0;
    CHECK(gn_quotient(v, p0) == doctest::Approx(gn_quotient(u, p0)).epsilon(1e-13));
  }

  SUBCASE("zero field rejected") {
    CHECK_THROWS_AS(gn_quotient(RadialField(g), p0), std::invalid_argument);
  }
}

TEST_CASE("rescale: identity, scaling laws, overflow") {
  const RadialGrid g(30.0, 3000);
  PotentialParam p0(0.0);
  RadialField u = gaussian_field(g, 1.0, 2.0, 0.0);

  SUBCASE("lambda = 1 is the identity") {
    RadialField v = rescale(u, 1.0);
    for (std::size_t j = 0; j < g.n(); j += 97) CHECK(v[j] == u[j]);
  }

  SUBCASE("mass and kinetic scaling within interpolation error") {
    const double lam = 2.0;
    RadialField v = rescale(u, lam);
    Functionals f = functionals_of(u, p0);
    Functionals fv = functionals_of(v, p0);
    CHECK(fv.mass == doctest::Approx(f.mass / lam).epsilon(1e-4));
    CHECK(fv.kinetic_a == doctest::Approx(f.kinetic_a * lam).epsilon(1e-4));
  }

  SUBCASE("support overflow is an error") {
    RadialField wide = gaussian_field(g, 1.0, 12.0, 20.0);
    CHECK_THROWS_AS(rescale(wide, 3.0), std::invalid_argument);
  }
}
