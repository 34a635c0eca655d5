#include "nlslab/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlslab/kernels.hpp"
#include "nlslab/tridiag.hpp"

namespace nlslab {

namespace {

constexpr double kDecayFloor = 1e-8;  // "decayed" verdict at r_max
constexpr double kTurnFloor = 1e-7;   // upward turn above this is divergence
constexpr double kPatchLevel = 1e-6;  // tail patch below this fraction of peak

struct OdeState {
  double q;
  double p;
};

// Q'' = Q - Q^3 + (a/r^2) Q - (2/r) Q'
inline OdeState rhs(double r, const OdeState& y, double a) {
  return {y.p, y.q - y.q * y.q * y.q + (a / (r * r)) * y.q - (2.0 / r) * y.p};
}

inline OdeState rk4(double r, const OdeState& y, double hh, double a) {
  const OdeState k1 = rhs(r, y, a);
  const OdeState k2 = rhs(r + 0.5 * hh, {y.q + 0.5 * hh * k1.q, y.p + 0.5 * hh * k1.p}, a);
  const OdeState k3 = rhs(r + 0.5 * hh, {y.q + 0.5 * hh * k2.q, y.p + 0.5 * hh * k2.p}, a);
  const OdeState k4 = rhs(r + hh, {y.q + hh * k3.q, y.p + hh * k3.p}, a);
  return {y.q + hh / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q),
          y.p + hh / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

// Three-term Frobenius start of the decaying branch at radius r.
OdeState series_start(double c, double sigma, double r) {
  const double B = c / (2.0 * (3.0 - 2.0 * sigma));
  const double A = -c * c * c / (2.0 * (3.0 - 4.0 * sigma) * (1.0 - sigma));
  OdeState y;
  y.q = c * std::pow(r, -sigma) + B * std::pow(r, 2.0 - sigma) +
        A * std::pow(r, 2.0 - 3.0 * sigma);
  y.p = -sigma * c * std::pow(r, -sigma - 1.0) +
        (2.0 - sigma) * B * std::pow(r, 1.0 - sigma) +
        (2.0 - 3.0 * sigma) * A * std::pow(r, 1.0 - 3.0 * sigma);
  return y;
}

} // namespace

ShootResult shoot(const PotentialParam& p, double c, const RadialGrid& g) {
  if (!(c > 0.0)) throw std::invalid_argument("shooting amplitude must be positive");
  const std::size_t n = g.n();
  const double h = g.h();

  ShootResult res;
  res.q.assign(n, 0.0);
  res.dq.assign(n, 0.0);

  double r = g.r(0);
  OdeState y = series_start(c, p.sigma, r);
  res.q[0] = y.q;
  res.dq[0] = y.p;
  const double cap = 10.0 * c * std::max(1.0, std::pow(h, -p.sigma));
  bool peaked = y.p < 0.0;

  for (std::size_t j = 1; j < n; ++j) {
    // extra substeps while the potential scale a/r^2 is steep
    const auto m = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(8.0 * h / r)), 1, 64);
    const double hh = h / static_cast<double>(m);
    for (std::size_t s = 0; s < m; ++s) {
      y = rk4(r, y, hh, p.a);
      r += hh;
    }
    res.q[j] = y.q;
    res.dq[j] = y.p;
    res.last_node = j;

    if (!std::isfinite(y.q) || !std::isfinite(y.p) || y.q > cap) {
      res.verdict = ShootVerdict::diverged;
      return res;
    }
    if (y.q < 0.0) {
      res.verdict = ShootVerdict::crossed_zero;
      return res;
    }
    if (y.p < 0.0) peaked = true;
    if (peaked && y.p > 0.0 && y.q > kTurnFloor) {
      // Turned upward at positive amplitude: the trajectory has left the
      // decaying branch (it heads for the Q = 1 equilibrium, never the cap).
      res.verdict = ShootVerdict::diverged;
      return res;
    }
  }
  res.last_node = n - 1;
  res.verdict = std::abs(y.q) < kDecayFloor ? ShootVerdict::decayed : ShootVerdict::diverged;
  return res;
}

namespace {

// Tail-patched profile plus refined functionals shared by both solvers.
GroundStateResult finalize_profile(const PotentialParam& p, const RadialGrid& g,
                                   std::vector<double> q, std::vector<double> dq,
                                   std::size_t last_node, double shoot_c, double tol,
                                   Flavor flavor) {
  const std::size_t n = g.n();
  double peak = 0.0;
  for (std::size_t j = 0; j <= last_node; ++j) peak = std::max(peak, q[j]);

  std::size_t jp = 0;
  for (std::size_t j = 0; j <= last_node; ++j)
    if (q[j] > kPatchLevel * peak) jp = j;

  // beta e^{-r} / r matched by continuity at the patch node
  const double rp = g.r(jp);
  const double beta = q[jp] * rp * std::exp(rp);
  for (std::size_t j = jp + 1; j < n; ++j) {
    const double r = g.r(j);
    q[j] = beta * std::exp(-r) / r;
    dq[j] = -beta * std::exp(-r) * (r + 1.0) / (r * r);
  }
  for (auto& v : q) v = std::max(v, 0.0);

  std::vector<double> f2(n), f4(n), fk(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = g.r(j);
    f2[j] = q[j] * q[j];
    f4[j] = f2[j] * f2[j];
    const double shifted = dq[j] + (p.sigma / r) * q[j];
    fk[j] = shifted * shifted;
  }

  GroundStateResult gs{RadialField(g)};
  gs.profile = field_from_real(g, q);
  gs.shoot_c = shoot_c;
  gs.flavor = flavor;
  gs.f.mass = g.integrate_power_aware(f2);
  gs.f.l4 = g.integrate_power_aware(f4);
  gs.f.kinetic_a = g.integrate_power_aware(fk);
  gs.f.energy_a = 0.5 * gs.f.kinetic_a - 0.25 * gs.f.l4;
  gs.pohozaev_rho1 = std::abs(gs.f.mass - gs.f.kinetic_a / 3.0) / gs.f.mass;
  gs.pohozaev_rho2 = std::abs(gs.f.mass - gs.f.l4 / 4.0) / gs.f.mass;
  gs.c_constant = 4.0 * std::pow(3.0, -1.5) / gs.f.mass;
  const double flag_level = std::max(10.0 * tol, 1e-4);
  gs.converged = gs.pohozaev_rho1 <= flag_level && gs.pohozaev_rho2 <= flag_level;
  return gs;
}

} // namespace

GroundStateResult solve_ground_state(const PotentialParam& p, const RadialGrid& g,
                                     double tol, Flavor flavor) {
  if (!(tol > 0.0 && tol <= 1e-3))
    throw std::invalid_argument("tol must lie in (0, 1e-3]");
  if (flavor == Flavor::general && p.a > 0.0)
    throw std::invalid_argument(
        "general-flavor optimizer does not exist for a > 0; use radial");

  // Bracket scan: diverged (too small) below, crossed_zero (too large) above.
  double lo = 0.0, hi = 0.0;
  {
    double prev_c = 0.0;
    ShootVerdict prev_v = ShootVerdict::decayed;
    bool have_prev = false;
    const int m = 61;
    for (int i = 0; i < m; ++i) {
      const double c = 1e-3 * std::pow(1e6, static_cast<double>(i) / (m - 1));
      const ShootVerdict v = shoot(p, c, g).verdict;
      if (have_prev && prev_v == ShootVerdict::diverged && v == ShootVerdict::crossed_zero) {
        lo = prev_c;
        hi = c;
        break;
      }
      prev_c = c;
      prev_v = v;
      have_prev = true;
    }
    if (hi == 0.0)
      throw std::runtime_error(
          "no shooting bracket in c in [1e-3, 1e3]: bad grid or invalid coupling");
  }

  while ((hi - lo) > tol * 0.5 * (hi + lo)) {
    const double mid = 0.5 * (lo + hi);
    if (shoot(p, mid, g).verdict == ShootVerdict::crossed_zero)
      hi = mid;
    else
      lo = mid;
  }

  const double c = 0.5 * (lo + hi);
  ShootResult sr = shoot(p, c, g);
  return finalize_profile(p, g, std::move(sr.q), std::move(sr.dq), sr.last_node, c, tol,
                          flavor);
}

// ---------------------------------------------------------------------------
// Gradient flow
// ---------------------------------------------------------------------------

namespace {

// Discrete quadratic form calibrated to be exact on the Frobenius branch
// w ~ r^{1-sigma} over the near-origin cells: the slope terms
// (w_j - w_{j-1})^2 / h and the potential node terms a w_j^2 / r_j^2 h are
// rescaled by their exact-to-discrete ratios on the branch (the node-1
// potential cell extends down to r = 0).  Entries beyond r ~ 1 are the plain
// stencil.  With the plain form the discrete supremum of J sits several
// percent below C_a for a < 0, far outside the dual-oracle tolerance.
SymTridiag branch_exact_form(const PotentialParam& p, const RadialGrid& g) {
  const std::size_t n = g.n();
  const double h = g.h();
  const double e = 1.0 - p.sigma;
  SymTridiag A;
  A.h = h;
  A.diag.resize(n);
  A.off.assign(n - 1, -1.0 / (h * h));

  const auto ncorr =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(1.0 / h)));
  std::vector<double> slope(n + 1, 1.0); // interval i = [i h, (i+1) h]
  std::vector<double> pot(n, 1.0);
  if (std::abs(p.sigma) > 1e-14) {
    for (std::size_t i = 0; i < ncorr; ++i) {
      const double r0 = h * static_cast<double>(i);
      const double r1 = h * static_cast<double>(i + 1);
      const double truev =
          e * e / (2.0 * e - 1.0) * (std::pow(r1, 2.0 * e - 1.0) - std::pow(r0, 2.0 * e - 1.0));
      const double disc = std::pow(std::pow(r1, e) - std::pow(r0, e), 2.0) / h;
      slope[i] = truev / disc;
    }
    for (std::size_t j = 0; j < ncorr; ++j) {
      const double r = g.r(j);
      const double lo = j == 0 ? 0.0 : r - 0.5 * h;
      const double hi = r + 0.5 * h;
      const double truev =
          (std::pow(hi, 2.0 * e - 1.0) - std::pow(lo, 2.0 * e - 1.0)) / (2.0 * e - 1.0);
      const double disc = std::pow(r, 2.0 * e - 2.0) * h;
      pot[j] = truev / disc;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double r = g.r(j);
    A.diag[j] = (slope[j] + slope[j + 1]) / (h * h) + pot[j] * p.a / (r * r);
  }
  for (std::size_t j = 0; j + 1 < n; ++j) A.off[j] = -slope[j + 1] / (h * h);
  return A;
}

// u(lambda r) by linear interpolation, no amplitude factor.
void dilate_inplace(std::vector<double>& u, const RadialGrid& g, double lambda) {
  if (std::abs(lambda - 1.0) < 1e-15) return;
  const std::size_t n = g.n();
  const double h = g.h();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double rs = lambda * g.r(j);
    if (rs >= g.r_max()) {
      out[j] = 0.0;
    } else if (rs <= g.r(0)) {
      out[j] = u[0];
    } else {
      const double x = rs / h;
      const auto k = static_cast<std::size_t>(x) - 1;
      const double frac = x - static_cast<double>(k + 1);
      out[j] = (1.0 - frac) * u[k] + frac * u[k + 1];
    }
  }
  u = std::move(out);
}

} // namespace

GroundStateResult gradient_flow_optimizer(const PotentialParam& p, const RadialGrid& g,
                                          double tol, Flavor flavor) {
  if (!(tol > 0.0 && tol <= 1e-3))
    throw std::invalid_argument("tol must lie in (0, 1e-3]");
  if (flavor == Flavor::general && p.a > 0.0)
    throw std::invalid_argument(
        "general-flavor optimizer does not exist for a > 0; use radial");

  const std::size_t n = g.n();
  const double h = g.h();
  const double fourpi_h = 4.0 * std::numbers::pi * h;
  const SymTridiag A = branch_exact_form(p, g);

  std::vector<double> r2(n), w(n), aw(n), grad(n), cand(n);
  for (std::size_t j = 0; j < n; ++j) r2[j] = g.r(j) * g.r(j);

  auto mass = [&](const std::vector<double>& u) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += r2[j] * u[j] * u[j];
    return fourpi_h * s;
  };
  auto kinetic = [&](const std::vector<double>& u) {
    for (std::size_t j = 0; j < n; ++j) w[j] = g.r(j) * u[j];
    return fourpi_h * A.form(w);
  };
  auto l4 = [&](const std::vector<double>& u) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double m2 = u[j] * u[j];
      s += r2[j] * m2 * m2;
    }
    return fourpi_h * s;
  };
  // project onto ||u||_L2 = ||u||_{H^1_a-dot} = 1 using amplitude + dilation
  auto project = [&](std::vector<double>& u) {
    for (int pass = 0; pass < 3; ++pass) {
      const double m = mass(u);
      const double k = kinetic(u);
      dilate_inplace(u, g, std::sqrt(m / k));
      const double m2 = mass(u);
      const double s = 1.0 / std::sqrt(m2);
      for (auto& v : u) v *= s;
    }
  };

  // Gaussian seed
  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = std::exp(-r2[j] / 8.0);
  project(u);

  double tau = 1e-2;
  const double tau0 = 1e-2;
  double J = l4(u);
  int rejects = 0, stall = 0;
  const int max_steps = 100000;
  for (int step = 0; step < max_steps; ++step) {
    for (std::size_t j = 0; j < n; ++j) w[j] = g.r(j) * u[j];
    A.apply(std::span<const double>(w), std::span<double>(aw));
    for (std::size_t j = 0; j < n; ++j) {
      const double au_over_r = aw[j] / g.r(j);
      grad[j] = 4.0 * u[j] * u[j] * u[j] - J * u[j] - 3.0 * J * au_over_r;
    }
    // gradient in the H^1_a inner product: solve (I + A) G = r * grad
    for (std::size_t j = 0; j < n; ++j) aw[j] = g.r(j) * grad[j];
    solve_shifted_real(A, 1.0, aw);
    double gn = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      grad[j] = aw[j] / g.r(j);
      gn += r2[j] * grad[j] * grad[j];
    }
    gn = std::sqrt(fourpi_h * gn);
    if (gn < 1e-15) break;

    for (std::size_t j = 0; j < n; ++j)
      cand[j] = std::max(u[j] + tau * grad[j] / gn, 0.0);
    project(cand);
    const double Jc = l4(cand);
    if (Jc > J) {
      stall = (Jc - J) < tol * J ? stall + 1 : 0;
      u = cand;
      J = Jc;
      rejects = 0;
      tau = std::min(tau * 1.3, tau0);
      if (stall > 40) break;
    } else {
      if (++rejects >= 100)
        throw std::runtime_error("gradient flow: non-monotone J over 100 steps");
      tau *= 0.5;
      if (tau < 1e-14) break;
    }
  }

  // soliton normalization g(x) = (1/2) sqrt(C) Q(x / sqrt(3))
  const double C = J;
  const double alpha = 0.5 * std::sqrt(C);
  dilate_inplace(u, g, std::sqrt(3.0));
  for (auto& v : u) v /= alpha;

  // Functionals of the reconstruction; kinetic from the branch-exact form.
  std::vector<double> f2(n), f4(n);
  for (std::size_t j = 0; j < n; ++j) {
    f2[j] = u[j] * u[j];
    f4[j] = f2[j] * f2[j];
  }
  GroundStateResult gs{RadialField(g)};
  gs.profile = field_from_real(g, u);
  gs.shoot_c = 0.0;
  gs.flavor = flavor;
  gs.f.mass = g.integrate_power_aware(f2);
  gs.f.l4 = g.integrate_power_aware(f4);
  gs.f.kinetic_a = kinetic(u);
  gs.f.energy_a = 0.5 * gs.f.kinetic_a - 0.25 * gs.f.l4;
  gs.pohozaev_rho1 = std::abs(gs.f.mass - gs.f.kinetic_a / 3.0) / gs.f.mass;
  gs.pohozaev_rho2 = std::abs(gs.f.mass - gs.f.l4 / 4.0) / gs.f.mass;
  gs.c_constant = 4.0 * std::pow(3.0, -1.5) / gs.f.mass;
  const double flag_level = std::max(10.0 * tol, 1e-4);
  gs.converged = gs.pohozaev_rho1 <= flag_level && gs.pohozaev_rho2 <= flag_level;
  return gs;
}

Thresholds thresholds_from(double c_constant, Flavor flavor) {
  if (!(c_constant > 0.0))
    throw std::invalid_argument("threshold constant must be positive");
  Thresholds th;
  th.c_constant = c_constant;
  th.energy_threshold = 8.0 / 27.0 / (c_constant * c_constant);
  th.k_threshold = 4.0 / 3.0 / c_constant;
  th.flavor = flavor;
  return th;
}

Thresholds thresholds_from(const GroundStateResult& result) {
  return thresholds_from(result.c_constant, result.flavor);
}

CoercivityReport coercivity_windows(const Functionals& u0, const Thresholds& th,
                                    double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
  const double me = u0.mass * u0.energy_a;
  if (me > (1.0 - delta) * th.energy_threshold * (1.0 + 1e-12))
    throw std::invalid_argument("datum violates M E <= (1 - delta) E_threshold");

  // roots of 3 y^2 - 2 y^3 = 1 - delta bracketing y = 1
  const double target = 1.0 - delta;
  auto cubic = [](double y) { return 3.0 * y * y - 2.0 * y * y * y; };
  auto bisect_root = [&](double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((cubic(mid) - target) * (cubic(lo) - target) <= 0.0)
        hi = mid;
      else
        lo = mid;
    }
    return 0.5 * (lo + hi);
  };

  CoercivityReport rep;
  rep.y_minus = bisect_root(0.0, 1.0);
  rep.y_plus = bisect_root(1.0, 1.5);
  rep.y = std::sqrt(u0.mass * u0.kinetic_a) / th.k_threshold;

  if (rep.y > rep.y_minus && rep.y < rep.y_plus) {
    // forbidden band: the hypothesis precludes sitting at K
    rep.inconsistent_at_k = true;
    rep.branch = rep.y < 1.0 ? CoercivityBranch::below : CoercivityBranch::above;
    return rep;
  }

  if (rep.y <= rep.y_minus) {
    rep.branch = CoercivityBranch::below;
    rep.delta_prime = 1.0 - rep.y_minus;
    rep.c_bound = rep.delta_prime;
    const bool aii =
        u0.kinetic_a - 0.75 * u0.l4 >= rep.c_bound * u0.kinetic_a - 1e-12 * u0.kinetic_a;
    const bool aiii_lower =
        (1.0 / 6.0 + rep.delta_prime / 3.0) * u0.kinetic_a <= u0.energy_a * (1.0 + 1e-12);
    const bool aiii_upper = u0.energy_a <= 0.5 * u0.kinetic_a * (1.0 + 1e-12);
    rep.bound_holds = aii && aiii_lower && aiii_upper;
  } else {
    rep.branch = CoercivityBranch::above;
    rep.delta_prime = rep.y_plus - 1.0;
    const double dp1 = 1.0 + rep.delta_prime;
    rep.epsilon = (dp1 * dp1 - 1.0) / (4.0 * dp1 * dp1);
    rep.c_bound = 4.0 * (dp1 * dp1 - 1.0) /
                  (9.0 * th.c_constant * th.c_constant * u0.mass);
    rep.bound_holds =
        (1.0 + rep.epsilon) * u0.kinetic_a - 0.75 * u0.l4 <= -rep.c_bound * (1.0 - 1e-12);
  }
  return rep;
}

} // namespace nlslab
