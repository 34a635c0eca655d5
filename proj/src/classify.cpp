#include "nlslab/classify.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#ifdef NLSLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace nlslab {

const char* to_string(Predicted p) {
  switch (p) {
    case Predicted::scatter: return "scatter";
    case Predicted::blowup: return "blowup";
    case Predicted::not_applicable_above_energy_threshold:
      return "not_applicable_above_energy_threshold";
    case Predicted::inconsistent_at_k: return "inconsistent_at_K";
  }
  return "?";
}

const char* to_string(Observed o) {
  switch (o) {
    case Observed::scattered: return "scattered";
    case Observed::blew_up: return "blew_up";
    case Observed::undecided: return "undecided";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::ran_to_horizon: return "ran_to_horizon";
    case Outcome::blowup_detected: return "blowup_detected";
    case Outcome::scattering_detected: return "scattering_detected";
  }
  return "?";
}

const char* to_string(Flavor f) {
  return f == Flavor::general ? "general" : "radial";
}

Classification classify(const Functionals& u0, const Thresholds& th) {
  Classification c;
  c.thresholds = th;
  c.me_product = u0.mass * u0.energy_a;
  c.mk_product = std::sqrt(u0.mass * u0.kinetic_a);
  c.me_ratio = c.me_product / th.energy_threshold;
  c.mk_ratio = c.mk_product / th.k_threshold;

  // guard band of a few ulp so exact-threshold data lands on the threshold
  // case instead of a roundoff-determined side
  constexpr double band = 8.0 * std::numeric_limits<double>::epsilon();
  if (!(c.me_ratio < 1.0 - band)) {
    c.predicted = Predicted::not_applicable_above_energy_threshold;
    return c;
  }
  if (std::abs(c.mk_ratio - 1.0) <= band) {
    c.predicted = Predicted::inconsistent_at_k;
    return c;
  }
  c.predicted = c.mk_ratio < 1.0 ? Predicted::scatter : Predicted::blowup;
  return c;
}

Classification classify(const RadialField& u0, const PotentialParam& p,
                        const Thresholds& th) {
  return classify(functionals_of(u0, p), th);
}

Classification run_experiment(const RadialField& u0, const PotentialParam& p,
                              const Thresholds& th, const EvolveConfig& cfg,
                              Trajectory* traj_out) {
  Classification c = classify(u0, p, th);
  if (c.predicted != Predicted::scatter && c.predicted != Predicted::blowup)
    throw std::invalid_argument("run_experiment needs a scatter or blowup prediction");

  Trajectory traj = evolve(u0, p, cfg);
  c.has_observation = true;
  switch (traj.outcome) {
    case Outcome::blowup_detected: c.observed = Observed::blew_up; break;
    case Outcome::scattering_detected: c.observed = Observed::scattered; break;
    case Outcome::ran_to_horizon: c.observed = Observed::undecided; break;
  }
  c.agreement = (c.predicted == Predicted::scatter && c.observed == Observed::scattered) ||
                (c.predicted == Predicted::blowup && c.observed == Observed::blew_up);
  if (traj_out) *traj_out = std::move(traj);
  return c;
}

std::vector<SweepCell> sweep(const std::vector<double>& a_list,
                             const std::vector<double>& lambda_list,
                             const SweepSettings& settings) {
  std::vector<SweepCell> cells(a_list.size() * lambda_list.size());
  if (cells.empty()) return cells;

  const RadialGrid grid(settings.r_max, settings.n);

  // one ground state per coupling, shared by its row of cells
  struct Base {
    std::shared_ptr<GroundStateResult> gs;
    Thresholds th;
    std::string error;
  };
  std::vector<Base> bases(a_list.size());
  for (std::size_t i = 0; i < a_list.size(); ++i) {
    try {
      const PotentialParam p(a_list[i]);
      const Flavor flavor =
          (p.a > 0.0) ? Flavor::radial : settings.flavor;
      auto gs = std::make_shared<GroundStateResult>(
          solve_ground_state(p, grid, settings.gs_tol, flavor));
      bases[i].th = thresholds_from(*gs);
      bases[i].gs = std::move(gs);
    } catch (const std::exception& e) {
      bases[i].error = e.what();
    }
  }

#ifdef NLSLAB_HAVE_OPENMP
  if (settings.jobs > 0) omp_set_num_threads(settings.jobs);
#endif

  const auto total = static_cast<std::ptrdiff_t>(cells.size());
#ifdef NLSLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const std::size_t ia = static_cast<std::size_t>(idx) / lambda_list.size();
    const std::size_t il = static_cast<std::size_t>(idx) % lambda_list.size();
    SweepCell& cell = cells[static_cast<std::size_t>(idx)];
    cell.a = a_list[ia];
    cell.lambda = lambda_list[il];
    try {
      if (!bases[ia].error.empty()) throw std::runtime_error(bases[ia].error);
      const PotentialParam p(cell.a);
      RadialField u0 = bases[ia].gs->profile;
      u0 *= cell.lambda;
      cell.cls = classify(u0, p, bases[ia].th);
      if (cell.cls.predicted == Predicted::scatter ||
          cell.cls.predicted == Predicted::blowup) {
        Trajectory traj;
        cell.cls = run_experiment(u0, p, bases[ia].th, settings.evolve, &traj);
        if (traj.outcome == Outcome::blowup_detected) cell.t_blowup = traj.blowup_time;
        cell.scatter_distance = traj.scatter_distance;
      }
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  }
  return cells;
}

} // namespace nlslab
