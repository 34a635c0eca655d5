#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/evolution.hpp"
#include "nlslab/ground_state.hpp"

namespace nlslab {

enum class Predicted {
  scatter,
  blowup,
  not_applicable_above_energy_threshold,
  inconsistent_at_k,
};

enum class Observed { scattered, blew_up, undecided };

struct Classification {
  Predicted predicted = Predicted::not_applicable_above_energy_threshold;
  Observed observed = Observed::undecided;
  bool has_observation = false;
  bool agreement = false; // predicted consistent with observed
  // quantities
  double me_product = 0.0; // M(u0) E_a(u0)
  double mk_product = 0.0; // ||u0||_L2 ||u0||_{H^1_a-dot} = sqrt(M * kinetic)
  double me_ratio = 0.0;   // me_product / energy_threshold
  double mk_ratio = 0.0;   // mk_product / k_threshold
  Thresholds thresholds;
};

/// The dichotomy decision rule on initial data (prediction only):
/// requires ME < E_th for applicability, then compares sqrt(M * kinetic)
/// against K_th.  All fields here are radial by construction, so the
/// radiality hypothesis of the blowup branch holds automatically.  Values
/// within a few ulp of a threshold are mapped to the threshold case.
Classification classify(const Functionals& u0, const Thresholds& th);
Classification classify(const RadialField& u0, const PotentialParam& p, const Thresholds& th);

/// Runs the evolution and fills in the observed outcome:
/// blew_up iff blowup was detected, scattered iff the Cauchy probe passed,
/// undecided otherwise.  Prediction must be scatter or blowup.
Classification run_experiment(const RadialField& u0, const PotentialParam& p,
                              const Thresholds& th, const EvolveConfig& cfg,
                              Trajectory* traj_out = nullptr);

struct SweepCell {
  double a = 0.0;
  double lambda = 0.0;
  Classification cls;
  double t_blowup = -1.0;
  double scatter_distance = -1.0;
  std::string error; // per-cell failure, sweep continues
};

struct SweepSettings {
  double r_max = 60.0;
  std::size_t n = 12000;
  double gs_tol = 1e-10;
  EvolveConfig evolve;
  Flavor flavor = Flavor::general;
  int jobs = 0; // 0: library default thread count
};

/// classify + run_experiment over the grid a_list x lambda_list with data
/// lambda * Q_a; cells are independent and run on an OpenMP work pool,
/// results merged in input order.  Cell errors are recorded in-row.
std::vector<SweepCell> sweep(const std::vector<double>& a_list,
                             const std::vector<double>& lambda_list,
                             const SweepSettings& settings);

const char* to_string(Predicted p);
const char* to_string(Observed o);
const char* to_string(Outcome o);
const char* to_string(Flavor f);

} // namespace nlslab
