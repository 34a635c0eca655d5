#pragma once

#include <string>

#include "nlslab/classify.hpp"
#include "nlslab/evolution.hpp"
#include "nlslab/ground_state.hpp"

// Fixed-format CSV and JSON output.  All numbers are written with 17
// significant digits, '.' decimal separator and '\n' line endings, so
// identical configurations produce byte-identical files.

namespace nlslab::io {

inline constexpr const char* kFormatVersion = "1";

/// "%.17g" rendering used everywhere.
std::string fmt(double x);

/// Complex field CSV, header "r,re_u,im_u".
void write_field_csv(const std::string& path, const RadialField& u);
RadialField read_field_csv(const std::string& path, const RadialGrid& g);

/// Ground-state profile CSV, header "r,Q".
void write_profile_csv(const std::string& path, const RadialField& profile);

/// Trajectory CSV, header "t,mass,kinetic_a,l4,energy,V,dV,d2V".
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Threshold record {a, flavor, C, E_threshold, K_threshold, rho1, rho2}
/// plus the resolved configuration and format version.
void write_thresholds_json(const std::string& path, double a, const GroundStateResult& gs,
                           const Thresholds& th, const std::string& config_json);

/// Outcome record for an evolution run.
void write_outcome_json(const std::string& path, const Trajectory& traj,
                        const std::string& config_json);

/// Classification record.
void write_classification_json(const std::string& path, const Classification& cls,
                               const std::string& config_json);

/// Sweep table CSV with one row per cell.
void write_sweep_csv(const std::string& path, const std::vector<SweepCell>& cells);

} // namespace nlslab::io
