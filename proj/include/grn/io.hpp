#pragma once

#include <string>
#include <vector>

#include "grn/hopf.hpp"
#include "grn/simulate.hpp"
#include "grn/spectral.hpp"
#include "grn/steady.hpp"

namespace grn {

// 17 significant digits; round-trips every finite double.
std::string fmt17(double v);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_snapshot_csv(const std::string& path, const std::vector<double>& x,
                        const ConcentrationState& s);
void write_profile_csv(const std::string& path, const SteadyStateSolution& sol);
void write_steady_summary_csv(const std::string& path,
                              const SteadyStateSolution& sol);
void write_roots_csv(const std::string& path, double D, const RootSet& rs);

struct SweepRow {
  double D = 0.0;
  double max_re = 0.0;  // -inf allowed
  int unstable_count = 0;
};
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

void write_amplitude_csv(const std::string& path, const AmplitudeParams& ap);

// Fixed key order: j, D_c, omega_c, period, dlambda_dD_re, dlambda_dD_im,
// b_re, b_im, classification.
std::string hopf_point_json(const HopfPoint& hp);
std::string hopf_report_json(const std::vector<HopfPoint>& points);
std::string amplitude_report_json(const AmplitudeScalingReport& rep);

std::string classification_json(const AttractorClass& ac);

}  // namespace grn
