#pragma once

#include <string>
#include <vector>

#include "grn/grid.hpp"
#include "grn/params.hpp"

namespace grn {

struct ConcentrationState {
  double t = 0.0;
  std::vector<double> m;
  std::vector<double> p;
};

struct Trajectory {
  std::vector<double> t;  // strictly increasing sample times
  std::vector<double> M;  // trapezoid integral of m per sample
  std::vector<double> P;
  std::vector<ConcentrationState> snapshots;  // at requested times, in order
  ConcentrationState final_state;
  // extrema seen over the whole run (every step when audited, else at samples)
  double min_m = 0.0, max_m = 0.0, min_p = 0.0, max_p = 0.0;
  bool audited_every_step = false;
  double bound_m = 0.0, bound_p = 0.0;  // invariant-region ceilings
  double dt = 0.0;
  int n_nodes = 0;
};

enum class Stepper { auto_select, serial, openmp };

struct SimOptions {
  double sample_every = 10.0;
  double dt_override = 0.0;  // 0 -> 0.8*dx^2/(2D) capped at 0.05
  Stepper stepper = Stepper::auto_select;
  bool audit_every_step = false;  // bounds check per step instead of per sample
  std::vector<double> snapshot_times;
  std::vector<double> m0, p0;  // empty -> zero initial data
};

// One forward-Euler update, centered differences, ghost-node Neumann walls.
ConcentrationState step(const ConcentrationState& s, const ModelParams& P,
                        double D, double dt);

Trajectory simulate(const ModelParams& P, double D, double t_end,
                    const SpatialGrid& grid, const SimOptions& opt);
Trajectory simulate(const ModelParams& P, double D, double t_end,
                    const SpatialGrid& grid, double sample_every = 10.0);

struct AttractorClass {
  enum class Kind { steady, oscillatory } kind = Kind::steady;
  double amplitude_metric = 0.0;  // peak-to-trough of M over window / mean
  double period = 0.0;            // mean peak spacing, oscillatory only
};

std::string to_string(AttractorClass::Kind k);

// Window = samples with t >= (1-window_fraction)*t_end; oscillatory iff
// the relative amplitude metric exceeds 1e-3.
AttractorClass classify(const Trajectory& traj, double window_fraction = 0.5);

// Final snapshot of a run that classified steady.
ConcentrationState late_time_profile(const Trajectory& traj);

}  // namespace grn
