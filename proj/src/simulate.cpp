#include "grn/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "grn/kinetics.hpp"

namespace grn {

namespace {

struct StepTables {
  std::vector<int> src_idx;     // nodes inside the bump support
  std::vector<double> src_del;  // renormalized source values there
  int jl = 0;                   // first node with x >= l
  double del_max = 0.0;
};

StepTables build_tables(const ModelParams& P, int n) {
  const double dx = 1.0 / (n - 1);
  StepTables t;
  t.jl = (int)std::ceil(P.l * (n - 1) - 1e-9);
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = dirac_eps(i * dx, P.x_M, P.epsilon);
    if (v > 0.0) {
      t.src_idx.push_back(i);
      t.src_del.push_back(v);
      mass += v * dx * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
    }
  }
  for (double& v : t.src_del) {
    v /= mass;  // trapezoid mass of the discrete source is exactly 1
    t.del_max = std::max(t.del_max, v);
  }
  return t;
}

struct StepCoeffs {
  double cm0, cm1, cp0, cp1, amdt, apdt;
};

StepCoeffs make_coeffs(const ModelParams& P, double D, double dt, double dx) {
  const double r = D * dt / (dx * dx);
  StepCoeffs c;
  c.cm0 = 1.0 - 2.0 * r - P.mu * dt;
  c.cm1 = r;
  c.cp0 = c.cm0;
  c.cp1 = r;
  c.amdt = P.alpha_m * dt;
  c.apdt = P.alpha_p * dt;
  if (c.cm0 <= 0.0)
    throw ConfigError("step: update matrix lost positivity, reduce dt");
  return c;
}

double cfl_limit(double D, double dx) { return 0.8 * dx * dx / (2.0 * D); }

// Interior update on [lo, hi) of [1, n-1); identical arithmetic per node no
// matter how the range is partitioned, so serial and threaded runs agree
// bitwise.
inline void fused_rows(const double* __restrict m, const double* __restrict p,
                       double* __restrict mn, double* __restrict pn, int lo,
                       int hi, int jl, const StepCoeffs& c) {
  int i = lo;
  const int mid = std::min(hi, std::max(lo, jl));
  for (; i < mid; ++i) {
    mn[i] = c.cm0 * m[i] + c.cm1 * (m[i - 1] + m[i + 1]);
    pn[i] = c.cp0 * p[i] + c.cp1 * (p[i - 1] + p[i + 1]);
  }
  for (; i < hi; ++i) {
    mn[i] = c.cm0 * m[i] + c.cm1 * (m[i - 1] + m[i + 1]);
    pn[i] = c.cp0 * p[i] + c.cp1 * (p[i - 1] + p[i + 1]) + c.apdt * m[i];
  }
}

inline void walls_and_source(const double* m, const double* p, double* mn,
                             double* pn, int n, const StepTables& t,
                             const StepCoeffs& c, int h) {
  // ghost-node reflection: u[-1] = u[1], u[n] = u[n-2]
  mn[0] = c.cm0 * m[0] + c.cm1 * (m[1] + m[1]);
  pn[0] = c.cp0 * p[0] + c.cp1 * (p[1] + p[1]);
  mn[n - 1] = c.cm0 * m[n - 1] + c.cm1 * (m[n - 2] + m[n - 2]);
  pn[n - 1] = c.cp0 * p[n - 1] + c.cp1 * (p[n - 2] + p[n - 2]) +
              c.apdt * m[n - 1];
  for (size_t k = 0; k < t.src_idx.size(); ++k) {
    const int i = t.src_idx[k];
    mn[i] += c.amdt * hill(p[i], h) * t.src_del[k];
  }
}

double trapezoid(const double* u, int n, double dx) {
  double s = 0.5 * (u[0] + u[n - 1]);
  for (int i = 1; i + 1 < n; ++i) s += u[i];
  return s * dx;
}

void scan_extrema(const double* u, int n, double& mn, double& mx) {
  double lo = u[0], hi = u[0];
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, u[i]);
    hi = std::max(hi, u[i]);
  }
  mn = std::min(mn, lo);
  mx = std::max(mx, hi);
}

}  // namespace

ConcentrationState step(const ConcentrationState& s, const ModelParams& P,
                        double D, double dt) {
  const int n = (int)s.m.size();
  if (n < 3 || s.p.size() != s.m.size())
    throw ConfigError("step: fields need matching sizes, at least 3 nodes");
  if (!(D > 0.0) || !(dt > 0.0)) throw ConfigError("step: D and dt must be positive");
  const double dx = 1.0 / (n - 1);
  if (dt > cfl_limit(D, dx) * (1.0 + 1e-12))
    throw ConfigError("step: dt violates the diffusion stability limit");
  SpatialGrid(n).validate_for(P.epsilon);

  const StepTables t = build_tables(P, n);
  const StepCoeffs c = make_coeffs(P, D, dt, dx);
  ConcentrationState out;
  out.t = s.t + dt;
  out.m.resize(n);
  out.p.resize(n);
  fused_rows(s.m.data(), s.p.data(), out.m.data(), out.p.data(), 1, n - 1,
             t.jl, c);
  walls_and_source(s.m.data(), s.p.data(), out.m.data(), out.p.data(), n, t, c,
                   P.h);
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(out.m[i]) || !std::isfinite(out.p[i]))
      throw DivergenceError("step: field left the finite range");
  return out;
}

Trajectory simulate(const ModelParams& P, double D, double t_end,
                    const SpatialGrid& grid, const SimOptions& opt) {
  P.validate();
  if (!(D > 0.0)) throw ConfigError("simulate: D must be positive");
  if (!(t_end > 0.0)) throw ConfigError("simulate: t_end must be positive");
  if (!(opt.sample_every > 0.0))
    throw ConfigError("simulate: sample_every must be positive");
  grid.validate_for(P.epsilon);
  const int n = grid.n_nodes;
  const double dx = grid.dx();

  double dt = std::min(cfl_limit(D, dx), 0.05);
  if (opt.dt_override > 0.0) {
    if (opt.dt_override > cfl_limit(D, dx) * (1.0 + 1e-12))
      throw ConfigError("simulate: dt override violates the stability limit");
    dt = opt.dt_override;
  }
  const long nsteps = std::max(1L, (long)std::ceil(t_end / dt - 1e-9));
  const long ksample = std::max(1L, std::lround(opt.sample_every / dt));

  const StepTables tab = build_tables(P, n);
  const StepCoeffs c = make_coeffs(P, D, dt, dx);

  std::vector<double> ma(n, 0.0), pa(n, 0.0), mb(n, 0.0), pb(n, 0.0);
  if (!opt.m0.empty()) {
    if ((int)opt.m0.size() != n || (int)opt.p0.size() != n)
      throw ConfigError("simulate: initial fields must match the grid");
    for (int i = 0; i < n; ++i)
      if (opt.m0[i] < 0.0 || opt.p0[i] < 0.0)
        throw ConfigError("simulate: initial fields must be nonnegative");
    ma = opt.m0;
    pa = opt.p0;
  }

  Trajectory traj;
  traj.dt = dt;
  traj.n_nodes = n;
  traj.audited_every_step = opt.audit_every_step;
  traj.bound_m = P.alpha_m * tab.del_max / P.mu;
  traj.bound_p = P.alpha_p * traj.bound_m / P.mu;
  traj.min_m = traj.min_p = 0.0;
  traj.max_m = traj.max_p = 0.0;

  std::vector<double> snap_sorted = opt.snapshot_times;
  std::sort(snap_sorted.begin(), snap_sorted.end());
  std::vector<long> snap_steps;
  for (double ts : snap_sorted)
    snap_steps.push_back(std::clamp((long)std::lround(ts / dt), 0L, nsteps));

  double* mcur = ma.data();
  double* pcur = pa.data();
  double* mnew = mb.data();
  double* pnew = pb.data();

  bool failed = false;
  const char* failmsg = "";
  size_t snap_ptr = 0;

  auto record_sample = [&](long s) {
    const double M = trapezoid(mcur, n, dx);
    const double Pint = trapezoid(pcur, n, dx);
    if (!std::isfinite(M) || !std::isfinite(Pint)) {
      failed = true;
      failmsg = "simulate: spatial integrals left the finite range";
      return;
    }
    traj.t.push_back(s * dt);
    traj.M.push_back(M);
    traj.P.push_back(Pint);
    if (!opt.audit_every_step) {
      scan_extrema(mcur, n, traj.min_m, traj.max_m);
      scan_extrema(pcur, n, traj.min_p, traj.max_p);
    }
  };
  auto bookkeep = [&](long s) {
    walls_and_source(mcur, pcur, mnew, pnew, n, tab, c, P.h);
    std::swap(mcur, mnew);
    std::swap(pcur, pnew);
    if (opt.audit_every_step) {
      scan_extrema(mcur, n, traj.min_m, traj.max_m);
      scan_extrema(pcur, n, traj.min_p, traj.max_p);
      if (!(traj.min_m >= 0.0) || !(traj.min_p >= 0.0) ||
          !(traj.max_m <= traj.bound_m * (1.0 + 1e-12)) ||
          !(traj.max_p <= traj.bound_p * (1.0 + 1e-12))) {
        failed = true;
        failmsg = "simulate: invariant-region bounds violated";
        return;
      }
    }
    while (snap_ptr < snap_steps.size() && snap_steps[snap_ptr] == s) {
      ConcentrationState st;
      st.t = s * dt;
      st.m.assign(mcur, mcur + n);
      st.p.assign(pcur, pcur + n);
      traj.snapshots.push_back(std::move(st));
      ++snap_ptr;
    }
    if (s % ksample == 0 || s == nsteps) record_sample(s);
  };

  record_sample(0);
  while (snap_ptr < snap_steps.size() && snap_steps[snap_ptr] == 0) {
    ConcentrationState st;
    st.t = 0.0;
    st.m.assign(mcur, mcur + n);
    st.p.assign(pcur, pcur + n);
    traj.snapshots.push_back(std::move(st));
    ++snap_ptr;
  }

  bool use_omp = false;
#ifdef _OPENMP
  use_omp = opt.stepper == Stepper::openmp ||
            (opt.stepper == Stepper::auto_select && omp_get_max_threads() > 1);
#else
  if (opt.stepper == Stepper::openmp)
    throw ConfigError("simulate: no OpenMP support in this build");
#endif

  if (!use_omp) {
    for (long s = 1; s <= nsteps && !failed; ++s) {
      fused_rows(mcur, pcur, mnew, pnew, 1, n - 1, tab.jl, c);
      bookkeep(s);
    }
  } else {
#ifdef _OPENMP
#pragma omp parallel
    {
      const int tid = omp_get_thread_num();
      const int nth = omp_get_num_threads();
      const long span = n - 2;  // interior nodes 1 .. n-2
      const int lo = 1 + (int)(span * (long)tid / nth);
      const int hi = 1 + (int)(span * (long)(tid + 1) / nth);
      for (long s = 1; s <= nsteps; ++s) {
        fused_rows(mcur, pcur, mnew, pnew, lo, hi, tab.jl, c);
#pragma omp barrier
#pragma omp single
        bookkeep(s);
        // implicit barrier: pointer swap visible before the next sweep
        if (failed) break;
      }
    }
#endif
  }
  if (failed) throw DivergenceError(failmsg);

  traj.final_state.t = nsteps * dt;
  traj.final_state.m.assign(mcur, mcur + n);
  traj.final_state.p.assign(pcur, pcur + n);
  return traj;
}

Trajectory simulate(const ModelParams& P, double D, double t_end,
                    const SpatialGrid& grid, double sample_every) {
  SimOptions opt;
  opt.sample_every = sample_every;
  return simulate(P, D, t_end, grid, opt);
}

std::string to_string(AttractorClass::Kind k) {
  return k == AttractorClass::Kind::steady ? "steady" : "oscillatory";
}

AttractorClass classify(const Trajectory& traj, double window_fraction) {
  if (!(window_fraction > 0.0) || window_fraction > 1.0)
    throw ConfigError("classify: window fraction must lie in (0,1]");
  if (traj.t.empty()) throw ConfigError("classify: empty trajectory");
  const double t0 = (1.0 - window_fraction) * traj.t.back();
  size_t first = 0;
  while (first < traj.t.size() && traj.t[first] < t0 - 1e-12) ++first;
  const size_t count = traj.t.size() - first;
  if (count < 10)
    throw ConfigError("classify: analysis window holds fewer than 10 samples");

  double lo = traj.M[first], hi = traj.M[first], mean = 0.0;
  for (size_t i = first; i < traj.M.size(); ++i) {
    lo = std::min(lo, traj.M[i]);
    hi = std::max(hi, traj.M[i]);
    mean += traj.M[i];
  }
  mean /= (double)count;

  AttractorClass ac;
  ac.amplitude_metric = mean > 0.0 ? (hi - lo) / mean : 0.0;
  if (ac.amplitude_metric > 1e-3) {
    ac.kind = AttractorClass::Kind::oscillatory;
    std::vector<size_t> peaks;
    for (size_t i = std::max(first, (size_t)1); i + 1 < traj.M.size(); ++i)
      if (traj.M[i] > traj.M[i - 1] && traj.M[i] > traj.M[i + 1])
        peaks.push_back(i);
    if (peaks.size() < 2)
      throw ConvergenceError("classify: oscillation period could not be estimated");
    ac.period = (traj.t[peaks.back()] - traj.t[peaks.front()]) /
                (double)(peaks.size() - 1);
  }
  return ac;
}

ConcentrationState late_time_profile(const Trajectory& traj) {
  const AttractorClass ac = classify(traj, 0.5);
  if (ac.kind == AttractorClass::Kind::oscillatory)
    throw ConvergenceError("late_time_profile: run classified oscillatory");
  return traj.final_state;
}

}  // namespace grn
