// Command-line front end: simulate | steady | roots | sweep | hopf.
// Emits deterministic CSV/JSON; a line per stage goes to stderr.
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grn/errors.hpp"
#include "grn/hopf.hpp"
#include "grn/io.hpp"
#include "grn/params.hpp"
#include "grn/simulate.hpp"
#include "grn/spectral.hpp"
#include "grn/steady.hpp"

namespace {

using namespace grn;

void stage(const std::string& msg) { std::cerr << "[grn] " << msg << "\n"; }

// JSON has no inf/nan literals; emit null for the non-finite cases.
std::string json_num(double v) {
  return std::isfinite(v) ? fmt17(v) : std::string("null");
}

struct CommonCli {
  std::string config;
  std::string out = "out";
  long seed = 0;  // reserved; the pipeline is deterministic
  double alpha_m = 0, alpha_p = 0, mu = 0, l = 0, x_M = 0, epsilon = 0, D = 0;
  int h = 0;
  CLI::Option *o_alpha_m = nullptr, *o_alpha_p = nullptr, *o_mu = nullptr,
              *o_h = nullptr, *o_l = nullptr, *o_x_M = nullptr,
              *o_epsilon = nullptr, *o_D = nullptr;
};

void add_common(CLI::App* sub, CommonCli& c) {
  sub->add_option("--config", c.config, "key = value parameter file");
  sub->add_option("--out", c.out, "output directory, created if missing");
  sub->add_option("--seed", c.seed, "reserved; no core math consumes it");
  c.o_alpha_m = sub->add_option("--alpha_m", c.alpha_m, "transcription rate");
  c.o_alpha_p = sub->add_option("--alpha_p", c.alpha_p, "translation rate");
  c.o_mu = sub->add_option("--mu", c.mu, "decay rate of both species");
  c.o_h = sub->add_option("--hill", c.h, "Hill coefficient (config key: h)");
  c.o_l = sub->add_option("--l", c.l, "nuclear membrane position");
  c.o_x_M = sub->add_option("--x_M", c.x_M, "gene site center");
  c.o_epsilon = sub->add_option("--epsilon", c.epsilon, "source half-width");
  c.o_D = sub->add_option("--D", c.D, "diffusion coefficient");
}

// Config file first, then flags on top.
RunConfig resolve(const CommonCli& c) {
  RunConfig cfg;
  if (!c.config.empty()) cfg = load_config(c.config);
  if (*c.o_alpha_m) cfg.params.alpha_m = c.alpha_m;
  if (*c.o_alpha_p) cfg.params.alpha_p = c.alpha_p;
  if (*c.o_mu) cfg.params.mu = c.mu;
  if (*c.o_h) cfg.params.h = c.h;
  if (*c.o_l) cfg.params.l = c.l;
  if (*c.o_x_M) cfg.params.x_M = c.x_M;
  if (*c.o_epsilon) cfg.params.epsilon = c.epsilon;
  if (*c.o_D) cfg.D = c.D;
  cfg.params.validate();
  return cfg;
}

double require_D(const RunConfig& cfg) {
  if (!cfg.D) throw ConfigError("D is required (flag --D or config key D)");
  if (!(*cfg.D > 0.0)) throw ConfigError("D must be strictly positive");
  return *cfg.D;
}

std::string out_path(const CommonCli& c, const std::string& name) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw ConfigError("cannot create output directory: " + c.out);
  return (fs::path(c.out) / name).string();
}

Stepper parse_stepper(const std::string& s) {
  if (s == "auto") return Stepper::auto_select;
  if (s == "serial") return Stepper::serial;
  if (s == "openmp") return Stepper::openmp;
  throw ConfigError("stepper must be one of auto|serial|openmp");
}

// ---- simulate ----

struct SimulateCli {
  CommonCli common;
  double t_end = 2e4;
  int n_nodes = 2001;
  double sample_every = 10.0;
  double dt = 0.0;
  std::string stepper = "auto";
  std::vector<double> snapshot_times;
  bool audit = false;
};

void run_simulate(const SimulateCli& cli) {
  const RunConfig cfg = resolve(cli.common);
  const double D = require_D(cfg);
  const SpatialGrid grid(cli.n_nodes);

  SimOptions opt;
  opt.sample_every = cli.sample_every;
  opt.dt_override = cli.dt;
  opt.stepper = parse_stepper(cli.stepper);
  opt.audit_every_step = cli.audit;
  opt.snapshot_times = cli.snapshot_times;

  stage("simulate: D=" + fmt17(D) + " t_end=" + fmt17(cli.t_end) +
        " nodes=" + std::to_string(grid.n_nodes));
  const Trajectory traj = simulate(cfg.params, D, cli.t_end, grid, opt);
  stage("simulate: " + std::to_string(traj.t.size()) + " samples, dt=" +
        fmt17(traj.dt));

  std::vector<double> xs(grid.n_nodes);
  for (int i = 0; i < grid.n_nodes; ++i) xs[i] = grid.x(i);
  write_trajectory_csv(out_path(cli.common, "trajectory.csv"), traj);
  write_snapshot_csv(out_path(cli.common, "snapshot_final.csv"), xs,
                     traj.final_state);
  for (size_t i = 0; i < traj.snapshots.size(); ++i) {
    char name[40];
    std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i + 1);
    write_snapshot_csv(out_path(cli.common, name), xs, traj.snapshots[i]);
  }

  const AttractorClass ac = classify(traj);
  std::cout << classification_json(ac) << "\n";
}

// ---- steady ----

struct SteadyCli {
  CommonCli common;
  int n_nodes = 2001;
  bool eps_fixed_point = false;
  double tol = 1e-10;
};

void run_steady(const SteadyCli& cli) {
  const RunConfig cfg = resolve(cli.common);
  const double D = require_D(cfg);
  const SpatialGrid grid(cli.n_nodes);

  SteadyStateSolution sol;
  if (cli.eps_fixed_point) {
    stage("steady: regularized fixed point, D=" + fmt17(D) +
          " nodes=" + std::to_string(grid.n_nodes));
    sol = solve_eps_fixed_point(cfg.params, D, grid, cli.tol);
  } else {
    stage("steady: closed form, D=" + fmt17(D));
    const double p = solve_p_at_gene(cfg.params, D);
    sol = reconstruct_profiles(cfg.params, D, p, grid);
  }
  stage("steady: p_at_gene=" + fmt17(sol.p_at_gene) + " residual=" +
        fmt17(sol.residual));

  write_profile_csv(out_path(cli.common, "steady_profile.csv"), sol);
  write_steady_summary_csv(out_path(cli.common, "steady_summary.csv"), sol);
  std::cout << "{\"D\": " << json_num(sol.D) << ", \"p_at_gene\": "
            << json_num(sol.p_at_gene) << ", \"residual\": "
            << json_num(sol.residual) << "}\n";
}

// ---- roots ----

struct RootsCli {
  CommonCli common;
};

void run_roots(const RootsCli& cli) {
  const RunConfig cfg = resolve(cli.common);
  const double D = require_D(cfg);
  stage("roots: D=" + fmt17(D));
  const CharacteristicContext ctx = CharacteristicContext::make(cfg.params, D);
  const RootSet rs = find_roots(ctx);
  stage("roots: " + std::to_string(rs.roots.size()) + " in the search box");

  write_roots_csv(out_path(cli.common, "roots.csv"), D, rs);
  const double max_re = rs.roots.empty()
                            ? -std::numeric_limits<double>::infinity()
                            : rs.roots.front().lam.real();
  std::cout << "{\"D\": " << json_num(D) << ", \"n_roots\": "
            << rs.roots.size() << ", \"max_re_lambda\": " << json_num(max_re)
            << "}\n";
}

// ---- sweep ----

struct SweepCli {
  CommonCli common;
  double d1 = 1e-7;
  double d2 = 0.1;
  int count = 40;
};

void run_sweep(const SweepCli& cli) {
  const RunConfig cfg = resolve(cli.common);
  if (!(0.0 < cli.d1 && cli.d1 <= cli.d2))
    throw ConfigError("sweep: need 0 < d1 <= d2");
  if (cli.count < 1) throw ConfigError("sweep: need count >= 1");

  std::vector<SweepRow> rows;
  rows.reserve(cli.count);
  for (int i = 0; i < cli.count; ++i) {
    double D;
    if (cli.count == 1)
      D = cli.d1;
    else if (i == cli.count - 1)
      D = cli.d2;
    else
      D = cli.d1 * std::pow(cli.d2 / cli.d1, double(i) / (cli.count - 1));
    stage("sweep " + std::to_string(i + 1) + "/" + std::to_string(cli.count) +
          ": D=" + fmt17(D));
    const CharacteristicContext ctx =
        CharacteristicContext::make(cfg.params, D);
    const RootSet rs = find_roots(ctx);
    SweepRow row;
    row.D = D;
    row.max_re = rs.roots.empty()
                     ? -std::numeric_limits<double>::infinity()
                     : rs.roots.front().lam.real();
    for (const Root& r : rs.roots) row.unstable_count += r.lam.real() > 0.0;
    rows.push_back(row);
  }
  write_sweep_csv(out_path(cli.common, "sweep.csv"), rows);
  std::cout << "{\"points\": " << rows.size() << "}\n";
}

// ---- hopf ----

struct HopfCli {
  CommonCli common;
  std::vector<double> bracket;  // flat lo hi pairs
  bool verify_amplitude = false;
  std::vector<double> rel_offsets = {0.01, 0.02, 0.04};
};

void run_hopf(const HopfCli& cli) {
  const RunConfig cfg = resolve(cli.common);
  std::vector<double> br = cli.bracket;
  if (br.empty()) br = {1e-4, 1e-3, 5e-3, 2e-2};
  if (br.size() % 2 != 0)
    throw ConfigError("hopf: --bracket takes lo hi pairs");

  std::vector<HopfPoint> pts;
  for (size_t k = 0; k + 1 < br.size(); k += 2) {
    stage("hopf: bracket [" + fmt17(br[k]) + ", " + fmt17(br[k + 1]) + "]");
    pts.push_back(critical_point(cfg.params, br[k], br[k + 1]));
    const HopfPoint& hp = pts.back();
    stage("hopf: D_c=" + fmt17(hp.D_c) + " omega_c=" + fmt17(hp.omega_c) +
          " " + to_string(hp.classification));
  }

  // Amplitude-envelope time series per point, for plotting against the PDE.
  for (size_t k = 0; k < pts.size(); ++k) {
    const HopfPoint& hp = pts[k];
    AmplitudeParams ap;
    ap.a = hp.a;
    ap.b = hp.b;
    ap.nu = hp.nu;
    const double g = (hp.a * double(hp.nu)).real();  // > 0 by transversality
    const double dT = 0.09 / std::abs(hp.a);
    double T_end = 5.0 / g;
    if (hp.b.real() < 0.0) {
      const double A_eq = std::sqrt(-g / hp.b.real());
      T_end = (std::log(A_eq / std::abs(ap.A0)) + 5.0) / g;
    }
    ap = amplitude_evolve(ap, T_end, dT);
    write_amplitude_csv(
        out_path(cli.common, "amplitude_" + std::to_string(k + 1) + ".csv"),
        ap);
  }

  std::string json = "{\"critical_points\": [";
  for (size_t k = 0; k < pts.size(); ++k) {
    if (k) json += ", ";
    json += hopf_point_json(pts[k]);
  }
  json += "]";
  if (cli.verify_amplitude) {
    if (pts.empty()) throw ConfigError("hopf: no critical point to verify");
    std::vector<double> offsets;
    for (double r : cli.rel_offsets) offsets.push_back(r * pts[0].D_c);
    stage("hopf: amplitude scaling at " + std::to_string(offsets.size()) +
          " offsets from D_c=" + fmt17(pts[0].D_c) + " (several PDE runs)");
    const AmplitudeScalingReport rep =
        predict_vs_simulate(cfg.params, pts[0], offsets);
    stage("hopf: fitted exponent=" + fmt17(rep.exponent));
    json += ", \"amplitude_scaling\": " + amplitude_report_json(rep);
  }
  json += "}";

  std::ofstream f(out_path(cli.common, "hopf.json"));
  if (!f) throw ConfigError("cannot open hopf.json for writing");
  f << json << "\n";
  std::cout << json << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatially extended negative-feedback oscillator toolkit"};
  app.require_subcommand(1);

  SimulateCli sim;
  CLI::App* s_sim = app.add_subcommand(
      "simulate", "time-step the reaction-diffusion system");
  add_common(s_sim, sim.common);
  s_sim->add_option("--t-end", sim.t_end, "final time");
  s_sim->add_option("--n-nodes", sim.n_nodes, "grid nodes on [0,1]");
  s_sim->add_option("--sample-every", sim.sample_every, "sampling interval");
  s_sim->add_option("--dt", sim.dt, "time step override (0 = stability cap)");
  s_sim->add_option("--stepper", sim.stepper, "auto|serial|openmp");
  s_sim->add_option("--snapshot", sim.snapshot_times,
                    "profile snapshot times (repeatable)");
  s_sim->add_flag("--audit-every-step", sim.audit,
                  "check invariant bounds on every step");
  s_sim->callback([&] { run_simulate(sim); });

  SteadyCli stead;
  CLI::App* s_steady =
      app.add_subcommand("steady", "stationary profiles at a given D");
  add_common(s_steady, stead.common);
  s_steady->add_option("--n-nodes", stead.n_nodes, "grid nodes on [0,1]");
  s_steady->add_flag("--eps-fixed-point", stead.eps_fixed_point,
                     "solve the regularized-source problem instead of the "
                     "point-source closed form");
  s_steady->add_option("--tol", stead.tol, "fixed-point update tolerance");
  s_steady->callback([&] { run_steady(stead); });

  RootsCli roots;
  CLI::App* s_roots = app.add_subcommand(
      "roots", "eigenvalues of the linearization inside the search box");
  add_common(s_roots, roots.common);
  s_roots->callback([&] { run_roots(roots); });

  SweepCli sweep;
  CLI::App* s_sweep = app.add_subcommand(
      "sweep", "stability map over a log-spaced diffusion range");
  add_common(s_sweep, sweep.common);
  s_sweep->add_option("--d1", sweep.d1, "lower end of the D range");
  s_sweep->add_option("--d2", sweep.d2, "upper end of the D range");
  s_sweep->add_option("--count", sweep.count, "number of sweep points");
  s_sweep->callback([&] { run_sweep(sweep); });

  HopfCli hopf;
  CLI::App* s_hopf = app.add_subcommand(
      "hopf", "critical points, transversality, and normal-form coefficients");
  add_common(s_hopf, hopf.common);
  s_hopf->add_option("--bracket", hopf.bracket,
                     "D_lo D_hi bracketing one stability change; repeatable");
  s_hopf->add_flag("--verify-amplitude", hopf.verify_amplitude,
                   "fit the oscillation-amplitude growth law near the first "
                   "critical point (several long PDE runs)");
  s_hopf->add_option("--offsets", hopf.rel_offsets,
                     "relative D offsets for --verify-amplitude");
  s_hopf->callback([&] { run_hopf(hopf); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const grn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const grn::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return 3;
  } catch (const grn::BracketError& e) {
    std::cerr << "bracket error: " << e.what() << "\n";
    return 4;
  } catch (const grn::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 4;
  } catch (const grn::SingularKernelError& e) {
    std::cerr << "singular kernel: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
