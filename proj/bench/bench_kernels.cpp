// Throughput comparison: serial vs OpenMP stepper, root search, kernel
// evaluations. --quick shrinks everything for CI smoke use.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "grn/greens.hpp"
#include "grn/params.hpp"
#include "grn/simulate.hpp"
#include "grn/spectral.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double bench_stepper(grn::Stepper st, int n_nodes, long steps) {
  grn::ModelParams P;
  const grn::SpatialGrid grid(n_nodes);
  const double dx = grid.dx();
  const double D = 1e-3;
  const double dt = 0.8 * dx * dx / (2.0 * D);

  grn::SimOptions opt;
  opt.stepper = st;
  opt.dt_override = dt;
  opt.sample_every = steps * dt;  // one interior sample at most
  const auto t0 = std::chrono::steady_clock::now();
  grn::simulate(P, D, steps * dt, grid, opt);
  const double dtw = seconds_since(t0);
  return dtw / (double(steps) * n_nodes) * 1e9;  // ns per node-step
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

  const int n_nodes = 2001;
  const long steps = quick ? 2000 : 100000;

  std::printf("stepper throughput, %d nodes, %ld steps\n", n_nodes, steps);
  const double ser = bench_stepper(grn::Stepper::serial, n_nodes, steps);
  std::printf("  serial : %8.2f ns/node-step\n", ser);
#ifdef _OPENMP
  const double par = bench_stepper(grn::Stepper::openmp, n_nodes, steps);
  std::printf("  openmp : %8.2f ns/node-step (%d threads, speedup %.2fx)\n",
              par, omp_get_max_threads(), ser / par);
#else
  std::printf("  openmp : unavailable in this build\n");
#endif

  grn::ModelParams P;
  const double D = 1e-3;
  const auto ctx = grn::CharacteristicContext::make(P, D);
  const int reps = quick ? 1 : 3;
  const auto t0 = std::chrono::steady_clock::now();
  size_t total = 0;
  for (int r = 0; r < reps; ++r) total += grn::find_roots(ctx).roots.size();
  std::printf("root search: %.3f s/call (D=%g, %zu roots)\n",
              seconds_since(t0) / reps, D, total / reps);

  const long evals = quick ? 20000 : 1000000;
  grn::Complex acc = 0.0;
  const auto t1 = std::chrono::steady_clock::now();
  for (long i = 0; i < evals; ++i) {
    const grn::Complex lam(0.01 + 1e-7 * i, 0.02 + 1e-7 * i);
    acc += grn::kernel_integral(P, D, lam);
  }
  const double dte = seconds_since(t1);
  std::printf("kernel integral: %7.1f ns/eval (checksum %g)\n",
              dte / evals * 1e9, std::abs(acc));
  return 0;
}
