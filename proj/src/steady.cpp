#include "grn/steady.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "grn/greens.hpp"
#include "grn/kinetics.hpp"

namespace grn {

double steady_coefficient(const ModelParams& P, double D) {
  if (!(D > 0.0)) throw ConfigError("steady: D must be positive");
  return P.alpha_p * P.alpha_m * kernel_integral(P, D, Complex(0.0, 0.0)).real();
}

double solve_p_at_gene(const ModelParams& P, double D) {
  const double C = steady_coefficient(P, D);
  // phi(p) = p - C f(p) is strictly increasing, phi(0) = -C < 0.
  auto phi = [&](double p) { return p - C * hill(p, P.h); };

  double p;
  if (C * P.h < 3.6) {
    // |d/dp C f(p)| <= C h/4 < 0.9: p = C f(p) is a contraction, and it
    // resolves roots far below the absolute bisection floor (tiny D).
    p = C;
    for (int it = 0; it < 400; ++it) {
      const double next = C * hill(p, P.h);
      const bool done = std::abs(next - p) <= 1e-16 * (1.0 + next);
      p = next;
      if (done) break;
    }
  } else {
    double lo = 0.0, hi = std::max(1.0, C);
    while (phi(hi) <= 0.0) hi *= 2.0;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;  // width below spacing of doubles
      (phi(mid) < 0.0 ? lo : hi) = mid;
    }
    p = 0.5 * (lo + hi);
    const double cand =
        p - phi(p) / (1.0 - C * hill_derivs(p, P.h).f1);  // one Newton polish
    if (cand > 0.0 && std::abs(phi(cand)) < std::abs(phi(p))) p = cand;
  }
  if (!(p >= 0.0) || std::abs(phi(p)) >= 1e-12 * (1.0 + std::abs(p)))
    throw ConvergenceError("steady: gene-site root did not meet residual gate");
  return p;
}

SteadyStateSolution reconstruct_profiles(const ModelParams& P, double D,
                                         double p_at_gene,
                                         const SpatialGrid& grid) {
  const int n = grid.n_nodes;
  const double dx = grid.dx();
  const int kM = (int)std::lround(P.x_M / dx);
  if (std::abs(grid.x(kM) - P.x_M) > 1e-12)
    std::fprintf(stderr,
                 "warning: x_M=%g not a grid node, kink snapped to x=%g\n",
                 P.x_M, grid.x(kM));

  SteadyStateSolution sol;
  sol.D = D;
  sol.p_at_gene = p_at_gene;
  sol.x.resize(n);
  sol.m_profile.resize(n);
  sol.p_profile.resize(n);

  const double f = hill(p_at_gene, P.h);
  const KernelContext km(D, Complex(P.mu, 0.0));
  for (int i = 0; i < n; ++i) {
    const double x = grid.x(i);
    sol.x[i] = x;
    sol.m_profile[i] = P.alpha_m * f * green(km, x, P.x_M).real();
    sol.p_profile[i] =
        P.alpha_p * P.alpha_m * f *
        profile_integral(P, D, Complex(0.0, 0.0), x).real();
  }

  // Sup of the second-difference residual away from the source node (m has a
  // kink there), the membrane node (p'' jumps), and the walls.
  const int jl = (int)std::lround(P.l / dx);
  double res = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double x = grid.x(i);
    const double lap_m = (sol.m_profile[i - 1] - 2.0 * sol.m_profile[i] +
                          sol.m_profile[i + 1]) / (dx * dx);
    const double lap_p = (sol.p_profile[i - 1] - 2.0 * sol.p_profile[i] +
                          sol.p_profile[i + 1]) / (dx * dx);
    if (std::abs(i - kM) > 1)
      res = std::max(res, std::abs(D * lap_m - P.mu * sol.m_profile[i]));
    if (std::abs(i - jl) > 1)
      res = std::max(res, std::abs(D * lap_p - P.mu * sol.p_profile[i] +
                                   P.alpha_p * cyto_indicator(x, P.l) *
                                       sol.m_profile[i]));
  }
  sol.residual = res;
  return sol;
}

namespace {

// Thomas solve of (mu I - D L_h) u = rhs with ghost-node Neumann rows.
void resolvent_solve(double mu, double D, double dx, std::vector<double>& diag,
                     std::vector<double>& work, const std::vector<double>& rhs,
                     std::vector<double>& u) {
  const int n = (int)rhs.size();
  const double off = -D / (dx * dx);
  const double d0 = mu + 2.0 * D / (dx * dx);
  // rows: [d0, 2*off] at the walls, [off, d0, off] inside
  diag.assign(n, d0);
  work = rhs;
  double up_prev = 2.0 * off;  // superdiagonal of row 0
  for (int i = 1; i < n; ++i) {
    const double lo = (i == n - 1) ? 2.0 * off : off;
    const double w = lo / diag[i - 1];
    diag[i] -= w * up_prev;
    work[i] -= w * work[i - 1];
    up_prev = off;
  }
  u.resize(n);
  u[n - 1] = work[n - 1] / diag[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    const double up = (i == 0) ? 2.0 * off : off;
    u[i] = (work[i] - up * u[i + 1]) / diag[i];
  }
}

}  // namespace

SteadyStateSolution solve_eps_fixed_point(const ModelParams& P, double D,
                                          const SpatialGrid& grid, double tol) {
  if (!(D > 0.0)) throw ConfigError("steady: D must be positive");
  grid.validate_for(P.epsilon);
  const int n = grid.n_nodes;
  const double dx = grid.dx();

  // Discrete source: cosine bump sampled at nodes, rescaled to exact unit
  // trapezoid mass.
  std::vector<double> del(n, 0.0);
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    del[i] = dirac_eps(grid.x(i), P.x_M, P.epsilon);
    mass += del[i] * dx * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
  }
  for (double& v : del) v /= mass;

  // Membrane weight: half at a node sitting exactly on the jump.
  std::vector<double> gw(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double x = grid.x(i);
    gw[i] = std::abs(x - P.l) < 1e-12 ? 0.5 : cyto_indicator(x, P.l);
  }

  std::vector<double> m(n, 0.0), p(n, 0.0), rhs(n), pnew(n), diag, work;
  auto sweep = [&](const std::vector<double>& pin, std::vector<double>& mout,
                   std::vector<double>& pout) {
    for (int i = 0; i < n; ++i)
      rhs[i] = del[i] != 0.0 ? P.alpha_m * hill(pin[i], P.h) * del[i] : 0.0;
    resolvent_solve(P.mu, D, dx, diag, work, rhs, mout);
    for (int i = 0; i < n; ++i) rhs[i] = P.alpha_p * gw[i] * mout[i];
    resolvent_solve(P.mu, D, dx, diag, work, rhs, pout);
  };

  // The sweep is a decreasing map in p with slope up to ~ -5 at the defaults,
  // so a fixed relaxation weight can overshoot; shrink it whenever the
  // fixed-point residual grows and let it recover slowly.
  bool converged = false;
  double w = 0.5, update = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (long it = 0; it < 100000; ++it) {
    sweep(p, m, pnew);
    update = 0.0;
    for (int i = 0; i < n; ++i)
      update = std::max(update, std::abs(pnew[i] - p[i]));
    if (update < tol) {
      converged = true;
      break;
    }
    if (update > prev)
      w = std::max(0.5 * w, 1.0 / 1024.0);
    else
      w = std::min(1.25 * w, 0.5);
    prev = update;
    for (int i = 0; i < n; ++i) p[i] += w * (pnew[i] - p[i]);
  }
  if (!converged)
    throw ConvergenceError("steady: fixed point stalled, last update " +
                           std::to_string(update));
  sweep(p, m, p);  // undamped closing sweep: p-equation residual collapses

  SteadyStateSolution sol;
  sol.D = D;
  sol.x.resize(n);
  for (int i = 0; i < n; ++i) sol.x[i] = grid.x(i);
  sol.m_profile = m;
  sol.p_profile = p;
  const int kM = (int)std::lround(P.x_M / dx);
  sol.p_at_gene = p[kM];

  // Residual through the same discrete operator the solve used.
  auto apply = [&](const std::vector<double>& u, int i) {
    const double lap =
        (i == 0       ? 2.0 * u[1] - 2.0 * u[0]
         : i == n - 1 ? 2.0 * u[n - 2] - 2.0 * u[n - 1]
                      : u[i - 1] - 2.0 * u[i] + u[i + 1]) /
        (dx * dx);
    return P.mu * u[i] - D * lap;
  };
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    res = std::max(res, std::abs(apply(m, i) - P.alpha_m * hill(p[i], P.h) * del[i]));
    res = std::max(res, std::abs(apply(p, i) - P.alpha_p * gw[i] * m[i]));
  }
  sol.residual = res;
  return sol;
}

}  // namespace grn
