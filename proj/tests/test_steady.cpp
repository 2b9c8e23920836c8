#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "grn/errors.hpp"
#include "grn/greens.hpp"
#include "grn/kinetics.hpp"
#include "grn/quadrature.hpp"
#include "grn/steady.hpp"

using namespace grn;

namespace {

double trapz(const std::vector<double>& v, double dx) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < v.size(); ++i) s += 0.5 * (v[i] + v[i + 1]) * dx;
  return s;
}

}  // namespace

TEST_CASE("gene-site value: pinned values across the diffusion range") {
  ModelParams P;
  struct Row {
    double D, p, tol;
  };
  // reference values from an extended-precision evaluation of the same
  // closed-form equations
  const Row rows[] = {
      {1e-4, 0.0049121168228898511, 1e-9},
      {3e-4, 0.84309197160048577, 1e-9},
      {3.1171090272440904e-4, 0.8896731642309845, 1e-10},
      {3.2e-4, 0.91966789271536287, 1e-9},
      {1e-3, 1.7965896108082734, 1e-12},
      {7.5e-3, 2.8094684860073849, 1e-9},
      {7.884711951130476e-3, 2.8254344122802264, 1e-10},
      {8.4e-3, 2.8449422464597283, 1e-9},
      {5e-2, 3.1424120473773627, 1e-9},
  };
  for (const Row& r : rows)
    CHECK(solve_p_at_gene(P, r.D) == doctest::Approx(r.p).epsilon(r.tol));
}

TEST_CASE("gene-site value solves its fixed-point equation exactly") {
  ModelParams P;
  for (int i = 0; i < 20; ++i) {
    const double D = 1e-7 * std::pow(1e6, i / 19.0);
    const double C = steady_coefficient(P, D);
    const double p = solve_p_at_gene(P, D);
    CHECK(std::abs(p - C * hill(p, P.h)) < 1e-12 * (1.0 + p));
  }
}

TEST_CASE("gene-site value increases with D") {
  ModelParams P;
  double prev = -1.0;
  for (int i = 0; i < 20; ++i) {
    const double D = 1e-7 * std::pow(1e6, i / 19.0);
    const double p = solve_p_at_gene(P, D);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("well-mixed limit of the coupling coefficient") {
  // D -> infinity: kernels flatten to 1/mu, so C -> alpha_p alpha_m (1-l)/mu^2.
  ModelParams P;
  const double limit = P.alpha_p * P.alpha_m * (1.0 - P.l) / (P.mu * P.mu);
  CHECK(steady_coefficient(P, 1e6) == doctest::Approx(limit).epsilon(1e-6));
}

TEST_CASE("tiny D: gene-site value collapses but stays well-defined") {
  ModelParams P;
  const double p = solve_p_at_gene(P, 1e-7);
  CHECK(p >= 0.0);
  CHECK(p < 1e-100);
  CHECK(steady_coefficient(P, 1e-7) < 1e-100);
}

TEST_CASE("steady solver rejects nonpositive D") {
  ModelParams P;
  CHECK_THROWS_AS(solve_p_at_gene(P, 0.0), ConfigError);
  CHECK_THROWS_AS(solve_p_at_gene(P, -1e-3), ConfigError);
}

TEST_CASE("reconstructed profiles: pinned table at D = 1e-3") {
  ModelParams P;
  const SpatialGrid grid(2001);
  const double p_gene = solve_p_at_gene(P, 1e-3);
  const SteadyStateSolution sol = reconstruct_profiles(P, 1e-3, p_gene, grid);
  REQUIRE(sol.x.size() == 2001);

  struct Row {
    int i;
    double m, p;
  };
  const Row rows[] = {
      {0, 5.3548607373000365, 1.557123211118384},
      {200, 6.1783724622848463, 1.7965896108082734},
      {500, 2.7174367732634769, 3.2597637352358538},
      {1000, 0.69370018337298534, 12.091198943076174},
      {1500, 0.18702022119821416, 12.690732607947916},
      {2000, 0.089335777384235339, 9.6444181454807958},
  };
  for (const Row& r : rows) {
    CHECK(sol.m_profile[r.i] == doctest::Approx(r.m).epsilon(1e-12));
    CHECK(sol.p_profile[r.i] == doctest::Approx(r.p).epsilon(1e-12));
  }
  CHECK(sol.p_profile[200] == doctest::Approx(sol.p_at_gene).epsilon(1e-10));
  CHECK(sol.residual < 1e-5);

  // total mRNA has the exact closed form alpha_m f(p*) / mu
  const double mass_m = P.alpha_m * hill(p_gene, P.h) / P.mu;
  CHECK(trapz(sol.m_profile, grid.dx()) ==
        doctest::Approx(mass_m).epsilon(1e-5));
  CHECK(trapz(sol.p_profile, grid.dx()) ==
        doctest::Approx(8.3731410389355284).epsilon(1e-7));
}

TEST_CASE("reconstructed mRNA has its derivative kink at the gene site") {
  ModelParams P;
  const SpatialGrid grid(2001);
  const double D = 1e-3;
  const SteadyStateSolution sol =
      reconstruct_profiles(P, D, solve_p_at_gene(P, D), grid);
  const int kM = 200;
  auto d2 = [&](int i) {
    return std::abs(sol.m_profile[i + 1] - 2.0 * sol.m_profile[i] +
                    sol.m_profile[i - 1]);
  };
  CHECK(d2(kM) > 100.0 * d2(kM + 5));
  CHECK(d2(kM) > 100.0 * d2(kM - 5));
}

TEST_CASE("reconstructed profiles match direct quadrature of the kernels") {
  ModelParams P;
  const double D = 1e-3;
  const SpatialGrid grid(2001);
  const double p_gene = solve_p_at_gene(P, D);
  const SteadyStateSolution sol = reconstruct_profiles(P, D, p_gene, grid);
  const double f = hill(p_gene, P.h);
  const KernelContext k(D, Complex(P.mu, 0.0));
  for (int i = 0; i <= 2000; i += 100) {
    const double x = grid.x(i);
    const double m_oracle = P.alpha_m * f * green(k, x, P.x_M).real();
    const double p_oracle =
        P.alpha_p * P.alpha_m * f *
        simpson_split([&](double y) { return green(k, x, y) * green(k, y, P.x_M); },
                      P.l, 1.0, {x}, 4000)
            .real();
    CHECK(std::abs(sol.m_profile[i] - m_oracle) < 1e-8);
    CHECK(std::abs(sol.p_profile[i] - p_oracle) < 1e-8);
  }
}

TEST_CASE("strong localization of mRNA at tiny D") {
  ModelParams P;
  const SpatialGrid grid(2001);
  const double D = 1e-6;
  const SteadyStateSolution sol =
      reconstruct_profiles(P, D, solve_p_at_gene(P, D), grid);
  const int kM = 200, off = 100;  // 0.05 away from the gene site
  CHECK(sol.m_profile[kM] > 0.0);
  CHECK(sol.m_profile[kM + off] / sol.m_profile[kM] < 1e-3);
  CHECK(sol.m_profile[kM - off] / sol.m_profile[kM] < 1e-3);
  CHECK(*std::max_element(sol.p_profile.begin(), sol.p_profile.end()) < 1e-12);
}

TEST_CASE("fast-diffusion profiles are nearly flat") {
  ModelParams P;
  const SpatialGrid grid(2001);
  const double D = 100.0;
  const SteadyStateSolution sol =
      reconstruct_profiles(P, D, solve_p_at_gene(P, D), grid);
  const auto [pmin, pmax] =
      std::minmax_element(sol.p_profile.begin(), sol.p_profile.end());
  CHECK((*pmax - *pmin) / *pmax < 1e-3);
  const auto [mmin, mmax] =
      std::minmax_element(sol.m_profile.begin(), sol.m_profile.end());
  CHECK((*mmax - *mmin) / *mmax < 2e-2);  // m keeps the source footprint
}

TEST_CASE("regularized fixed point approaches the point-source limit") {
  ModelParams P;
  const double D = 1e-3;
  const SpatialGrid grid(4001);
  const SteadyStateSolution eps_sol = solve_eps_fixed_point(P, D, grid, 1e-12);
  CHECK(eps_sol.residual < 1e-8);

  const SteadyStateSolution lim =
      reconstruct_profiles(P, D, solve_p_at_gene(P, D), grid);
  double gap = 0.0;
  for (int i = 0; i < grid.n_nodes; ++i)
    gap = std::max(gap, std::abs(eps_sol.p_profile[i] - lim.p_profile[i]));
  CHECK(gap < 1e-4);  // O(eps^2) + O(dx^2), eps = 1e-3
  CHECK(eps_sol.p_at_gene ==
        doctest::Approx(lim.p_at_gene).epsilon(1e-4));
}

TEST_CASE("regularized fixed point: error shrinks with the source width") {
  ModelParams P;
  const SpatialGrid grid(16001);
  const double D = 1e-3;
  const double p_lim = solve_p_at_gene(P, D);
  std::vector<double> err;
  for (const double eps : {1e-3, 5e-4, 2.5e-4}) {
    ModelParams Q = P;
    Q.epsilon = eps;
    const SteadyStateSolution s = solve_eps_fixed_point(Q, D, grid, 1e-12);
    err.push_back(std::abs(s.p_at_gene - p_lim));
  }
  CHECK(err[1] < 0.7 * err[0]);
  CHECK(err[2] < 0.7 * err[1]);
}

TEST_CASE("regularized fixed point validates its grid") {
  ModelParams P;  // epsilon = 1e-3 needs dx <= 5e-4
  CHECK_THROWS_AS(solve_eps_fixed_point(P, 1e-3, SpatialGrid(201)),
                  ConfigError);
}
