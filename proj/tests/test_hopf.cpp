#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "grn/errors.hpp"
#include "grn/greens.hpp"
#include "grn/hopf.hpp"
#include "grn/kinetics.hpp"
#include "grn/quadrature.hpp"
#include "grn/steady.hpp"

using namespace grn;

namespace {

// pinned independently computed values (multiprecision quadrature + root
// finding on the closed-form characteristic function)
constexpr double kD1 = 3.1171090272440904e-4;
constexpr double kOmega1 = 0.017641153735087938;
constexpr double kD2 = 7.884711951130476e-3;
constexpr double kOmega2 = 0.05123459250332624;
const Complex kDlam1{70.61257337894982, 47.15865790123312};
const Complex kDlam2{-0.6811825520702728, 1.695484533888753};
const Complex kG1_1{0.08643154452, 0.07517977422};
constexpr double kG2_1 = 0.6927802089;
const Complex kW2_1{-0.04794124289, -0.02995339464};
constexpr double kWt2_1 = -0.3035926917;
const Complex kI_1{-205.8487996, 75.78396793};
const Complex kB_1{-0.04184574064, -0.01549459627};
const Complex kG1_2{-3.170142755, 8.95904943};
constexpr double kG2_2 = 255.7917937;
const Complex kW2_2{-0.03175719231, 0.2011405834};
constexpr double kWt2_2 = 1.751728692;
const Complex kI_2{-0.3407592203, 0.364798224};
const Complex kB_2{-0.007937507925, -0.02056865473};

void check_close(Complex z, Complex want, double rel) {
  CAPTURE(z.real());
  CAPTURE(z.imag());
  CAPTURE(want.real());
  CAPTURE(want.imag());
  CHECK(std::abs(z - want) <= rel * std::abs(want));
}

const HopfPoint& lower_point() {
  static const HopfPoint hp = find_critical(ModelParams{}, 1e-4, 1e-3);
  return hp;
}

const HopfPoint& upper_point() {
  static const HopfPoint hp = find_critical(ModelParams{}, 5e-3, 2e-2);
  return hp;
}

const NormalFormIntermediates& lower_nfi() {
  static const NormalFormIntermediates nfi =
      normal_form_intermediates(ModelParams{}, lower_point());
  return nfi;
}

const NormalFormIntermediates& upper_nfi() {
  static const NormalFormIntermediates nfi =
      normal_form_intermediates(ModelParams{}, upper_point());
  return nfi;
}

// Resolvent of (shift - D d^2/dx^2) with ghost-node Neumann walls, so the
// discretization matches the time stepper's spatial operator exactly.
template <class T>
std::vector<T> resolve_neumann(int N, double D, T shift, std::vector<T> rhs) {
  const double dx = 1.0 / (N - 1);
  const double r = D / (dx * dx);
  std::vector<T> diag(N, shift + T(2.0 * r));
  std::vector<T> up(N - 1, T(-r));
  std::vector<T> lo(N - 1, T(-r));
  up[0] = T(-2.0 * r);
  lo[N - 2] = T(-2.0 * r);
  for (int i = 1; i < N; ++i) {
    const T w = lo[i - 1] / diag[i - 1];
    diag[i] -= w * up[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<T> out(N);
  out[N - 1] = rhs[N - 1] / diag[N - 1];
  for (int i = N - 2; i >= 0; --i)
    out[i] = (rhs[i] - up[i] * out[i + 1]) / diag[i];
  return out;
}

// Gene-site value of R[g R delta] on an N-node grid; the continuum limit is
// the kernel integral behind the resonant profiles.
template <class T>
T gene_kernel_discrete(const ModelParams& P, double D, T shift_total, int N) {
  const double dx = 1.0 / (N - 1);
  const int iM = (int)std::llround(P.x_M * (N - 1));
  const int jl = (int)std::llround(P.l * (N - 1));
  std::vector<T> rhs(N, T(0.0));
  rhs[iM] = T(1.0 / dx);
  std::vector<T> w = resolve_neumann(N, D, shift_total, rhs);
  for (int j = 0; j < N; ++j) {
    const double gw = j < jl ? 0.0 : (j == jl ? 0.5 : 1.0);
    w[j] *= T(gw);
  }
  return resolve_neumann(N, D, shift_total, w)[iM];
}

}  // namespace

TEST_CASE("critical diffusivities and frequencies") {
  const HopfPoint& h1 = lower_point();
  CHECK(h1.D_c == doctest::Approx(kD1).epsilon(1e-9));
  CHECK(h1.omega_c == doctest::Approx(kOmega1).epsilon(1e-9));
  CHECK(h1.j == 1);
  CHECK(h1.nu == +1);
  check_close(h1.dlambda_dD, kDlam1, 1e-9);
  check_close(h1.a, h1.dlambda_dD, 0.0);  // identified coefficients
  CHECK(h1.period() == doctest::Approx(2.0 * M_PI / kOmega1).epsilon(1e-9));

  const HopfPoint& h2 = upper_point();
  CHECK(h2.D_c == doctest::Approx(kD2).epsilon(1e-9));
  CHECK(h2.omega_c == doctest::Approx(kOmega2).epsilon(1e-9));
  CHECK(h2.j == 2);
  CHECK(h2.nu == -1);
  check_close(h2.dlambda_dD, kDlam2, 1e-9);
}

TEST_CASE("bracket placement does not move the critical point") {
  const HopfPoint hp = find_critical(ModelParams{}, 2e-4, 8e-4);
  CHECK(hp.D_c == doctest::Approx(lower_point().D_c).epsilon(1e-9));
  CHECK(hp.omega_c == doctest::Approx(lower_point().omega_c).epsilon(1e-8));
}

TEST_CASE("brackets without a stability change are rejected") {
  const ModelParams P;
  CHECK_THROWS_AS(find_critical(P, 1e-6, 1e-5), BracketError);   // all stable
  CHECK_THROWS_AS(find_critical(P, 1e-3, 5e-3), BracketError);   // all unstable
  CHECK_THROWS_AS(find_critical(P, 0.0, 1e-3), ConfigError);
  CHECK_THROWS_AS(find_critical(P, 1e-3, 1e-4), ConfigError);
}

TEST_CASE("resonant profile values at the gene site") {
  const NormalFormIntermediates& n1 = lower_nfi();
  check_close(n1.G1_at_xM, kG1_1, 1e-8);
  CHECK(n1.G2_at_xM == doctest::Approx(kG2_1).epsilon(1e-8));
  check_close(n1.w2_at_xM, kW2_1, 1e-8);
  CHECK(n1.wtilde2_at_xM == doctest::Approx(kWt2_1).epsilon(1e-8));
  check_close(n1.normalization, kI_1, 1e-8);

  const NormalFormIntermediates& n2 = upper_nfi();
  check_close(n2.G1_at_xM, kG1_2, 1e-8);
  CHECK(n2.G2_at_xM == doctest::Approx(kG2_2).epsilon(1e-8));
  check_close(n2.w2_at_xM, kW2_2, 1e-8);
  CHECK(n2.wtilde2_at_xM == doctest::Approx(kWt2_2).epsilon(1e-8));
  check_close(n2.normalization, kI_2, 1e-8);

  // the adjoint gene value is the conjugate reciprocal of the inner product
  check_close(n1.xi1_star_at_xM, std::conj(1.0 / n1.normalization), 1e-14);
  CHECK(std::abs(n1.normalization * std::conj(n1.xi1_star_at_xM) - 1.0) <
        1e-14);
}

TEST_CASE("normalization integral is stable under panel refinement") {
  const ModelParams P;
  const HopfPoint& hp = lower_point();
  const double D = hp.D_c;
  const double pstar = solve_p_at_gene(P, D);
  const double f1 = hill_derivs(pstar, P.h).f1;
  const double apam = P.alpha_p * P.alpha_m;
  const Complex lamc(0.0, hp.omega_c);
  const KernelContext kplus(D, Complex(P.mu, hp.omega_c));
  const KernelContext kminus(D, Complex(P.mu, -hp.omega_c));
  auto integrand = [&](double x) -> Complex {
    const Complex xi1 = P.alpha_m * f1 * green(kplus, x, P.x_M);
    const Complex xi2 = apam * f1 * profile_integral(P, D, lamc, x);
    const Complex eta1 = apam * f1 * profile_integral(P, D, -lamc, x);
    const Complex eta2 = P.alpha_m * f1 * green(kminus, x, P.x_M);
    return xi1 * std::conj(eta1) + xi2 * std::conj(eta2);
  };
  const Complex refined = simpson_split(integrand, 0.0, 1.0, {P.x_M, P.l}, 40000);
  check_close(lower_nfi().normalization, refined, 1e-10);
}

TEST_CASE("resonant profiles agree with a direct boundary-value solve") {
  const ModelParams P;
  const double apam = P.alpha_p * P.alpha_m;
  const int N = 4001;

  for (int which : {1, 2}) {
    CAPTURE(which);
    const HopfPoint& hp = which == 1 ? lower_point() : upper_point();
    const NormalFormIntermediates& nfi = which == 1 ? lower_nfi() : upper_nfi();
    const double pstar = solve_p_at_gene(P, hp.D_c);
    const HillDerivs hd = hill_derivs(pstar, P.h);

    const Complex shift2(P.mu, 2.0 * hp.omega_c);  // mu + 2 lambda_c
    const Complex K2 = gene_kernel_discrete<Complex>(P, hp.D_c, shift2, N);
    const Complex w2_disc =
        0.5 * apam * hd.f2 * K2 / (1.0 - apam * hd.f1 * K2);
    check_close(nfi.w2_at_xM, w2_disc, 1e-4);

    const double K0 = gene_kernel_discrete<double>(P, hp.D_c, P.mu, N);
    const double wt2_disc = apam * hd.f2 * K0 / (1.0 - apam * hd.f1 * K0);
    CHECK(nfi.wtilde2_at_xM == doctest::Approx(wt2_disc).epsilon(1e-4));
  }
}

TEST_CASE("cubic coefficient and criticality at both points") {
  const ModelParams P;
  HopfPoint h1 = lower_point();
  const Complex b1 = hopf_coefficient_b(P, h1, lower_nfi());
  check_close(b1, kB_1, 1e-8);
  CHECK(h1.b == b1);
  CHECK(h1.classification == Criticality::supercritical);

  HopfPoint h2 = upper_point();
  const Complex b2 = hopf_coefficient_b(P, h2, upper_nfi());
  check_close(b2, kB_2, 1e-8);
  CHECK(h2.classification == Criticality::supercritical);

  // the formula is a plain recombination of the intermediates
  const double pstar = solve_p_at_gene(P, h1.D_c);
  const HillDerivs hd = hill_derivs(pstar, P.h);
  const NormalFormIntermediates& n1 = lower_nfi();
  const Complex manual =
      P.alpha_m * (hd.f2 * (n1.w2_at_xM + n1.wtilde2_at_xM) + 0.5 * hd.f3) *
      std::conj(n1.xi1_star_at_xM);
  check_close(b1, manual, 1e-14);
}

TEST_CASE("one-call critical point equals the composed pipeline") {
  const ModelParams P;
  const HopfPoint hp = critical_point(P, 1e-4, 1e-3);
  HopfPoint manual = lower_point();
  hopf_coefficient_b(P, manual, lower_nfi());
  CHECK(hp.D_c == manual.D_c);
  CHECK(hp.omega_c == manual.omega_c);
  CHECK(hp.b == manual.b);
  CHECK(hp.j == manual.j);
  CHECK(hp.classification == manual.classification);
}

TEST_CASE("amplitude equation: closed-form modulus and guards") {
  // d|A|^2/dT = g|A|^2 + 2 Re(b) |A|^4 integrates in closed form
  auto modulus_sq = [](double rho0, double g, double beta, double T) {
    return 1.0 / ((1.0 / rho0 + 2.0 * beta / g) * std::exp(-g * T) -
                  2.0 * beta / g);
  };

  AmplitudeParams decay;
  decay.a = {-0.5, 0.3};
  decay.b = {-1.0, 0.2};
  decay.nu = +1;
  decay.A0 = {1e-2, 0.0};
  const AmplitudeParams dres = amplitude_evolve(decay, 10.0, 1e-3);
  REQUIRE(dres.T.size() == dres.A.size());
  CHECK(dres.T.front() == 0.0);
  CHECK(dres.A.front() == decay.A0);
  CHECK(std::abs(dres.T.back() - 10.0) <= 1e-3 * (1.0 + 1e-12));
  {
    const double g = 2.0 * (decay.a * (double)decay.nu).real();
    const double want =
        std::sqrt(modulus_sq(std::norm(decay.A0), g, decay.b.real(), 10.0));
    CHECK(std::abs(dres.A.back()) == doctest::Approx(want).epsilon(1e-8));
  }

  AmplitudeParams grow;
  grow.a = {0.5, 1.0};
  grow.b = {-2.0, 0.7};
  grow.nu = +1;
  grow.A0 = {1e-2, 0.0};
  const AmplitudeParams gres = amplitude_evolve(grow, 60.0, 1e-3);
  const double Aeq = std::sqrt(0.5 / 2.0);  // sqrt(-Re(a nu)/Re b)
  CHECK(std::abs(gres.A.back()) == doctest::Approx(Aeq).epsilon(1e-10));
  {
    const double g = 2.0 * (grow.a * (double)grow.nu).real();
    const double want =
        std::sqrt(modulus_sq(std::norm(grow.A0), g, grow.b.real(), 20.0));
    const size_t i = (size_t)std::llround(20.0 / 1e-3);
    CHECK(std::abs(gres.A[i]) == doctest::Approx(want).epsilon(1e-8));
  }

  // nu = -1 turns the growing side into decay
  AmplitudeParams flip = grow;
  flip.nu = -1;
  const AmplitudeParams fres = amplitude_evolve(flip, 10.0, 1e-3);
  CHECK(std::abs(fres.A.back()) < std::abs(flip.A0) * 1e-2);

  AmplitudeParams blow = grow;
  blow.b = {+2.0, 0.0};
  CHECK_THROWS_AS(amplitude_evolve(blow, 60.0, 1e-3), DivergenceError);

  CHECK_THROWS_AS(amplitude_evolve(grow, -1.0, 1e-3), ConfigError);
  CHECK_THROWS_AS(amplitude_evolve(grow, 10.0, 0.0), ConfigError);
  AmplitudeParams stiff = grow;
  stiff.a = {200.0, 0.0};
  CHECK_THROWS_AS(amplitude_evolve(stiff, 1.0, 1e-3), ConfigError);
}

TEST_CASE("scaling-report offsets are validated before any simulation") {
  const ModelParams P;
  HopfPoint hp;
  hp.D_c = 1e-3;
  hp.omega_c = 0.02;
  hp.nu = +1;
  CHECK_THROWS_AS(predict_vs_simulate(P, hp, {}), ConfigError);
  CHECK_THROWS_AS(predict_vs_simulate(P, hp, {0.0}), ConfigError);
  CHECK_THROWS_AS(predict_vs_simulate(P, hp, {-1e-5}), ConfigError);
  CHECK_THROWS_AS(predict_vs_simulate(P, hp, {2e-4}), ConfigError);
}
