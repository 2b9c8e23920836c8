#include "grn/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "grn/greens.hpp"
#include "grn/kinetics.hpp"
#include "grn/quadrature.hpp"
#include "grn/simulate.hpp"
#include "grn/steady.hpp"

namespace grn {

std::string to_string(Criticality c) {
  return c == Criticality::supercritical ? "supercritical" : "subcritical";
}

double HopfPoint::period() const { return 2.0 * M_PI / omega_c; }

HopfPoint find_critical(const ModelParams& P, double D_lo, double D_hi) {
  if (!(D_lo > 0.0) || !(D_hi > D_lo))
    throw ConfigError("find_critical: need 0 < D_lo < D_hi");

  // Sign of max Re over the spectrum; after the first full scan the crossing
  // root is continued by Newton polish, with a full rescan as fallback.
  std::optional<Complex> track;
  auto eval = [&](double D) -> double {
    const CharacteristicContext ctx = CharacteristicContext::make(P, D);
    if (track) {
      Complex lam = *track;
      if (polish_root(ctx, lam) && lam.real() > -P.mu &&
          std::abs(lam.imag()) <= RootSet::box_im_hi &&
          lam.real() >= RootSet::box_re_lo && lam.real() <= RootSet::box_re_hi) {
        track = lam.imag() < 0.0 ? std::conj(lam) : lam;
        return track->real();
      }
    }
    const RootSet rs = find_roots(ctx);
    if (rs.roots.empty()) return -std::numeric_limits<double>::infinity();
    track = rs.roots.front().lam;
    return track->real();
  };

  double lo = D_lo, hi = D_hi;
  bool lo_pos = eval(lo) > 0.0;
  const bool hi_pos = eval(hi) > 0.0;
  if (lo_pos == hi_pos)
    throw BracketError("find_critical: max Re does not change sign over the bracket");
  while (hi - lo > 1e-10 * (0.5 * (hi + lo))) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if ((eval(mid) > 0.0) == lo_pos)
      lo = mid;
    else
      hi = mid;
  }

  HopfPoint hp;
  hp.D_c = 0.5 * (lo + hi);
  const CharacteristicContext ctx = CharacteristicContext::make(P, hp.D_c);
  const RootSet rs = find_roots(ctx);
  if (rs.roots.empty())
    throw ConvergenceError("find_critical: spectrum empty at the bracket limit");
  const Complex lamc = rs.roots.front().lam;
  if (std::abs(lamc.real()) > 1e-10)
    throw ConvergenceError("find_critical: crossing root not on the axis");
  hp.omega_c = lamc.imag();
  const TransversalityData td = dlambda_dD(ctx, lamc);
  hp.dlambda_dD = td.dlambda_dD;
  hp.a = td.dlambda_dD;  // amplitude-equation linear coefficient
  if (td.dlambda_dD.real() == 0.0)
    throw ConvergenceError("find_critical: transversality derivative vanished");
  hp.nu = td.dlambda_dD.real() > 0.0 ? +1 : -1;
  hp.j = hp.nu > 0 ? 1 : 2;
  return hp;
}

NormalFormIntermediates normal_form_intermediates(const ModelParams& P,
                                                  const HopfPoint& hp) {
  const CharacteristicContext ctx = CharacteristicContext::make(P, hp.D_c);
  const HillDerivs hd = hill_derivs(ctx.p_at_gene, P.h);
  const double apam = P.alpha_p * P.alpha_m;
  const double D = hp.D_c;
  const Complex lamc(0.0, hp.omega_c);

  NormalFormIntermediates nfi;
  nfi.G1_at_xM = kernel_integral(P, D, 2.0 * lamc);
  nfi.G2_at_xM = kernel_integral(P, D, Complex(0.0, 0.0)).real();

  const Complex den1 = 1.0 - apam * hd.f1 * nfi.G1_at_xM;
  const double den2 = 1.0 - apam * hd.f1 * nfi.G2_at_xM;
  if (std::abs(den1) < 1e-6 || std::abs(den2) < 1e-6)
    throw ConvergenceError(
        "normal form: resonant denominator vanished (2 lambda_c or 0 in the spectrum)");
  nfi.w2_at_xM = 0.5 * apam * hd.f2 * nfi.G1_at_xM / den1;
  nfi.wtilde2_at_xM = apam * hd.f2 * nfi.G2_at_xM / den2;

  // <xi, eta> with the eigenfunction pair at +lambda_c and the adjoint pair
  // at -lambda_c; integrand kinks at x_M and the membrane.
  const KernelContext kplus(D, Complex(P.mu, hp.omega_c));
  const KernelContext kminus(D, Complex(P.mu, -hp.omega_c));
  auto integrand = [&](double x) -> Complex {
    const Complex xi1 = P.alpha_m * hd.f1 * green(kplus, x, P.x_M);
    const Complex xi2 = apam * hd.f1 * profile_integral(P, D, lamc, x);
    const Complex eta1 = apam * hd.f1 * profile_integral(P, D, -lamc, x);
    const Complex eta2 = P.alpha_m * hd.f1 * green(kminus, x, P.x_M);
    return xi1 * std::conj(eta1) + xi2 * std::conj(eta2);
  };
  const Complex I = simpson_split(integrand, 0.0, 1.0, {P.x_M, P.l}, 10000);
  nfi.normalization = I;
  nfi.xi1_star_at_xM = std::conj(1.0 / I);
  return nfi;
}

Complex hopf_coefficient_b(const ModelParams& P, HopfPoint& hp,
                           const NormalFormIntermediates& nfi) {
  const double pstar = solve_p_at_gene(P, hp.D_c);
  const HillDerivs hd = hill_derivs(pstar, P.h);
  const Complex b = P.alpha_m *
                    (hd.f2 * (nfi.w2_at_xM + nfi.wtilde2_at_xM) + 0.5 * hd.f3) *
                    std::conj(nfi.xi1_star_at_xM);
  hp.b = b;
  hp.classification =
      b.real() < 0.0 ? Criticality::supercritical : Criticality::subcritical;
  return b;
}

HopfPoint critical_point(const ModelParams& P, double D_lo, double D_hi) {
  HopfPoint hp = find_critical(P, D_lo, D_hi);
  const NormalFormIntermediates nfi = normal_form_intermediates(P, hp);
  hopf_coefficient_b(P, hp, nfi);
  return hp;
}

AmplitudeParams amplitude_evolve(AmplitudeParams ap, double T_end, double dT) {
  if (!(T_end > 0.0) || !(dT > 0.0))
    throw ConfigError("amplitude: T_end and dT must be positive");
  if (std::abs(ap.a) * dT >= 0.1)
    throw ConfigError("amplitude: dT too large for the linear rate");
  const Complex anu = ap.a * (double)ap.nu;
  auto f = [&](Complex A) { return anu * A + ap.b * A * std::norm(A); };
  const long nsteps = (long)std::ceil(T_end / dT - 1e-9);
  ap.T.assign(1, 0.0);
  ap.A.assign(1, ap.A0);
  Complex A = ap.A0;
  for (long s = 1; s <= nsteps; ++s) {
    const Complex k1 = f(A);
    const Complex k2 = f(A + 0.5 * dT * k1);
    const Complex k3 = f(A + 0.5 * dT * k2);
    const Complex k4 = f(A + dT * k3);
    A += dT / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (std::abs(A) > 1e6)
      throw DivergenceError("amplitude: |A| blew past 1e6");
    ap.T.push_back(s * dT);
    ap.A.push_back(A);
  }
  return ap;
}

namespace {

// Half peak-to-trough of a series over the window t >= t0, plus mean spacing
// of its strict local maxima.
void window_amplitude(const std::vector<double>& t, const std::vector<double>& v,
                      double t0, double& amp, double& period) {
  size_t first = 0;
  while (first < t.size() && t[first] < t0 - 1e-12) ++first;
  double lo = v[first], hi = v[first];
  std::vector<size_t> peaks;
  for (size_t i = first; i < v.size(); ++i) {
    lo = std::min(lo, v[i]);
    hi = std::max(hi, v[i]);
    if (i > first && i + 1 < v.size() && v[i] > v[i - 1] && v[i] > v[i + 1])
      peaks.push_back(i);
  }
  amp = 0.5 * (hi - lo);
  period = peaks.size() >= 2
               ? (t[peaks.back()] - t[peaks.front()]) / (double)(peaks.size() - 1)
               : 0.0;
}

}  // namespace

AmplitudeScalingReport predict_vs_simulate(const ModelParams& P,
                                           const HopfPoint& hp,
                                           const std::vector<double>& offsets) {
  if (offsets.empty()) throw ConfigError("predict_vs_simulate: no offsets");
  for (double off : offsets)
    if (!(off > 0.0) || off > 0.1 * hp.D_c * (1.0 + 1e-12))
      throw ConfigError("predict_vs_simulate: offsets must lie in (0, 0.1 D_c]");

  AmplitudeScalingReport rep;
  rep.period_ref = hp.period();
  const SpatialGrid grid(2001);

  for (double off : offsets) {
    rep.delta.push_back(off);

    SimOptions og;
    og.sample_every = 5.0;
    const double t_grow = 4e4;
    const Trajectory tg =
        simulate(P, hp.D_c + hp.nu * off, t_grow, grid, og);
    double amp = 0.0, per = 0.0;
    window_amplitude(tg.t, tg.P, 0.75 * t_grow, amp, per);
    rep.amplitude.push_back(amp);
    rep.period.push_back(per);

    SimOptions od;
    od.sample_every = 10.0;
    const Trajectory td =
        simulate(P, hp.D_c - hp.nu * off, 6e4, grid, od);
    rep.decay_steady.push_back(classify(td, 0.5).kind ==
                               AttractorClass::Kind::steady);
  }

  // least-squares slope of ln(amplitude) against ln(delta)
  const size_t k = rep.delta.size();
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs(k), ys(k);
  for (size_t i = 0; i < k; ++i) {
    xs[i] = std::log(rep.delta[i]);
    ys[i] = std::log(std::max(rep.amplitude[i], 1e-300));
    sx += xs[i];
    sy += ys[i];
  }
  sx /= (double)k;
  sy /= (double)k;
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < k; ++i) {
    num += (xs[i] - sx) * (ys[i] - sy);
    den += (xs[i] - sx) * (xs[i] - sx);
  }
  rep.exponent = den > 0.0 ? num / den : 0.0;
  return rep;
}

}  // namespace grn
