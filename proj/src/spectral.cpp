#include "grn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grn/errors.hpp"
#include "grn/kinetics.hpp"
#include "grn/steady.hpp"

namespace grn {

CharacteristicContext CharacteristicContext::make(const ModelParams& P,
                                                  double D) {
  CharacteristicContext ctx;
  ctx.D = D;
  ctx.params = P;
  ctx.p_at_gene = solve_p_at_gene(P, D);
  ctx.fprime_at_gene = hill_derivs(ctx.p_at_gene, P.h).f1;
  return ctx;
}

namespace {

Complex theta_of(const CharacteristicContext& ctx, Complex lam) {
  bool zero = false;
  const Complex th = principal_sqrt((ctx.params.mu + lam) / ctx.D, &zero);
  if (zero) throw SingularKernelError("char_fn: lambda = -mu is a branch point");
  return th;
}

// T1 = apam f' cosh^2(theta x_M) V(theta), V = theta(1-l)/2 + sinh(2theta(1-l))/4
// T2 = theta D (mu+lambda) sinh^2 theta
void char_terms(const CharacteristicContext& ctx, Complex lam, Complex th,
                Complex& T1, Complex& T2) {
  const ModelParams& P = ctx.params;
  const Complex ch = std::cosh(th * P.x_M);
  const Complex V = th * (1.0 - P.l) * 0.5 +
                    std::sinh(2.0 * th * (1.0 - P.l)) * 0.25;
  const Complex sh = std::sinh(th);
  T1 = P.alpha_p * P.alpha_m * ctx.fprime_at_gene * ch * ch * V;
  T2 = th * ctx.D * (P.mu + lam) * sh * sh;
}

}  // namespace

Complex char_fn(const CharacteristicContext& ctx, Complex lam) {
  Complex T1, T2;
  char_terms(ctx, lam, theta_of(ctx, lam), T1, T2);
  return T1 - T2;
}

double char_scale(const CharacteristicContext& ctx, Complex lam) {
  Complex T1, T2;
  char_terms(ctx, lam, theta_of(ctx, lam), T1, T2);
  return std::max(std::abs(T1), std::abs(T2));
}

Complex char_fn_deriv(const CharacteristicContext& ctx, Complex lam) {
  const ModelParams& P = ctx.params;
  const Complex th = theta_of(ctx, lam);
  const Complex ch = std::cosh(th * P.x_M);
  const Complex sh = std::sinh(th);
  const Complex chf = std::cosh(th);
  const double c = 1.0 - P.l;
  const Complex V = th * c * 0.5 + std::sinh(2.0 * th * c) * 0.25;
  const Complex Vp = c * 0.5 + c * std::cosh(2.0 * th * c) * 0.5;
  // d theta / d lambda = 1/(2 D theta)
  const Complex dT1 = P.alpha_p * P.alpha_m * ctx.fprime_at_gene *
                      (std::sinh(2.0 * th * P.x_M) * P.x_M * V + ch * ch * Vp) /
                      (2.0 * ctx.D * th);
  const Complex dT2 =
      1.5 * ctx.D * th * sh * sh + (P.mu + lam) * sh * chf;
  return dT1 - dT2;
}

namespace detail {

Complex char_fn_theta(const CharacteristicContext& ctx, Complex lam,
                      Complex theta) {
  Complex T1, T2;
  char_terms(ctx, lam, theta, T1, T2);
  return T1 - T2;
}

Complex char_fn_normalized(const CharacteristicContext& ctx, Complex lam) {
  const Complex th = theta_of(ctx, lam);
  const double k =
      ctx.params.alpha_p * ctx.params.alpha_m * ctx.fprime_at_gene /
      (ctx.D * ctx.D);
  return k * Wfun(th, ctx.params) / (th * th * th) - 1.0;
}

Complex char_fn_normalized_deriv(const CharacteristicContext& ctx,
                                 Complex lam) {
  const Complex th = theta_of(ctx, lam);
  const double k =
      ctx.params.alpha_p * ctx.params.alpha_m * ctx.fprime_at_gene /
      (ctx.D * ctx.D);
  return k * (Wprime(th, ctx.params) * th - 3.0 * Wfun(th, ctx.params)) /
         (2.0 * ctx.D * th * th * th * th * th);
}

}  // namespace detail

namespace {

constexpr double kPadReLo = -6.0, kPadReHi = 36.0;
constexpr double kPadIm = 36.0;

bool in_padded_box(Complex z) {
  return z.real() >= kPadReLo && z.real() <= kPadReHi &&
         std::abs(z.imag()) <= kPadIm;
}

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Damped Newton on the normalized characteristic function. Roots live close
// to the origin while |R_n| plateaus at -1 over most of the box, so steps are
// clamped and halved on residual increase or box exit.
bool newton_root(const CharacteristicContext& ctx, Complex seed, Complex& out) {
  Complex lam = seed;
  Complex f = detail::char_fn_normalized(ctx, lam);
  if (!finite(f)) return false;
  for (int it = 0; it < 60; ++it) {
    if (std::abs(f) < 1e-12) {
      out = lam;
      return true;
    }
    const Complex d = detail::char_fn_normalized_deriv(ctx, lam);
    if (!finite(d) || std::abs(d) < 1e-20) return false;
    Complex step = -f / d;
    if (std::abs(step) > 1.0) step /= std::abs(step);
    Complex cand;
    Complex fnew;
    int halvings = 0;
    for (;; ++halvings) {
      cand = lam + step;
      if (in_padded_box(cand)) {
        fnew = detail::char_fn_normalized(ctx, cand);
        if (finite(fnew) && (std::abs(fnew) <= std::abs(f) || halvings >= 8))
          break;
      } else if (halvings >= 8) {
        return false;  // stuck against the wander box
      }
      step *= 0.5;
    }
    lam = cand;
    f = fnew;
  }
  if (std::abs(f) < 1e-12) {
    out = lam;
    return true;
  }
  return false;
}

}  // namespace

bool polish_root(const CharacteristicContext& ctx, Complex& lam) {
  Complex out;
  if (!newton_root(ctx, lam, out)) return false;
  lam = out;
  return true;
}

RootSet find_roots(const CharacteristicContext& ctx) {
  constexpr double step = 0.25;
  constexpr int nre = 161, nim = 141;  // [-5,35] x [0,35]

  std::vector<double> gridval(nre * nim);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nre; ++i) {
    for (int j = 0; j < nim; ++j) {
      const Complex lam(RootSet::box_re_lo + step * i, step * j);
      Complex f;
      try {
        f = detail::char_fn_normalized(ctx, lam);
      } catch (const SingularKernelError&) {
        f = Complex(std::numeric_limits<double>::infinity(), 0.0);
      }
      gridval[i * nim + j] =
          finite(f) ? std::abs(f) : std::numeric_limits<double>::infinity();
    }
  }

  // Seeds: every grid node, plus 5x5 subgrids around grid-local minima of
  // |R_n| (catches roots whose Newton basin misses the coarse lattice).
  std::vector<Complex> seeds;
  seeds.reserve(nre * nim + 2048);
  for (int i = 0; i < nre; ++i)
    for (int j = 0; j < nim; ++j)
      seeds.emplace_back(RootSet::box_re_lo + step * i, step * j);
  for (int i = 0; i < nre; ++i) {
    for (int j = 0; j < nim; ++j) {
      const double v = gridval[i * nim + j];
      if (!std::isfinite(v)) continue;
      bool isMin = true;
      for (int di = -1; di <= 1 && isMin; ++di)
        for (int dj = -1; dj <= 1 && isMin; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int a = i + di, b = j + dj;
          if (a < 0 || a >= nre || b < 0 || b >= nim) continue;
          if (gridval[a * nim + b] < v) isMin = false;
        }
      if (!isMin) continue;
      const Complex center(RootSet::box_re_lo + step * i, step * j);
      for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
          seeds.emplace_back(center.real() + a * step / 4.0,
                             center.imag() + b * step / 4.0);
    }
  }

  std::vector<Complex> found;
#pragma omp parallel
  {
    std::vector<Complex> local;
#pragma omp for schedule(static) nowait
    for (long s = 0; s < (long)seeds.size(); ++s) {
      Complex root;
      if (newton_root(ctx, seeds[s], root)) local.push_back(root);
    }
#pragma omp critical
    found.insert(found.end(), local.begin(), local.end());
  }

  // Fold to the upper half plane, then dedup on a canonical ordering so the
  // result is independent of seed scheduling.
  for (Complex& z : found)
    if (z.imag() < 0.0) z = std::conj(z);
  std::sort(found.begin(), found.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<Complex> reps;
  for (const Complex& z : found) {
    bool dup = false;
    for (const Complex& r : reps)
      if (std::abs(z - r) <= 1e-6) {
        dup = true;
        break;
      }
    if (!dup) reps.push_back(z);
  }

  RootSet rs;
  for (const Complex& z : reps) {
    if (z.real() <= -ctx.params.mu) continue;  // outside equivalence region
    if (z.real() < RootSet::box_re_lo || z.real() > RootSet::box_re_hi ||
        z.imag() > RootSet::box_im_hi)
      continue;
    Root r;
    r.lam = z;
    r.residual = std::abs(char_fn(ctx, z));
    r.Rprime = char_fn_deriv(ctx, z);
    rs.roots.push_back(r);
  }
  std::sort(rs.roots.begin(), rs.roots.end(), [](const Root& a, const Root& b) {
    return a.lam.real() != b.lam.real() ? a.lam.real() > b.lam.real()
                                        : a.lam.imag() < b.lam.imag();
  });
  return rs;
}

double max_real_part(const CharacteristicContext& ctx) {
  const RootSet rs = find_roots(ctx);
  if (rs.roots.empty()) return -std::numeric_limits<double>::infinity();
  return rs.roots.front().lam.real();
}

double dpstar_dD(const ModelParams& P, double D) {
  const double p = solve_p_at_gene(P, D);
  const double th = std::sqrt(P.mu / D);
  const double c = 1.0 - P.l;
  // B = (1-l)/2 + sinh(2 theta c)/(4 theta); B'/B in overflow-free form
  const double u = std::exp(-4.0 * th * c);
  const double e2 = std::exp(-2.0 * th * c);
  const double BpB = (th * c * (1.0 + u) - 0.5 * (1.0 - u)) /
                     (2.0 * th * th * c * e2 + 0.5 * th * (1.0 - u));
  const double logCp =
      -1.0 / D -
      th / (2.0 * D) *
          (2.0 * P.x_M * std::tanh(th * P.x_M) + BpB - 2.0 / std::tanh(th));
  const double C = p * (1.0 + ipow(p, P.h));  // C = p / f(p)
  return C * logCp / (1.0 + (P.h + 1) * ipow(p, P.h));
}

TransversalityData dlambda_dD(const CharacteristicContext& ctx, Complex lam) {
  const ModelParams& P = ctx.params;
  const Complex th = theta_of(ctx, lam);
  const Complex ch = std::cosh(th * P.x_M);
  const Complex sh = std::sinh(th);
  const double c = 1.0 - P.l;
  const Complex V = th * c * 0.5 + std::sinh(2.0 * th * c) * 0.25;
  const Complex Vp = c * 0.5 + c * std::cosh(2.0 * th * c) * 0.5;
  const double pD = dpstar_dD(P, ctx.D);
  const HillDerivs hd = hill_derivs(ctx.p_at_gene, P.h);
  const double apam = P.alpha_p * P.alpha_m;
  const Complex dthdD = -th / (2.0 * ctx.D);
  const Complex dT1 =
      apam * (hd.f2 * pD * ch * ch * V +
              hd.f1 * (std::sinh(2.0 * th * P.x_M) * P.x_M * V + ch * ch * Vp) *
                  dthdD);
  const Complex dT2 = 0.5 * ctx.D * th * th * th * sh * sh -
                      ctx.D * th * th * th * th * sh * std::cosh(th);
  const Complex Rp = char_fn_deriv(ctx, lam);
  if (std::abs(Rp) < 1e-10 * std::max(1.0, char_scale(ctx, lam)))
    throw ConvergenceError("dlambda_dD: root is not simple enough");
  TransversalityData td;
  td.dlambda_dD = -(dT1 - dT2) / Rp;
  td.dpstar_dD = pD;
  return td;
}

}  // namespace grn
