#include "grn/greens.hpp"

#include <cmath>

#include "grn/errors.hpp"

namespace grn {

Complex principal_sqrt(Complex z, bool* zero_flag) noexcept {
  if (z == Complex(0.0, 0.0)) {
    if (zero_flag) *zero_flag = true;
    return {0.0, 0.0};
  }
  Complex w = std::sqrt(z);  // Re(w) >= 0 on the principal branch
  if (w.real() == 0.0) {
    if (w.imag() < 0.0) w = -w;
    w = Complex(0.0, w.imag());  // scrub -0.0 real part
  }
  return w;
}

KernelContext::KernelContext(double D_, Complex shift_) : D(D_), shift(shift_) {
  if (!(D > 0.0)) throw ConfigError("kernel: D must be positive");
  bool zero = false;
  theta = principal_sqrt(shift / D, &zero);
  if (zero) throw ConfigError("kernel: shift must be nonzero");
}

namespace {
// |sinh(theta)| < tol  <=>  |1 - e^{-2 theta}| < 2 tol e^{-Re theta}
bool sinh_vanishes(Complex theta, Complex E, double tol = 1e-14) {
  return std::abs(1.0 - E) < 2.0 * tol * std::exp(-theta.real());
}
}  // namespace

Complex green(const KernelContext& k, double y, double x) {
  if (y < 0.0 || y > 1.0 || x < 0.0 || x > 1.0)
    throw ConfigError("green: positions must lie in [0,1]");
  const Complex th = k.theta;
  const Complex E = std::exp(-2.0 * th);
  if (sinh_vanishes(th, E))
    throw SingularKernelError("green: shift on the Neumann spectrum");
  const double a = std::min(y, x), b = std::max(y, x);
  // cosh(th a) cosh(th (1-b)) / (th D sinh th), scaled by e^{-th}
  return std::exp(-th * (b - a)) * (1.0 + std::exp(-2.0 * th * a)) *
         (1.0 + std::exp(-2.0 * th * (1.0 - b))) / (2.0 * th * k.D * (1.0 - E));
}

namespace detail {

Complex Wfun(Complex th, const ModelParams& P) {
  const double xM = P.x_M, l = P.l;
  const Complex EM = std::exp(-2.0 * th * xM);
  const Complex E = std::exp(-2.0 * th);
  const Complex F = std::exp(-4.0 * th * (1.0 - l));
  const Complex Pf = (1.0 + EM) * (1.0 + EM);
  const Complex Qf = 1.0 / ((1.0 - E) * (1.0 - E));
  const Complex S = 0.5 * (1.0 - l) * th * std::exp(2.0 * th * (xM - 1.0)) +
                    0.125 * std::exp(2.0 * th * (xM - l)) * (1.0 - F);
  return Pf * Qf * S;
}

Complex Wprime(Complex th, const ModelParams& P) {
  const double xM = P.x_M, l = P.l;
  const Complex EM = std::exp(-2.0 * th * xM);
  const Complex E = std::exp(-2.0 * th);
  const Complex F = std::exp(-4.0 * th * (1.0 - l));
  const Complex e1 = std::exp(2.0 * th * (xM - 1.0));
  const Complex e2 = std::exp(2.0 * th * (xM - l));
  const Complex Pf = (1.0 + EM) * (1.0 + EM);
  const Complex Qf = 1.0 / ((1.0 - E) * (1.0 - E));
  const Complex S = 0.5 * (1.0 - l) * th * e1 + 0.125 * e2 * (1.0 - F);
  const Complex Pd = -4.0 * xM * EM * (1.0 + EM);
  const Complex Qd = -4.0 * E / ((1.0 - E) * (1.0 - E) * (1.0 - E));
  const Complex Sd = 0.5 * (1.0 - l) * e1 + (1.0 - l) * th * (xM - 1.0) * e1 +
                     0.25 * (xM - l) * e2 * (1.0 - F) +
                     0.5 * (1.0 - l) * F * e2;
  return Pd * Qf * S + Pf * Qd * S + Pf * Qf * Sd;
}

}  // namespace detail

Complex kernel_integral(const ModelParams& P, double D, Complex lam) {
  bool zero = false;
  const Complex th = principal_sqrt((P.mu + lam) / D, &zero);
  if (zero) throw SingularKernelError("kernel_integral: lambda = -mu");
  const Complex E = std::exp(-2.0 * th);
  if (sinh_vanishes(th, E))
    throw SingularKernelError("kernel_integral: shift on the Neumann spectrum");
  return detail::Wfun(th, P) / (D * D * th * th * th);
}

Complex profile_integral(const ModelParams& P, double D, Complex lam, double x) {
  if (x < 0.0 || x > 1.0) throw ConfigError("profile_integral: x outside [0,1]");
  const double xM = P.x_M, l = P.l;
  bool zero = false;
  const Complex th = principal_sqrt((P.mu + lam) / D, &zero);
  if (zero) throw SingularKernelError("profile_integral: lambda = -mu");
  const Complex E = std::exp(-2.0 * th);
  if (sinh_vanishes(th, E))
    throw SingularKernelError("profile_integral: shift on the Neumann spectrum");
  const Complex EM = std::exp(-2.0 * th * xM);
  const Complex den = (P.mu + lam) * D * (1.0 - E) * (1.0 - E);
  if (x <= l) {
    const Complex F = std::exp(-4.0 * th * (1.0 - l));
    const Complex Bh =
        0.5 * (1.0 - l) * std::exp(-2.0 * th * (1.0 - l)) + (1.0 - F) / (8.0 * th);
    return std::exp(th * (xM + x - 2.0 * l)) * (1.0 + EM) *
           (1.0 + std::exp(-2.0 * th * x)) * Bh / den;
  }
  // sinh(theta s) scaled by e^{-theta}: sgn(s) e^{-theta(1-|s|)} (1-e^{-2 theta |s|})/2
  auto ssh = [&](double s) -> Complex {
    if (s == 0.0) return {0.0, 0.0};
    const double as = std::abs(s), sg = s > 0.0 ? 1.0 : -1.0;
    return sg * std::exp(-th * (1.0 - as)) * (1.0 - std::exp(-2.0 * th * as)) * 0.5;
  };
  const Complex I1h = 0.25 * (1.0 + E) * (x - l) +
                      (ssh(2.0 * x - 1.0) - ssh(2.0 * l - 1.0)) / (4.0 * th);
  const Complex I2h = 0.5 * (1.0 - x) * std::exp(-2.0 * th * (1.0 - x)) +
                      (1.0 - std::exp(-4.0 * th * (1.0 - x))) / (8.0 * th);
  return std::exp(th * (xM - x)) * (1.0 + EM) *
         ((1.0 + std::exp(-2.0 * th * (1.0 - x))) * I1h +
          (1.0 + std::exp(-2.0 * th * x)) * I2h) /
         den;
}

}  // namespace grn
