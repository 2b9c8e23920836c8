#pragma once
#include <complex>

#include "grn/params.hpp"

namespace grn {

using Complex = std::complex<double>;

// Square root with Re >= 0; ties (Re == 0) resolved to Im >= 0.
// z == 0 returns 0 and sets *zero_flag when provided.
Complex principal_sqrt(Complex z, bool* zero_flag = nullptr) noexcept;

// Kernel of (shift - D d^2/dx^2)^{-1} on [0,1] with zero-flux boundaries.
// shift = mu for the steady state, mu + lambda for spectral use.
struct KernelContext {
  double D;
  Complex shift;
  Complex theta;  // principal_sqrt(shift / D), so Re(theta) >= 0

  KernelContext(double D_, Complex shift_);  // ConfigError on D <= 0 or shift == 0
};

// G(y,x) = cosh(theta*min) cosh(theta*(1-max)) / (theta D sinh theta).
// Symmetric in (y,x) and even in theta. Evaluated in an exponentially scaled
// product form whose exponents all have nonpositive real part, so it stays
// finite down to D = 1e-7 (theta ~ 548) where the naive form overflows.
// Throws SingularKernelError when sinh(theta) vanishes to rounding (shift on
// the Neumann spectrum).
Complex green(const KernelContext& k, double y, double x);

namespace detail {
// Shared scaled building block for every closed-form kernel integral:
//   W(theta) = (1+EM)^2 (1-E)^{-2}
//              [ (1-l)/2 theta e^{2 theta (x_M-1)} + (1/8) e^{2 theta (x_M-l)} (1-F) ]
// with EM = e^{-2 theta x_M}, E = e^{-2 theta}, F = e^{-4 theta (1-l)}.
// All exponents have Re <= 0 for Re(theta) >= 0 because 0 < x_M < l <= 1.
Complex Wfun(Complex th, const ModelParams& P);
Complex Wprime(Complex th, const ModelParams& P);  // dW/dtheta, same scaling
}  // namespace detail

// Integral of G_{mu+lambda}(y, x_M) G_{mu+lambda}(x_M, y) over the cytoplasm,
// evaluated at the gene site:
//   kernel_integral = int_l^1 G(x_M, y) G(y, x_M) dy = W(theta) / (D^2 theta^3).
// The self-coupling factor of the feedback loop; real and positive at lambda=0.
Complex kernel_integral(const ModelParams& P, double D, Complex lam);

// J(x) = int_l^1 G_{mu+lambda}(x, y) G_{mu+lambda}(y, x_M) dy, closed form,
// scaled like green(). Continuous in x with a derivative kink at l.
Complex profile_integral(const ModelParams& P, double D, Complex lam, double x);

}  // namespace grn
