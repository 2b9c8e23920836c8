#pragma once
#include "grn/params.hpp"

namespace grn {

// x^n for integer n >= 0 by repeated squaring; exact for the small exponents
// used here and much cheaper than std::pow in hot loops.
double ipow(double x, int n);

// Hill repression f(p) = 1/(1 + p^h). Strictly decreasing, f(0) = 1.
// Negative p is rejected (throws std::domain_error); the dynamics keep
// concentrations nonnegative so f is never needed there.
double hill(double p, int h);

struct HillDerivs {
  double f1, f2, f3;
};

// Closed-form first three derivatives of hill(., h) at p.
HillDerivs hill_derivs(double p, int h);

// Cytoplasm indicator g(x): 0 for x < l, 1 for x >= l (right-continuous).
double cyto_indicator(double x, double l);

// Regularized unit point source centered at x_M:
// (1/(2 eps)) (1 + cos(pi (x - x_M)/eps)) on |x - x_M| < eps, else 0.
// Continuous, compactly supported, integral 1.
double dirac_eps(double x, double x_M, double eps);

}  // namespace grn
