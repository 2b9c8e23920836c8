#include "grn/kinetics.hpp"

#include <cmath>
#include <stdexcept>

namespace grn {

double ipow(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

double hill(double p, int h) {
  if (p < 0.0) throw std::domain_error("hill: negative concentration");
  return 1.0 / (1.0 + ipow(p, h));
}

HillDerivs hill_derivs(double p, int h) {
  if (p < 0.0) throw std::domain_error("hill_derivs: negative concentration");
  const double hd = h;
  // u = p^h and its derivatives; coefficient-first so h < 3 never evaluates
  // a negative power at p = 0.
  const double u = ipow(p, h);
  const double u1 = hd * ipow(p, h - 1);
  const double u2 = (h >= 2) ? hd * (hd - 1.0) * ipow(p, h - 2) : 0.0;
  const double u3 = (h >= 3) ? hd * (hd - 1.0) * (hd - 2.0) * ipow(p, h - 3) : 0.0;
  const double s = 1.0 + u;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
  HillDerivs d;
  d.f1 = -u1 / s2;
  d.f2 = -u2 / s2 + 2.0 * u1 * u1 / s3;
  d.f3 = -u3 / s2 + 6.0 * u1 * u2 / s3 - 6.0 * u1 * u1 * u1 / s4;
  return d;
}

double cyto_indicator(double x, double l) { return x >= l ? 1.0 : 0.0; }

double dirac_eps(double x, double x_M, double eps) {
  const double r = x - x_M;
  if (r <= -eps || r >= eps) return 0.0;
  return (1.0 + std::cos(M_PI * r / eps)) / (2.0 * eps);
}

}  // namespace grn
