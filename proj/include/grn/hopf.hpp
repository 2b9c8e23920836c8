#pragma once

#include <string>
#include <vector>

#include "grn/params.hpp"
#include "grn/spectral.hpp"

namespace grn {

enum class Criticality { supercritical, subcritical };

std::string to_string(Criticality c);

struct HopfPoint {
  int j = 0;             // 1: lower critical point, 2: upper
  double D_c = 0.0;
  double omega_c = 0.0;  // critical pair is +- i omega_c
  Complex dlambda_dD;
  Complex a;             // amplitude-equation linear coefficient := dlambda_dD
  Complex b;             // cubic coefficient, filled by hopf_coefficient_b
  Criticality classification = Criticality::supercritical;
  int nu = +1;           // +1: unstable side is D > D_c, -1: D < D_c

  double period() const;  // 2 pi / omega_c
};

struct NormalFormIntermediates {
  Complex G1_at_xM;        // kernel integral at shift mu + 2 lambda_c
  double G2_at_xM = 0.0;   // kernel integral at shift mu
  Complex w2_at_xM;        // second-order resonant profile value
  double wtilde2_at_xM = 0.0;
  Complex xi1_star_at_xM;  // adjoint first component after normalization
  Complex normalization;   // defining inner-product integral I
};

// Bisection on the sign of max_real_part over [D_lo, D_hi], with Newton
// continuation of the crossing root between evaluations.
HopfPoint find_critical(const ModelParams& P, double D_lo, double D_hi);

NormalFormIntermediates normal_form_intermediates(const ModelParams& P,
                                                  const HopfPoint& hp);

// b = alpha_m [f''(p*) (w2 + wtilde2) + f'''(p*)/2] / I; fills hp.b and the
// classification (supercritical iff Re b < 0).
Complex hopf_coefficient_b(const ModelParams& P, HopfPoint& hp,
                           const NormalFormIntermediates& nfi);

// find_critical + intermediates + b in one call.
HopfPoint critical_point(const ModelParams& P, double D_lo, double D_hi);

struct AmplitudeParams {
  Complex a;
  Complex b;
  int nu = +1;
  Complex A0{1e-2, 0.0};
  std::vector<double> T;   // filled by amplitude_evolve
  std::vector<Complex> A;
};

// Fixed-step classical 4-stage integration of dA/dT = a nu A + b A |A|^2.
AmplitudeParams amplitude_evolve(AmplitudeParams ap, double T_end, double dT);

struct AmplitudeScalingReport {
  std::vector<double> delta;      // D offset from D_c, per run
  std::vector<double> amplitude;  // measured P(t) half peak-to-trough
  std::vector<double> period;     // measured on the unstable side
  std::vector<bool> decay_steady; // classification on the stable side
  double exponent = 0.0;          // slope of ln A vs ln delta; 1/2 at a Hopf point
  double period_ref = 0.0;        // 2 pi / omega_c
};

// Runs the PDE at D = D_c +- nu*offset for each offset (unstable and stable
// side) and fits the oscillation-amplitude growth law.
AmplitudeScalingReport predict_vs_simulate(const ModelParams& P,
                                           const HopfPoint& hp,
                                           const std::vector<double>& offsets);

}  // namespace grn
