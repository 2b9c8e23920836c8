#pragma once

#include <vector>

#include "grn/greens.hpp"
#include "grn/params.hpp"

namespace grn {

struct CharacteristicContext {
  double D = 0.0;
  double p_at_gene = 0.0;
  double fprime_at_gene = 0.0;
  ModelParams params;

  // Solves the steady gene-site equation and fills the linearization data.
  static CharacteristicContext make(const ModelParams& P, double D);
};

// R(lambda): zeros are the eigenvalues of the linearized limit problem.
Complex char_fn(const CharacteristicContext& ctx, Complex lam);
Complex char_fn_deriv(const CharacteristicContext& ctx, Complex lam);
// max(|term1|, |term2|): the natural residual scale of R at lambda.
double char_scale(const CharacteristicContext& ctx, Complex lam);

namespace detail {
// R built from a caller-supplied square root of (mu+lambda)/D; |R| is
// branch-independent (R itself is odd in theta).
Complex char_fn_theta(const CharacteristicContext& ctx, Complex lam,
                      Complex theta);
// Overflow-free normalized form R_n with R = term2 * R_n; same zero set.
Complex char_fn_normalized(const CharacteristicContext& ctx, Complex lam);
Complex char_fn_normalized_deriv(const CharacteristicContext& ctx, Complex lam);
}  // namespace detail

struct Root {
  Complex lam;
  double residual = 0.0;  // |R(lam)|
  Complex Rprime;
};

struct RootSet {
  std::vector<Root> roots;  // Im >= 0, sorted by descending Re
  static constexpr double box_re_lo = -5.0, box_re_hi = 35.0;
  static constexpr double box_im_lo = 0.0, box_im_hi = 35.0;
};

// Newton from a coarse seed grid over the search box plus a refinement pass
// around local minima of |R_n|; deduplicated, conjugates implied.
RootSet find_roots(const CharacteristicContext& ctx);

// Newton polish of a single root from a nearby guess; returns true on
// convergence.
bool polish_root(const CharacteristicContext& ctx, Complex& lam);

// -inf when the box holds no roots.
double max_real_part(const CharacteristicContext& ctx);

// d p*(x_M, D) / dD, closed form.
double dpstar_dD(const ModelParams& P, double D);

struct TransversalityData {
  Complex dlambda_dD;
  double dpstar_dD = 0.0;
};

// Implicit derivative -(dR/dD)/(dR/dlambda) at a simple root.
TransversalityData dlambda_dD(const CharacteristicContext& ctx, Complex lam);

}  // namespace grn
