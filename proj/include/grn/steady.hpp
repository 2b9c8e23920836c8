#pragma once

#include <vector>

#include "grn/grid.hpp"
#include "grn/params.hpp"

namespace grn {

struct SteadyStateSolution {
  double D = 0.0;
  double p_at_gene = 0.0;
  std::vector<double> x;
  std::vector<double> m_profile;
  std::vector<double> p_profile;
  double residual = 0.0;  // sup norm of the discretized stationary equations
};

// C(D) in the gene-site equation p = C(D) f(p).
double steady_coefficient(const ModelParams& P, double D);

// Unique positive root of p = C(D) f(p); bisection to width 1e-13 then one
// Newton polish.
double solve_p_at_gene(const ModelParams& P, double D);

// Closed-form profiles through the kernel module; the limit problem
// (point source, exact membrane step).
SteadyStateSolution reconstruct_profiles(const ModelParams& P, double D,
                                         double p_at_gene,
                                         const SpatialGrid& grid);

// Regularized-source steady state: adaptively damped Picard iteration on the
// discrete resolvent, stopping when the sup-norm fixed-point residual
// (undamped update) drops below tol.
SteadyStateSolution solve_eps_fixed_point(const ModelParams& P, double D,
                                          const SpatialGrid& grid,
                                          double tol = 1e-10);

}  // namespace grn
