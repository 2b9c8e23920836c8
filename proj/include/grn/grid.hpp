#pragma once

#include "grn/errors.hpp"

namespace grn {

// Uniform grid on [0,1], nodes 0, dx, ..., 1.
struct SpatialGrid {
  int n_nodes = 2001;

  explicit SpatialGrid(int n = 2001) : n_nodes(n) {
    if (n_nodes < 3) throw ConfigError("grid: need at least 3 nodes");
  }
  double dx() const { return 1.0 / (n_nodes - 1); }
  double x(int i) const { return i * dx(); }

  // Source support [x_M - eps, x_M + eps] must span >= 4 cells.
  void validate_for(double epsilon) const {
    if (dx() > epsilon / 2.0)
      throw ConfigError("grid: dx must not exceed epsilon/2");
  }
};

}  // namespace grn
