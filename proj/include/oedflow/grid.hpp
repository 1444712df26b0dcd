#pragma once

#include <vector>

#include "oedflow/core.hpp"

namespace oedflow {

// Discretization of the parameter space: M nodes with quadrature weights
// (cell measures). Weights sum to the domain volume.
struct ParameterGrid {
  int dim = 1;
  Eigen::MatrixXd points;   // M x dim node coordinates
  Eigen::VectorXd weights;  // M positive cell measures
  Box domain;

  int size() const { return static_cast<int>(points.rows()); }

  // Equidistant nodes on [0,1] including the endpoints, trapezoid weights.
  static ParameterGrid line_1d(int m);
  // Interior nodes of the (n+2)^2 finite-difference lattice on [0,1]^2,
  // spacing h = 1/(n+1); edge cells absorb the boundary strip (3h/2).
  static ParameterGrid interior_2d(int n_per_side);

  void validate() const;
};

}  // namespace oedflow
