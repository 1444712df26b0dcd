#pragma once

#include <array>

#include "oedflow/core.hpp"

namespace oedflow {

// Weights of the C^1 cubic Hermite interpolant on a uniform 1d lattice
// t_i = i*h, i = 0..n-1. Node slopes are Catmull-Rom central differences
// inside and second-order one-sided differences at the ends, so the
// interpolant and its first derivative are continuous on the whole segment.
// For a query t the interpolant is sum_a weight[a] * f[index[a]] with at
// most four active nodes; `deriv` gives the weights of d/dt.
struct CubicStencil {
  std::array<int, 4> index{};
  std::array<double, 4> value{};
  std::array<double, 4> deriv{};
  int count = 0;
};

CubicStencil cubic_stencil(double t, int n, double h);

}  // namespace oedflow
