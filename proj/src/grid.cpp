#include "oedflow/grid.hpp"

#include <cmath>

namespace oedflow {

ParameterGrid ParameterGrid::line_1d(int m) {
  if (m < 2) throw ConfigError("1d grid needs at least 2 points");
  ParameterGrid g;
  g.dim = 1;
  g.domain = Box::unit_interval();
  g.points.resize(m, 1);
  g.weights.resize(m);
  const double h = 1.0 / (m - 1);
  for (int i = 0; i < m; ++i) {
    g.points(i, 0) = i * h;
    g.weights[i] = (i == 0 || i == m - 1) ? h / 2.0 : h;
  }
  return g;
}

ParameterGrid ParameterGrid::interior_2d(int n) {
  if (n < 2) throw ConfigError("2d grid needs at least 2 points per side");
  ParameterGrid g;
  g.dim = 2;
  g.domain = Box::unit_square();
  const int m = n * n;
  g.points.resize(m, 2);
  g.weights.resize(m);
  const double h = 1.0 / (n + 1);
  auto w1 = [&](int i) { return (i == 0 || i == n - 1) ? 1.5 * h : h; };
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const int k = iy * n + ix;
      g.points(k, 0) = (ix + 1) * h;
      g.points(k, 1) = (iy + 1) * h;
      g.weights[k] = w1(ix) * w1(iy);
    }
  }
  return g;
}

void ParameterGrid::validate() const {
  if (dim != 1 && dim != 2) throw ConfigError("grid dimension must be 1 or 2");
  if (points.rows() != weights.size()) throw ConfigError("grid points/weights size mismatch");
  if ((weights.array() <= 0).any()) throw ConfigError("grid weights must be positive");
  if (std::abs(weights.sum() - domain.volume()) > 1e-12)
    throw ConfigError("grid weights must sum to the domain volume");
  for (int i = 0; i < points.rows(); ++i) {
    Point p = Point::Zero();
    for (int d = 0; d < dim; ++d) p[d] = points(i, d);
    if (!domain.contains(p, 1e-14)) throw ConfigError("grid node outside the domain");
  }
}

}  // namespace oedflow
