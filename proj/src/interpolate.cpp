#include "oedflow/interpolate.hpp"

#include <algorithm>
#include <cmath>

namespace oedflow {

namespace {

// Node-slope stencil in units of function value (1/h applied by the caller):
// central difference inside, second-order one-sided at the segment ends.
// Support always fits the 4-node window starting at clamp(i-1, 0, n-4).
void add_slope(std::array<double, 4>& row, int lo, int i, int n, double c) {
  auto at = [&](int node) -> double& { return row[node - lo]; };
  if (i == 0) {
    at(0) += -1.5 * c;
    at(1) += 2.0 * c;
    at(2) += -0.5 * c;
  } else if (i == n - 1) {
    at(n - 1) += 1.5 * c;
    at(n - 2) += -2.0 * c;
    at(n - 3) += 0.5 * c;
  } else {
    at(i + 1) += 0.5 * c;
    at(i - 1) += -0.5 * c;
  }
}

}  // namespace

CubicStencil cubic_stencil(double t, int n, double h) {
  if (n < 4) throw InputError("cubic interpolation needs at least 4 nodes");
  int cell = static_cast<int>(std::floor(t / h));
  cell = std::clamp(cell, 0, n - 2);
  const double s = t / h - cell;

  const double h00 = (2 * s - 3) * s * s + 1;
  const double h10 = ((s - 2) * s + 1) * s;
  const double h01 = (3 - 2 * s) * s * s;
  const double h11 = (s - 1) * s * s;
  const double g00 = 6 * s * (s - 1);
  const double g10 = (3 * s - 4) * s + 1;
  const double g01 = -6 * s * (s - 1);
  const double g11 = (3 * s - 2) * s;

  CubicStencil st;
  st.count = 4;
  const int lo = std::clamp(cell - 1, 0, n - 4);
  for (int a = 0; a < 4; ++a) st.index[a] = lo + a;

  st.value[cell - lo] += h00;
  st.value[cell + 1 - lo] += h01;
  add_slope(st.value, lo, cell, n, h10);
  add_slope(st.value, lo, cell + 1, n, h11);

  st.deriv[cell - lo] += g00 / h;
  st.deriv[cell + 1 - lo] += g01 / h;
  add_slope(st.deriv, lo, cell, n, g10 / h);
  add_slope(st.deriv, lo, cell + 1, n, g11 / h);

  return st;
}

}  // namespace oedflow
