#include "oedflow/regularize.hpp"

#include <cmath>

namespace oedflow {

double variance_value(const EnsembleProduct& ens) {
  double acc = 0.0;
  for (int b = 0; b < ens.batch; ++b) acc += ensemble_variance(ens, b);
  return acc;
}

Point variance_gradient(const EnsembleProduct& ens, int i, int b) {
  return 2.0 * (ens.at(b, i) - ensemble_mean(ens, b));
}

double repulsion_value(const EnsembleProduct& ens, const KernelSpec& q) {
  const double inv_n2 = 1.0 / (double(ens.per_ensemble) * ens.per_ensemble);
  double acc = 0.0;
  for (int b = 0; b < ens.batch; ++b) {
    for (int c = 0; c < ens.batch; ++c) {
      if (b == c) continue;
      double pair = 0.0;
      for (int i = 0; i < ens.per_ensemble; ++i)
        for (int j = 0; j < ens.per_ensemble; ++j)
          pair += kernel_eval(q, ens.at(b, i), ens.at(c, j));
      acc += inv_n2 * pair;
    }
  }
  return acc;
}

Point repulsion_gradient(const EnsembleProduct& ens, const KernelSpec& q, int i, int b) {
  Point g = Point::Zero();
  for (int c = 0; c < ens.batch; ++c) {
    if (c == b) continue;
    for (int j = 0; j < ens.per_ensemble; ++j) g += kernel_grad_x(q, ens.at(b, i), ens.at(c, j));
  }
  return (2.0 / ens.per_ensemble) * g;
}

std::vector<Point> variance_gradients(const EnsembleProduct& ens) {
  std::vector<Point> out(ens.size());
  for (int b = 0; b < ens.batch; ++b) {
    const Point mean = ensemble_mean(ens, b);
    for (int i = 0; i < ens.per_ensemble; ++i)
      out[static_cast<size_t>(b) * ens.per_ensemble + i] = 2.0 * (ens.at(b, i) - mean);
  }
  return out;
}

std::vector<Point> repulsion_gradients(const EnsembleProduct& ens, const KernelSpec& q) {
  std::vector<Point> out(ens.size(), Point::Zero());
  const double s2 = q.lengthscale * q.lengthscale;
  for (int b = 0; b < ens.batch; ++b) {
    for (int i = 0; i < ens.per_ensemble; ++i) {
      Point acc = Point::Zero();
      for (int c = 0; c < ens.batch; ++c) {
        if (c == b) continue;
        for (int j = 0; j < ens.per_ensemble; ++j) {
          const Point d = ens.at(b, i) - ens.at(c, j);
          acc += (-std::exp(-d.squaredNorm() / (2.0 * s2)) / s2) * d;
        }
      }
      out[static_cast<size_t>(b) * ens.per_ensemble + i] = (2.0 / ens.per_ensemble) * acc;
    }
  }
  return out;
}

}  // namespace oedflow
