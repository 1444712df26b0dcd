#pragma once

#include "oedflow/design.hpp"
#include "oedflow/kernels.hpp"

namespace oedflow {

struct RegularizerConfig {
  double alpha = 0.0;  // weight of the per-ensemble variance penalty
  double beta = 0.0;   // weight of the cross-ensemble repulsion
  KernelSpec repulsion = KernelSpec::gaussian_interaction(0.009);

  void validate() const {
    if (alpha < 0 || beta < 0) throw ConfigError("regularization weights must be nonnegative");
    if (repulsion.family != KernelFamily::GaussianInteraction)
      throw ConfigError("repulsion kernel must be a gaussian_interaction family");
  }
};

// R_v: sum over ensembles of the empirical variance.
double variance_value(const EnsembleProduct& ens);
// Mean-field gradient 2 (x_{i,b} - mean_b), the flow direction; the mean is
// the current empirical one. Note the finite-N partial derivative of the
// empirical value is (2/N)(x - mean), smaller by a factor N.
Point variance_gradient(const EnsembleProduct& ens, int i, int b);

// R_r: ordered-pair interaction energy sum_{b != b'} int int q d mu_b d mu_b'.
double repulsion_value(const EnsembleProduct& ens, const KernelSpec& q);
Point repulsion_gradient(const EnsembleProduct& ens, const KernelSpec& q, int i, int b);

// Batched gradients over all particles, indexed like EnsembleProduct storage.
std::vector<Point> variance_gradients(const EnsembleProduct& ens);
std::vector<Point> repulsion_gradients(const EnsembleProduct& ens, const KernelSpec& q);

}  // namespace oedflow
