#pragma once

#include "oedflow/grid.hpp"
#include "oedflow/kernels.hpp"

namespace oedflow {

// Prior covariance on the parameter grid: the node Gram C_f[m,n] = c(z_m, z_n)
// and its symmetric PSD square root. The square root comes from a symmetric
// eigendecomposition with eigenvalues clipped from below at `eigen_floor`
// (negative round-off modes are zeroed by the default floor of 0), which keeps
// the construction total for near-singular Grams. It is computed on first use.
class PriorModel {
 public:
  static PriorModel from_kernel(const KernelSpec& kernel, const ParameterGrid& grid,
                                double eigen_floor = 0.0);
  static PriorModel from_matrix(Eigen::MatrixXd cov, double eigen_floor = 0.0);
  static PriorModel isotropic(int m, double variance);

  const Eigen::MatrixXd& cov() const { return cov_; }
  const Eigen::MatrixXd& sqrt_cov() const;
  double eigen_floor() const { return eigen_floor_; }
  int size() const { return static_cast<int>(cov_.rows()); }

 private:
  PriorModel(Eigen::MatrixXd cov, double eigen_floor);

  Eigen::MatrixXd cov_;
  double eigen_floor_ = 0.0;
  mutable Eigen::MatrixXd sqrt_cov_;
};

// Symmetric PSD square root by eigendecomposition, eigenvalues clipped at
// `floor` from below. Shared by PriorModel and the utility engine.
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& a, double floor = 0.0);

}  // namespace oedflow
