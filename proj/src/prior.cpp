#include "oedflow/prior.hpp"

#include <Eigen/Eigenvalues>

namespace oedflow {

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& a, double floor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

PriorModel::PriorModel(Eigen::MatrixXd cov, double eigen_floor)
    : cov_(std::move(cov)), eigen_floor_(eigen_floor) {
  if (cov_.rows() != cov_.cols()) throw ConfigError("prior covariance must be square");
  if (eigen_floor_ < 0) throw ConfigError("eigen_floor must be nonnegative");
  const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, cov_.cwiseAbs().maxCoeff()))
    throw ConfigError("prior covariance must be symmetric");
  cov_ = 0.5 * (cov_ + cov_.transpose().eval());
}

PriorModel PriorModel::from_kernel(const KernelSpec& kernel, const ParameterGrid& grid,
                                   double eigen_floor) {
  if (kernel.family == KernelFamily::GaussianInteraction)
    throw ConfigError("gaussian_interaction is not a covariance family");
  const int m = grid.size();
  Eigen::MatrixXd cov(m, m);
  std::vector<Point> nodes(m, Point::Zero());
  for (int i = 0; i < m; ++i)
    for (int d = 0; d < grid.dim; ++d) nodes[i][d] = grid.points(i, d);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = kernel_eval(kernel, nodes[i], nodes[j]);
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }
  return PriorModel(std::move(cov), eigen_floor);
}

PriorModel PriorModel::from_matrix(Eigen::MatrixXd cov, double eigen_floor) {
  return PriorModel(std::move(cov), eigen_floor);
}

PriorModel PriorModel::isotropic(int m, double variance) {
  if (variance <= 0) throw ConfigError("prior variance must be positive");
  return PriorModel(variance * Eigen::MatrixXd::Identity(m, m), 0.0);
}

const Eigen::MatrixXd& PriorModel::sqrt_cov() const {
  if (sqrt_cov_.size() == 0) sqrt_cov_ = symmetric_sqrt(cov_, eigen_floor_);
  return sqrt_cov_;
}

}  // namespace oedflow
