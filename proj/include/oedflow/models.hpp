#pragma once

#include <Eigen/SparseCholesky>
#include <memory>
#include <optional>
#include <vector>

#include "oedflow/grid.hpp"

namespace oedflow {

// Feature evaluations at a batch of design points: column j of `values` is
// the whitened feature vector at point j, columns of `dx`/`dy` the partial
// derivatives (dy empty in one dimension).
struct FeatureBatch {
  Eigen::MatrixXd values;
  Eigen::MatrixXd dx;
  Eigen::MatrixXd dy;
};

// A forward model reduced to its design-relevant content: the whitened
// feature x -> sigma^{-1} (discrete A* k_x) and its spatial Jacobian.
class ObservationMap {
 public:
  virtual ~ObservationMap() = default;

  const Box& domain() const { return domain_; }
  double noise_std() const { return noise_std_; }
  int output_dim() const { return output_dim_; }
  // Parameter grid; null for models with an explicit coefficient space.
  const ParameterGrid* grid() const { return grid_ ? &*grid_ : nullptr; }

  Eigen::VectorXd feature(const Point& x) const;
  Eigen::MatrixXd feature_jacobian(const Point& x) const;  // output_dim x dim

  virtual FeatureBatch feature_batch(const std::vector<Point>& pts, bool with_jacobian) const = 0;

 protected:
  // Grid-backed model: domain and output dimension come from the grid.
  ObservationMap(double noise_std, ParameterGrid grid) : noise_std_(noise_std), grid_(std::move(grid)) {
    if (noise_std_ <= 0) throw ConfigError("noise_std must be positive");
    domain_ = grid_->domain;
    output_dim_ = grid_->size();
  }
  // Explicit coefficient-space model (no grid).
  ObservationMap(double noise_std, Box domain, int output_dim)
      : domain_(domain), noise_std_(noise_std), output_dim_(output_dim) {
    if (noise_std_ <= 0) throw ConfigError("noise_std must be positive");
  }
  void check_point(const Point& x) const {
    if (!domain_.contains(x, 1e-12)) throw InputError("design point outside the closed domain");
  }

  Box domain_;
  double noise_std_;
  int output_dim_;
  std::optional<ParameterGrid> grid_;
};

// 1d Poisson source problem on [0,1] with the analytic Dirichlet Green's
// function G(x,z) = min(x,z)(1 - max(x,z)).
class PoissonMap final : public ObservationMap {
 public:
  PoissonMap(ParameterGrid grid, double noise_std);
  FeatureBatch feature_batch(const std::vector<Point>& pts, bool with_jacobian) const override;
};

struct SchrodingerOptions {
  double omega = 1.0;
  double potential_magnitude = 200.0;
  double potential_halfwidth = 0.08;
  double mollifier_eps = 0.02;
};

// Time-harmonic Schroedinger source problem on (0,1)^2: 5-point finite
// differences for L = -Lap + V - omega^2 with homogeneous Dirichlet data,
// features interpolated off the factored discrete solution operator.
class SchrodingerMap final : public ObservationMap {
 public:
  SchrodingerMap(ParameterGrid grid, const SchrodingerOptions& opts, double noise_std);
  FeatureBatch feature_batch(const std::vector<Point>& pts, bool with_jacobian) const override;

  // Mollified cross potential sampled at (x, y).
  double potential(double x, double y) const;
  // Smallest pivot of the LDL^T factorization; positive iff L is SPD.
  double min_pivot() const { return min_pivot_; }

 private:
  int n_;       // interior nodes per side
  double h_;    // lattice spacing 1/(n+1)
  SchrodingerOptions opts_;
  Eigen::SparseMatrix<double> op_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
  double min_pivot_ = 0.0;

  // Interpolation functional (and d/dx, d/dy rows) at x over interior nodes.
  void stencil_columns(const std::vector<Point>& pts, Eigen::MatrixXd& rhs, bool with_jacobian) const;
};

// Unit circle feature map phi(x) = (cos 2 pi x, sin 2 pi x) with unit noise;
// the matching prior is sigma^2 I_2 on the coefficients.
class TorusMap final : public ObservationMap {
 public:
  TorusMap();
  FeatureBatch feature_batch(const std::vector<Point>& pts, bool with_jacobian) const override;
};

std::shared_ptr<ObservationMap> poisson_observation_map(ParameterGrid grid, double noise_std);
std::shared_ptr<ObservationMap> schrodinger_observation_map(ParameterGrid grid,
                                                            const SchrodingerOptions& opts,
                                                            double noise_std);
std::shared_ptr<ObservationMap> torus_observation_map();

}  // namespace oedflow
