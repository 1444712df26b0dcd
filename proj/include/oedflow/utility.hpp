#pragma once

#include <Eigen/Cholesky>
#include <memory>

#include "oedflow/design.hpp"
#include "oedflow/models.hpp"
#include "oedflow/prior.hpp"

namespace oedflow {

enum class SolverMode { Auto, DenseCholesky, WoodburyLowRank };

class UtilityEngine;

// Factorization of (S_nu + I) for a fixed design measure nu, where
// S_nu = sum_i w_i g(x_i) g(x_i)^T in the quadrature-orthonormal basis.
// Everything downstream is expressed through the posterior action
// P = C^{1/2} (S_nu + I)^{-1} C^{1/2}, which both solver paths provide
// without forming inverses.
class ResolventState {
 public:
  // Posterior covariance action applied to half-basis feature columns.
  Eigen::MatrixXd apply_posterior(const Eigen::MatrixXd& cols) const;
  // Resolvent action (S_nu + I)^{-1}; the Woodbury path materializes the
  // prior square root on first use.
  Eigen::MatrixXd apply_resolvent(const Eigen::MatrixXd& cols) const;

  double posterior_trace() const;
  double mass() const { return mass_; }
  bool woodbury() const { return woodbury_; }

 private:
  friend class UtilityEngine;
  const UtilityEngine* engine_ = nullptr;
  double mass_ = 0.0;
  bool woodbury_ = false;
  // Woodbury path: columns sqrt(w_i) f(x_i), their prior images, and the
  // Cholesky factor of (I + F^T C F).
  Eigen::MatrixXd fw_;
  Eigen::MatrixXd cfw_;
  Eigen::LLT<Eigen::MatrixXd> inner_;
  // Dense path: Cholesky factor of (S_nu + I).
  Eigen::LLT<Eigen::MatrixXd> dense_;
};

// Evaluates the A-optimal expected utility, its first variation and spatial
// gradient for one observation model and prior. Internally the parameter
// space carries the quadrature inner product of the model grid; features and
// the prior Gram are rescaled once so that plain Euclidean algebra applies.
class UtilityEngine {
 public:
  UtilityEngine(std::shared_ptr<const ObservationMap> map, PriorModel prior, double design_mass,
                SolverMode mode = SolverMode::Auto);

  const ObservationMap& map() const { return *map_; }
  const PriorModel& prior() const { return prior_; }
  const Box& domain() const { return map_->domain(); }
  double design_mass() const { return mass_; }
  SolverMode mode() const { return mode_; }

  // g(x) = C^{1/2} f(x) and its Jacobian, in the quadrature basis.
  Eigen::VectorXd preconditioned_feature(const Point& x) const;
  Eigen::MatrixXd preconditioned_jacobian(const Point& x) const;

  ResolventState assemble_resolvent(const DesignMeasure& measure) const;

  // U(measure) = -Tr[(S_measure + I)^{-1} C]; uses the measure's own mass.
  double expected_utility(const DesignMeasure& measure) const;
  // V_B(prob) = U(B * prob) with the engine's design mass B.
  double expected_utility_prob(const DesignMeasure& prob_measure) const;

  Eigen::MatrixXd posterior_covariance(const DesignMeasure& measure) const;

  // phi_mu(x) against a state assembled from the mass-B measure B*mu.
  double first_variation(const ResolventState& state, const Point& x) const;
  Eigen::VectorXd first_variation_gradient(const ResolventState& state, const Point& x) const;
  double first_variation(const DesignMeasure& prob_measure, const Point& x) const;
  Eigen::VectorXd first_variation_gradient(const DesignMeasure& prob_measure,
                                           const Point& x) const;

  // Per-particle ascent direction of the tensorized utility.
  Eigen::VectorXd tensor_utility_gradient(const EnsembleProduct& ens, int i, int b) const;

  // Batched evaluation against one state (chunked internally).
  Eigen::VectorXd first_variation_values(const ResolventState& state,
                                         const std::vector<Point>& pts) const;
  Eigen::MatrixXd first_variation_gradients(const ResolventState& state,
                                            const std::vector<Point>& pts) const;  // n x dim

  // Features in the quadrature half-basis (rows scaled by 1/sqrt(w)).
  FeatureBatch half_basis_features(const std::vector<Point>& pts, bool with_jacobian) const;
  const Eigen::MatrixXd& weighted_cov() const { return chat_; }
  const Eigen::MatrixXd& weighted_sqrt_cov() const;

 private:
  friend class ResolventState;
  bool use_woodbury(int atoms) const;

  std::shared_ptr<const ObservationMap> map_;
  PriorModel prior_;
  double mass_;
  SolverMode mode_;
  Eigen::VectorXd inv_sqrt_w_;   // 1/sqrt(grid weights); ones when gridless
  Eigen::MatrixXd chat_;         // D^{1/2} C D^{1/2}
  double chat_trace_ = 0.0;
  mutable Eigen::MatrixXd chat_sqrt_;  // lazily computed
};

}  // namespace oedflow
