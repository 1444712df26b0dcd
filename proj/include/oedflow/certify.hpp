#pragma once

#include "oedflow/flow.hpp"

namespace oedflow {

// First-order optimality certificate of Prop-4.4 type: at a maximizer the
// shifted first variation phi - c is nonpositive everywhere and zero on the
// support, with c the support level int phi d mu.
struct OptimalityReport {
  double support_level = 0.0;     // c
  double max_violation = 0.0;     // max over the audit grid of phi - c
  double support_residual = 0.0;  // max over support clusters of |phi - c|
  double grad_sup_on_support = 0.0;
  double tolerance = 0.0;
  bool certified = false;

  // phi field over the audit grid, for export.
  std::vector<Point> audit_points;
  Eigen::VectorXd audit_phi;
};

std::vector<Point> default_audit_grid(const Box& box, int n_1d = 2000, int n_2d = 200);

OptimalityReport optimality_certificate(const UtilityEngine& engine,
                                        const DesignMeasure& prob_measure,
                                        const std::vector<Point>& audit_grid, double tol,
                                        double merge_radius = 1e-3);

// Worst signed concavity defect min over sampled pairs and mixture weights of
// V_B(mu_t) - [(1-t) V_B(mu_0) + t V_B(mu_1)]; nonnegative up to round-off
// for a concave utility.
double concavity_probe(const UtilityEngine& engine, int num_pairs,
                       const std::vector<double>& t_grid, std::uint64_t seed);

struct MonotonicityAudit {
  double worst_decrease = 0.0;  // most negative per-step utility change
  int num_decreases = 0;        // steps with a decrease below the tolerance
  double tolerance = 1e-8;
};

MonotonicityAudit monotonicity_audit(const FlowRecord& record, double tolerance = 1e-8);

// Closed-form optimum of the circle-feature model and the moment conditions
// that characterize its maximizers.
double torus_optimal_value(double sigma_prior);
// (int cos(4 pi x) d mu, int sin(4 pi x) d mu) for a probability measure.
Eigen::Vector2d torus_moment_residuals(const DesignMeasure& prob_measure);

struct TorusOracleReport {
  double optimal_value = 0.0;
  Eigen::Vector2d moment_residuals = Eigen::Vector2d::Zero();
};

TorusOracleReport torus_oracle(double sigma_prior, const DesignMeasure& candidate);

}  // namespace oedflow
