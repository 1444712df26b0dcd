#include "oedflow/certify.hpp"

#include <cmath>
#include <random>

namespace oedflow {

std::vector<Point> default_audit_grid(const Box& box, int n_1d, int n_2d) {
  std::vector<Point> pts;
  if (box.dim == 1) {
    pts.reserve(n_1d);
    for (int i = 0; i < n_1d; ++i) {
      const double t = static_cast<double>(i) / (n_1d - 1);
      pts.push_back(Point(box.lo[0] + t * (box.hi[0] - box.lo[0]), 0.0));
    }
  } else {
    pts.reserve(static_cast<size_t>(n_2d) * n_2d);
    for (int iy = 0; iy < n_2d; ++iy) {
      for (int ix = 0; ix < n_2d; ++ix) {
        const double tx = static_cast<double>(ix) / (n_2d - 1);
        const double ty = static_cast<double>(iy) / (n_2d - 1);
        pts.push_back(Point(box.lo[0] + tx * (box.hi[0] - box.lo[0]),
                            box.lo[1] + ty * (box.hi[1] - box.lo[1])));
      }
    }
  }
  return pts;
}

OptimalityReport optimality_certificate(const UtilityEngine& engine,
                                        const DesignMeasure& prob_measure,
                                        const std::vector<Point>& audit_grid, double tol,
                                        double merge_radius) {
  DesignMeasure scaled = prob_measure;
  scaled.weights *= engine.design_mass() / prob_measure.total_mass;
  scaled.total_mass = engine.design_mass();
  ResolventState state = engine.assemble_resolvent(scaled);

  OptimalityReport rep;
  rep.tolerance = tol;

  // Support level c = int phi d mu.
  Eigen::VectorXd phi_atoms = engine.first_variation_values(state, prob_measure.positions);
  rep.support_level =
      phi_atoms.dot(prob_measure.weights) / prob_measure.total_mass;

  rep.audit_points = audit_grid;
  rep.audit_phi = engine.first_variation_values(state, audit_grid);
  rep.max_violation = (rep.audit_phi.array() - rep.support_level).maxCoeff();

  const auto clusters = cluster_atoms(prob_measure, merge_radius);
  std::vector<Point> centers;
  centers.reserve(clusters.size());
  for (const auto& c : clusters) centers.push_back(c.center);
  Eigen::VectorXd phi_centers = engine.first_variation_values(state, centers);
  rep.support_residual = (phi_centers.array() - rep.support_level).abs().maxCoeff();
  Eigen::MatrixXd grads = engine.first_variation_gradients(state, centers);
  rep.grad_sup_on_support = grads.rowwise().norm().maxCoeff();

  rep.certified = rep.max_violation <= tol && rep.support_residual <= tol;
  return rep;
}

double concavity_probe(const UtilityEngine& engine, int num_pairs,
                       const std::vector<double>& t_grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Box& box = engine.domain();

  auto random_prob_measure = [&]() {
    const int n = 3 + static_cast<int>(uniform01(rng) * 20);
    DesignMeasure m;
    m.positions.reserve(n);
    m.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      Point p = Point::Zero();
      for (int d = 0; d < box.dim; ++d) p[d] = box.lo[d] + uniform01(rng) * (box.hi[d] - box.lo[d]);
      m.positions.push_back(p);
      m.weights[i] = 0.05 + uniform01(rng);
    }
    m.weights /= m.weights.sum();
    m.total_mass = 1.0;
    return m;
  };

  double worst = 0.0;
  for (int k = 0; k < num_pairs; ++k) {
    DesignMeasure mu0 = random_prob_measure();
    DesignMeasure mu1 = random_prob_measure();
    const double v0 = engine.expected_utility_prob(mu0);
    const double v1 = engine.expected_utility_prob(mu1);
    for (double t : t_grid) {
      DesignMeasure mix;
      mix.positions = mu0.positions;
      mix.positions.insert(mix.positions.end(), mu1.positions.begin(), mu1.positions.end());
      mix.weights.resize(mu0.size() + mu1.size());
      mix.weights << (1.0 - t) * mu0.weights, t * mu1.weights;
      mix.total_mass = 1.0;
      const double vt = engine.expected_utility_prob(mix);
      worst = std::min(worst, vt - ((1.0 - t) * v0 + t * v1));
    }
  }
  return worst;
}

MonotonicityAudit monotonicity_audit(const FlowRecord& record, double tolerance) {
  MonotonicityAudit audit;
  audit.tolerance = tolerance;
  for (size_t t = 1; t < record.metrics.size(); ++t) {
    const double change = record.metrics[t].utility - record.metrics[t - 1].utility;
    audit.worst_decrease = std::min(audit.worst_decrease, change);
    if (change < -tolerance) audit.num_decreases += 1;
  }
  return audit;
}

double torus_optimal_value(double sigma_prior) {
  if (sigma_prior <= 0) throw ConfigError("sigma_prior must be positive");
  return -2.0 / (1.0 / (sigma_prior * sigma_prior) + 0.5);
}

Eigen::Vector2d torus_moment_residuals(const DesignMeasure& prob_measure) {
  Eigen::Vector2d r = Eigen::Vector2d::Zero();
  for (int i = 0; i < prob_measure.size(); ++i) {
    const double a = 4.0 * M_PI * prob_measure.positions[i][0];
    r[0] += prob_measure.weights[i] * std::cos(a);
    r[1] += prob_measure.weights[i] * std::sin(a);
  }
  return r / prob_measure.total_mass;
}

TorusOracleReport torus_oracle(double sigma_prior, const DesignMeasure& candidate) {
  TorusOracleReport rep;
  rep.optimal_value = torus_optimal_value(sigma_prior);
  rep.moment_residuals = torus_moment_residuals(candidate);
  return rep;
}

}  // namespace oedflow
