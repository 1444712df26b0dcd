#include "oedflow/flow.hpp"

#include <cmath>
#include <random>

namespace oedflow {

double FlowRecord::worst_utility_decrease() const {
  double worst = 0.0;
  for (size_t t = 1; t < metrics.size(); ++t)
    worst = std::min(worst, metrics[t].utility - metrics[t - 1].utility);
  return worst;
}

Point project_to_domain(const Point& x, const Box& box) {
  Point out = x;
  for (int d = 0; d < box.dim; ++d) out[d] = std::clamp(out[d], box.lo[d], box.hi[d]);
  return out;
}

namespace {

EnsembleProduct initial_ensemble(const FlowConfig& cfg, int n_ens, int per_ens, const Box& box) {
  EnsembleProduct ens(n_ens, per_ens);
  if (cfg.init == InitScheme::Explicit) {
    if (static_cast<int>(cfg.explicit_init.size()) != ens.size())
      throw ConfigError("explicit init needs one point per particle");
    ens.particles = cfg.explicit_init;
    for (Point& p : ens.particles)
      if (!box.contains(p, 1e-12)) throw ConfigError("explicit init point outside the domain");
    return ens;
  }
  std::mt19937_64 rng(cfg.seed);
  for (int b = 0; b < n_ens; ++b) {
    for (int i = 0; i < per_ens; ++i) {
      Point p = Point::Zero();
      for (int d = 0; d < box.dim; ++d) {
        double lo = box.lo[d], hi = box.hi[d];
        if (cfg.init == InitScheme::UniformPartitioned && d == 0) {
          const double width = (hi - lo) / n_ens;
          lo = box.lo[d] + b * width;
          hi = lo + width;
        }
        p[d] = lo + uniform01(rng) * (hi - lo);
      }
      ens.at(b, i) = p;
    }
  }
  return ens;
}

FlowRecord run_flow(const UtilityEngine& engine, const FlowConfig& cfg, bool tensorized) {
  cfg.validate();
  const Box& box = engine.domain();
  const int n_ens = tensorized ? cfg.batch : 1;
  if (cfg.particles % n_ens != 0)
    throw ConfigError("particle count must be divisible by the batch size");
  const int per_ens = cfg.particles / n_ens;
  const double alpha = tensorized ? cfg.reg.alpha : 0.0;
  const double beta = tensorized ? cfg.reg.beta : 0.0;

  EnsembleProduct ens = initial_ensemble(cfg, n_ens, per_ens, box);

  FlowRecord rec;
  rec.metrics.reserve(cfg.iterations + 1);
  auto record_snapshot = [&](int t) {
    if (t % cfg.snapshot_stride == 0 || t == cfg.iterations) rec.snapshots.emplace_back(t, ens);
  };

  double max_disp = 0.0;
  for (int t = 0; t <= cfg.iterations; ++t) {
    // Measure of mass B on the current particles; one factorization serves
    // the recorded utility and every particle update of this step.
    DesignMeasure nu = flatten(ens);
    const double scale = engine.design_mass() / nu.total_mass;
    nu.weights *= scale;
    nu.total_mass = engine.design_mass();

    ResolventState state = engine.assemble_resolvent(nu);
    FlowIterate it;
    it.utility = -state.posterior_trace();
    it.r_v = variance_value(ens);
    it.r_r = n_ens > 1 ? repulsion_value(ens, cfg.reg.repulsion) : 0.0;
    it.max_displacement = max_disp;
    rec.metrics.push_back(it);
    record_snapshot(t);
    if (t == cfg.iterations) break;

    Eigen::MatrixXd grad = engine.first_variation_gradients(state, ens.particles);
    std::vector<Point> var_grad;
    if (alpha > 0) var_grad = variance_gradients(ens);
    std::vector<Point> rep_grad;
    if (beta > 0) rep_grad = repulsion_gradients(ens, cfg.reg.repulsion);

    max_disp = 0.0;
    EnsembleProduct next = ens;
    for (int k = 0; k < ens.size(); ++k) {
      Point step = Point::Zero();
      for (int d = 0; d < box.dim; ++d) step[d] = grad(k, d);
      if (alpha > 0) step -= alpha * var_grad[k];
      if (beta > 0) step -= beta * rep_grad[k];
      if (!step.allFinite()) throw FlowDivergence(t + 1);
      const Point moved = project_to_domain(ens.particles[k] + cfg.step_size * step, box);
      max_disp = std::max(max_disp, (moved - ens.particles[k]).norm());
      next.particles[k] = moved;
    }
    ens = std::move(next);
  }

  rec.final_ensemble = ens;
  rec.final_design = flatten(ens);
  if (!tensorized) {
    // Algorithm 1 output is nu = B * mu_N^T.
    rec.final_design.weights *= engine.design_mass();
    rec.final_design.total_mass = engine.design_mass();
  }
  return rec;
}

}  // namespace

FlowRecord run_algorithm1(const UtilityEngine& engine, const FlowConfig& cfg) {
  return run_flow(engine, cfg, false);
}

FlowRecord run_algorithm2(const UtilityEngine& engine, const FlowConfig& cfg) {
  return run_flow(engine, cfg, true);
}

}  // namespace oedflow
