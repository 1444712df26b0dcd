#pragma once

#include "oedflow/regularize.hpp"
#include "oedflow/utility.hpp"

namespace oedflow {

enum class InitScheme { Uniform, UniformPartitioned, Explicit };

struct FlowConfig {
  int particles = 100;     // total particle count across ensembles
  int iterations = 100;    // T
  double step_size = 1e-2; // dt
  int batch = 1;           // B
  RegularizerConfig reg;
  InitScheme init = InitScheme::Uniform;
  std::vector<Point> explicit_init;  // used when init == Explicit
  std::uint64_t seed = 0;
  int snapshot_stride = 1;

  void validate() const {
    if (particles < 1 || iterations < 1 || batch < 1) throw ConfigError("N, T, B must be >= 1");
    if (step_size <= 0) throw ConfigError("step size must be positive");
    if (snapshot_stride < 1) throw ConfigError("snapshot stride must be >= 1");
    reg.validate();
  }
};

struct FlowIterate {
  double utility = 0.0;
  double r_v = 0.0;
  double r_r = 0.0;
  double max_displacement = 0.0;
};

struct FlowRecord {
  std::vector<FlowIterate> metrics;                       // length T+1
  std::vector<std::pair<int, EnsembleProduct>> snapshots;  // thinned, keeps 0 and T
  EnsembleProduct final_ensemble;
  DesignMeasure final_design;  // mass-B flattened measure

  // Largest observed single-step utility decrease (<= 0), a dt diagnostic.
  double worst_utility_decrease() const;
};

// Error raised when a step produces non-finite positions or gradients.
struct FlowDivergence : NumericError {
  int iteration;
  explicit FlowDivergence(int iter)
      : NumericError("flow diverged at iteration " + std::to_string(iter)), iteration(iter) {}
};

Point project_to_domain(const Point& x, const Box& box);

// Plain particle flow of the expected utility: one cloud of cfg.particles
// particles, no regularization terms.
FlowRecord run_algorithm1(const UtilityEngine& engine, const FlowConfig& cfg);

// Regularized tensorized flow: cfg.batch ensembles of cfg.particles/cfg.batch
// particles, variance and repulsion regularizers active.
FlowRecord run_algorithm2(const UtilityEngine& engine, const FlowConfig& cfg);

}  // namespace oedflow
