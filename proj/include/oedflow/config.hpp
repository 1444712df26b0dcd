#pragma once

#include <map>
#include <optional>
#include <string>

#include "oedflow/flow.hpp"

namespace oedflow {

enum class ModelType { Poisson1d, Schrodinger2d, Torus };

// Full experiment description. Built from a dotted-key text config with
// optional preset expansion; precedence is override > file > preset > default.
struct ExperimentConfig {
  std::string preset;  // empty or one of the named presets

  ModelType model_type = ModelType::Poisson1d;
  int grid_points = 100;     // total nodes in 1d, nodes per side in 2d
  double noise_std = 0.1;
  double omega = 1.0;
  double potential_magnitude = 200.0;
  double potential_halfwidth = 0.08;
  double mollifier_eps = 0.02;

  KernelSpec prior_kernel = KernelSpec::nonstationary_product(0.01);
  double eigen_floor = 0.0;
  double sigma_prior = 1.0;  // torus coefficient prior std

  int algorithm = 2;  // 1 = plain flow, 2 = regularized tensorized flow
  FlowConfig flow;
  SolverMode solver = SolverMode::Auto;

  std::string output_dir = "out";
  int landscape_grid = 100;
  double certify_tol = 1e-3;
  double merge_radius = 1e-3;

  // Canonical dotted-key rendering of every field (sorted by key).
  std::string serialize() const;
  // FNV-1a hash of the canonical rendering, printed into every CSV.
  std::string hash() const;
};

// Parses dotted `key = value` lines ('#' comments); unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Applies `key=value` override strings on top of a config.
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Named experiment presets mirroring the reference experiments.
ExperimentConfig preset_config(const std::string& name);

std::uint64_t fnv1a(const std::string& text);

}  // namespace oedflow
