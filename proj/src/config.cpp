#include "oedflow/config.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace oedflow {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::SquaredExponential: return "squared_exponential";
    case KernelFamily::NonstationaryProduct: return "nonstationary_product";
    case KernelFamily::GaussianInteraction: return "gaussian_interaction";
    case KernelFamily::TorusCosine: return "torus_cosine";
  }
  return "?";
}

KernelFamily family_from(const std::string& s) {
  if (s == "squared_exponential") return KernelFamily::SquaredExponential;
  if (s == "nonstationary_product") return KernelFamily::NonstationaryProduct;
  if (s == "gaussian_interaction") return KernelFamily::GaussianInteraction;
  if (s == "torus_cosine") return KernelFamily::TorusCosine;
  throw ConfigError("unknown kernel family: " + s);
}

std::string model_name(ModelType t) {
  switch (t) {
    case ModelType::Poisson1d: return "poisson1d";
    case ModelType::Schrodinger2d: return "schrodinger2d";
    case ModelType::Torus: return "torus";
  }
  return "?";
}

ModelType model_from(const std::string& s) {
  if (s == "poisson1d") return ModelType::Poisson1d;
  if (s == "schrodinger2d") return ModelType::Schrodinger2d;
  if (s == "torus") return ModelType::Torus;
  throw ConfigError("unknown model.type: " + s);
}

std::string init_name(InitScheme s) {
  switch (s) {
    case InitScheme::Uniform: return "uniform";
    case InitScheme::UniformPartitioned: return "uniform_partitioned";
    case InitScheme::Explicit: return "explicit";
  }
  return "?";
}

InitScheme init_from(const std::string& s) {
  if (s == "uniform") return InitScheme::Uniform;
  if (s == "uniform_partitioned") return InitScheme::UniformPartitioned;
  if (s == "explicit") return InitScheme::Explicit;
  throw ConfigError("unknown flow.init: " + s);
}

std::string solver_name(SolverMode m) {
  switch (m) {
    case SolverMode::Auto: return "auto";
    case SolverMode::DenseCholesky: return "dense_cholesky";
    case SolverMode::WoodburyLowRank: return "woodbury_lowrank";
  }
  return "?";
}

SolverMode solver_from(const std::string& s) {
  if (s == "auto") return SolverMode::Auto;
  if (s == "dense_cholesky") return SolverMode::DenseCholesky;
  if (s == "woodbury_lowrank") return SolverMode::WoodburyLowRank;
  throw ConfigError("unknown solver.mode: " + s);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + key + ": " + v);
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(x);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": " + v);
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string ExperimentConfig::serialize() const {
  std::map<std::string, std::string> kv;
  kv["preset"] = preset.empty() ? "none" : preset;
  kv["model.type"] = model_name(model_type);
  kv["model.grid_points"] = std::to_string(grid_points);
  kv["model.noise_std"] = fmt(noise_std);
  kv["model.omega"] = fmt(omega);
  kv["model.potential.magnitude"] = fmt(potential_magnitude);
  kv["model.potential.halfwidth"] = fmt(potential_halfwidth);
  kv["model.potential.mollifier_eps"] = fmt(mollifier_eps);
  kv["prior.kernel.family"] = family_name(prior_kernel.family);
  kv["prior.kernel.sigma0"] = fmt(prior_kernel.lengthscale);
  kv["prior.kernel.curvature"] = fmt(prior_kernel.curvature);
  kv["prior.eigen_floor"] = fmt(eigen_floor);
  kv["prior.sigma_prior"] = fmt(sigma_prior);
  kv["flow.algorithm"] = std::to_string(algorithm);
  kv["flow.particles"] = std::to_string(flow.particles);
  kv["flow.iterations"] = std::to_string(flow.iterations);
  kv["flow.step_size"] = fmt(flow.step_size);
  kv["flow.batch"] = std::to_string(flow.batch);
  kv["flow.seed"] = std::to_string(flow.seed);
  kv["flow.init"] = init_name(flow.init);
  kv["flow.snapshot_stride"] = std::to_string(flow.snapshot_stride);
  kv["regularization.alpha"] = fmt(flow.reg.alpha);
  kv["regularization.beta"] = fmt(flow.reg.beta);
  kv["regularization.sigma_q"] = fmt(flow.reg.repulsion.lengthscale);
  kv["solver.mode"] = solver_name(solver);
  kv["outputs.directory"] = output_dir;
  kv["outputs.landscape_grid"] = std::to_string(landscape_grid);
  kv["certify.tolerance"] = fmt(certify_tol);
  kv["certify.merge_radius"] = fmt(merge_radius);

  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
  return os.str();
}

std::string ExperimentConfig::hash() const {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(serialize());
  return os.str();
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const std::string k = trim(key), v = trim(value);
  if (k == "preset") {
    cfg = preset_config(v);
    return;
  }
  if (k == "model.type") cfg.model_type = model_from(v);
  else if (k == "model.grid_points") cfg.grid_points = to_int(k, v);
  else if (k == "model.noise_std") cfg.noise_std = to_double(k, v);
  else if (k == "model.omega") cfg.omega = to_double(k, v);
  else if (k == "model.potential.magnitude") cfg.potential_magnitude = to_double(k, v);
  else if (k == "model.potential.halfwidth") cfg.potential_halfwidth = to_double(k, v);
  else if (k == "model.potential.mollifier_eps") cfg.mollifier_eps = to_double(k, v);
  else if (k == "prior.kernel.family") cfg.prior_kernel.family = family_from(v);
  else if (k == "prior.kernel.sigma0") cfg.prior_kernel.lengthscale = to_double(k, v);
  else if (k == "prior.kernel.curvature") cfg.prior_kernel.curvature = to_double(k, v);
  else if (k == "prior.eigen_floor") cfg.eigen_floor = to_double(k, v);
  else if (k == "prior.sigma_prior") cfg.sigma_prior = to_double(k, v);
  else if (k == "flow.algorithm") cfg.algorithm = to_int(k, v);
  else if (k == "flow.particles") cfg.flow.particles = to_int(k, v);
  else if (k == "flow.iterations") cfg.flow.iterations = to_int(k, v);
  else if (k == "flow.step_size") cfg.flow.step_size = to_double(k, v);
  else if (k == "flow.batch") cfg.flow.batch = to_int(k, v);
  else if (k == "flow.seed") cfg.flow.seed = static_cast<std::uint64_t>(std::stoull(v));
  else if (k == "flow.init") cfg.flow.init = init_from(v);
  else if (k == "flow.snapshot_stride") cfg.flow.snapshot_stride = to_int(k, v);
  else if (k == "regularization.alpha") cfg.flow.reg.alpha = to_double(k, v);
  else if (k == "regularization.beta") cfg.flow.reg.beta = to_double(k, v);
  else if (k == "regularization.sigma_q")
    cfg.flow.reg.repulsion = KernelSpec::gaussian_interaction(to_double(k, v));
  else if (k == "solver.mode") cfg.solver = solver_from(v);
  else if (k == "outputs.directory") cfg.output_dir = v;
  else if (k == "outputs.landscape_grid") cfg.landscape_grid = to_int(k, v);
  else if (k == "certify.tolerance") cfg.certify_tol = to_double(k, v);
  else if (k == "certify.merge_radius") cfg.merge_radius = to_double(k, v);
  else throw ConfigError("unknown config key: " + k);
}

ExperimentConfig parse_config(const std::string& text) {
  // Preset line (if any) is applied first so explicit keys override it.
  std::vector<std::pair<std::string, std::string>> entries;
  std::string preset_value;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "preset")
      preset_value = value;
    else
      entries.emplace_back(key, value);
  }
  ExperimentConfig cfg;
  if (!preset_value.empty() && preset_value != "none") cfg = preset_config(preset_value);
  for (const auto& [k, v] : entries) apply_override(cfg, k, v);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.preset = name;
  if (name == "poisson_b2") {
    cfg.model_type = ModelType::Poisson1d;
    cfg.grid_points = 100;
    cfg.noise_std = 0.1;
    cfg.prior_kernel = KernelSpec::nonstationary_product(0.01);
    cfg.algorithm = 2;
    cfg.flow.batch = 2;
    cfg.flow.particles = 120;
    cfg.flow.iterations = 500;
    cfg.flow.step_size = 4e-3;
    cfg.flow.init = InitScheme::Uniform;
    cfg.flow.seed = 3;
    cfg.flow.reg.alpha = 0.008;
    cfg.flow.reg.beta = 0.0;
  } else if (name == "schrodinger_b4") {
    cfg.model_type = ModelType::Schrodinger2d;
    cfg.grid_points = 60;
    cfg.noise_std = 0.1;
    cfg.omega = 1.0;
    cfg.prior_kernel = KernelSpec::squared_exponential(0.5);
    cfg.algorithm = 2;
    cfg.flow.batch = 4;
    cfg.flow.particles = 100;
    cfg.flow.iterations = 120;
    cfg.flow.step_size = 8e-3;
    cfg.flow.init = InitScheme::Uniform;
    cfg.flow.seed = 1;
    cfg.flow.reg.alpha = 5e-4;
    cfg.flow.reg.beta = 0.0;
  } else if (name == "sensitivity_alpha") {
    cfg.model_type = ModelType::Poisson1d;
    cfg.grid_points = 100;
    cfg.noise_std = 0.1;
    cfg.prior_kernel = KernelSpec::nonstationary_product(0.01);
    cfg.algorithm = 2;
    cfg.flow.batch = 3;
    cfg.flow.particles = 900;
    cfg.flow.iterations = 300;
    cfg.flow.step_size = 1e-5;
    cfg.flow.init = InitScheme::UniformPartitioned;
    cfg.flow.seed = 1;
    cfg.flow.reg.alpha = 1e-2;
    cfg.flow.reg.beta = 0.0;
  } else if (name == "sensitivity_beta") {
    cfg.model_type = ModelType::Poisson1d;
    cfg.grid_points = 100;
    cfg.noise_std = 0.1;
    cfg.prior_kernel = KernelSpec::nonstationary_product(0.01);
    cfg.algorithm = 2;
    cfg.flow.batch = 8;
    cfg.flow.particles = 600;
    cfg.flow.iterations = 1000;
    cfg.flow.step_size = 4e-3;
    cfg.flow.init = InitScheme::UniformPartitioned;
    cfg.flow.seed = 1;
    cfg.flow.reg.alpha = 0.05;
    cfg.flow.reg.beta = 1e-3;
    cfg.flow.reg.repulsion = KernelSpec::gaussian_interaction(0.009);
  } else if (name == "torus") {
    cfg.model_type = ModelType::Torus;
    cfg.sigma_prior = 1.0;
    cfg.algorithm = 1;
    cfg.flow.batch = 1;
    cfg.flow.particles = 64;
    cfg.flow.iterations = 400;
    cfg.flow.step_size = 0.05;
    cfg.flow.init = InitScheme::Uniform;
    cfg.flow.seed = 1;
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  return cfg;
}

}  // namespace oedflow
