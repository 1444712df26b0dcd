#include "oedflow/utility.hpp"

#include <cmath>

namespace oedflow {

namespace {
constexpr int kChunk = 512;
}

UtilityEngine::UtilityEngine(std::shared_ptr<const ObservationMap> map, PriorModel prior,
                             double design_mass, SolverMode mode)
    : map_(std::move(map)), prior_(std::move(prior)), mass_(design_mass), mode_(mode) {
  if (mass_ <= 0) throw ConfigError("design mass must be positive");
  const int m = map_->output_dim();
  if (prior_.size() != m) throw ConfigError("prior size does not match the observation map");
  if (const ParameterGrid* g = map_->grid()) {
    Eigen::VectorXd sw = g->weights.cwiseSqrt();
    inv_sqrt_w_ = sw.cwiseInverse();
    chat_ = sw.asDiagonal() * prior_.cov() * sw.asDiagonal();
  } else {
    inv_sqrt_w_ = Eigen::VectorXd::Ones(m);
    chat_ = prior_.cov();
  }
  chat_ = 0.5 * (chat_ + chat_.transpose().eval());
  chat_trace_ = chat_.trace();
}

const Eigen::MatrixXd& UtilityEngine::weighted_sqrt_cov() const {
  if (chat_sqrt_.size() == 0) chat_sqrt_ = symmetric_sqrt(chat_, prior_.eigen_floor());
  return chat_sqrt_;
}

FeatureBatch UtilityEngine::half_basis_features(const std::vector<Point>& pts,
                                                bool with_jacobian) const {
  FeatureBatch fb = map_->feature_batch(pts, with_jacobian);
  fb.values = inv_sqrt_w_.asDiagonal() * fb.values;
  if (fb.dx.size() > 0) fb.dx = inv_sqrt_w_.asDiagonal() * fb.dx;
  if (fb.dy.size() > 0) fb.dy = inv_sqrt_w_.asDiagonal() * fb.dy;
  return fb;
}

Eigen::VectorXd UtilityEngine::preconditioned_feature(const Point& x) const {
  if (!domain().contains(x, 1e-12)) throw InputError("design point outside the closed domain");
  FeatureBatch fb = half_basis_features({x}, false);
  return weighted_sqrt_cov() * fb.values.col(0);
}

Eigen::MatrixXd UtilityEngine::preconditioned_jacobian(const Point& x) const {
  if (!domain().contains(x, 1e-12)) throw InputError("design point outside the closed domain");
  FeatureBatch fb = half_basis_features({x}, true);
  Eigen::MatrixXd jac(map_->output_dim(), domain().dim);
  jac.col(0) = weighted_sqrt_cov() * fb.dx.col(0);
  if (domain().dim == 2) jac.col(1) = weighted_sqrt_cov() * fb.dy.col(0);
  return jac;
}

bool UtilityEngine::use_woodbury(int atoms) const {
  switch (mode_) {
    case SolverMode::DenseCholesky:
      return false;
    case SolverMode::WoodburyLowRank:
      return true;
    case SolverMode::Auto:
      return atoms < map_->output_dim() / 4;
  }
  return false;
}

ResolventState UtilityEngine::assemble_resolvent(const DesignMeasure& measure) const {
  const int n = measure.size();
  if (n != measure.weights.size())
    throw InputError("design measure positions/weights size mismatch");
  FeatureBatch fb = half_basis_features(measure.positions, false);

  ResolventState st;
  st.engine_ = this;
  st.mass_ = measure.total_mass;
  st.woodbury_ = use_woodbury(n);
  Eigen::VectorXd sw = measure.weights.cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd fw = fb.values * sw.asDiagonal();
  if (st.woodbury_) {
    st.cfw_.noalias() = chat_ * fw;
    Eigen::MatrixXd inner = Eigen::MatrixXd::Identity(n, n);
    inner.noalias() += fw.transpose() * st.cfw_;
    st.inner_.compute(inner);
    if (st.inner_.info() != Eigen::Success)
      throw NumericError("resolvent inner factorization failed");
    st.fw_ = std::move(fw);
  } else {
    const Eigen::MatrixXd& ch = weighted_sqrt_cov();
    Eigen::MatrixXd g = ch * fw;
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(map_->output_dim(), map_->output_dim());
    s.noalias() += g * g.transpose();
    st.dense_.compute(s);
    if (st.dense_.info() != Eigen::Success) throw NumericError("resolvent factorization failed");
  }
  return st;
}

Eigen::MatrixXd ResolventState::apply_posterior(const Eigen::MatrixXd& cols) const {
  const Eigen::MatrixXd& chat = engine_->chat_;
  if (woodbury_) {
    // P f = C f - (C Fw) (I + Fw^T C Fw)^{-1} (C Fw)^T f
    Eigen::MatrixXd cf = chat * cols;
    if (fw_.cols() > 0) cf.noalias() -= cfw_ * inner_.solve(cfw_.transpose() * cols);
    return cf;
  }
  const Eigen::MatrixXd& ch = engine_->weighted_sqrt_cov();
  return ch * dense_.solve(ch * cols);
}

Eigen::MatrixXd ResolventState::apply_resolvent(const Eigen::MatrixXd& cols) const {
  if (!woodbury_) return dense_.solve(cols);
  const Eigen::MatrixXd& ch = engine_->weighted_sqrt_cov();
  Eigen::MatrixXd g = ch * fw_;
  Eigen::MatrixXd out = cols;
  // Same inner matrix: I + Fw^T C Fw = I + G^T G.
  out.noalias() -= g * inner_.solve(g.transpose() * cols);
  return out;
}

double ResolventState::posterior_trace() const {
  if (woodbury_) {
    if (fw_.cols() == 0) return engine_->chat_trace_;
    Eigen::MatrixXd gram = cfw_.transpose() * cfw_;
    return engine_->chat_trace_ - inner_.solve(gram).trace();
  }
  const Eigen::MatrixXd& ch = engine_->weighted_sqrt_cov();
  Eigen::MatrixXd x = dense_.solve(ch);
  return (ch.array() * x.array()).sum();
}

double UtilityEngine::expected_utility(const DesignMeasure& measure) const {
  return -assemble_resolvent(measure).posterior_trace();
}

double UtilityEngine::expected_utility_prob(const DesignMeasure& prob_measure) const {
  DesignMeasure scaled = prob_measure;
  scaled.weights *= mass_;
  scaled.total_mass = prob_measure.total_mass * mass_;
  return expected_utility(scaled);
}

Eigen::MatrixXd UtilityEngine::posterior_covariance(const DesignMeasure& measure) const {
  ResolventState st = assemble_resolvent(measure);
  const int m = map_->output_dim();
  if (st.woodbury()) {
    Eigen::MatrixXd post = chat_;
    if (st.fw_.cols() > 0) post.noalias() -= st.cfw_ * st.inner_.solve(st.cfw_.transpose());
    return 0.5 * (post + post.transpose().eval());
  }
  Eigen::MatrixXd post = st.apply_posterior(Eigen::MatrixXd::Identity(m, m));
  return 0.5 * (post + post.transpose().eval());
}

double UtilityEngine::first_variation(const ResolventState& state, const Point& x) const {
  FeatureBatch fb = half_basis_features({x}, false);
  Eigen::MatrixXd p = state.apply_posterior(fb.values);
  return state.mass() * p.col(0).squaredNorm();
}

Eigen::VectorXd UtilityEngine::first_variation_gradient(const ResolventState& state,
                                                        const Point& x) const {
  std::vector<Point> pts{x};
  Eigen::MatrixXd g = first_variation_gradients(state, pts);
  return g.row(0).transpose();
}

double UtilityEngine::first_variation(const DesignMeasure& prob_measure, const Point& x) const {
  DesignMeasure scaled = prob_measure;
  scaled.weights *= mass_;
  scaled.total_mass = prob_measure.total_mass * mass_;
  return first_variation(assemble_resolvent(scaled), x);
}

Eigen::VectorXd UtilityEngine::first_variation_gradient(const DesignMeasure& prob_measure,
                                                        const Point& x) const {
  DesignMeasure scaled = prob_measure;
  scaled.weights *= mass_;
  scaled.total_mass = prob_measure.total_mass * mass_;
  return first_variation_gradient(assemble_resolvent(scaled), x);
}

Eigen::VectorXd UtilityEngine::tensor_utility_gradient(const EnsembleProduct& ens, int i,
                                                       int b) const {
  if (b < 0 || b >= ens.batch || i < 0 || i >= ens.per_ensemble)
    throw InputError("ensemble index out of range");
  ResolventState st = assemble_resolvent(flatten(ens));
  return first_variation_gradient(st, ens.at(b, i));
}

Eigen::VectorXd UtilityEngine::first_variation_values(const ResolventState& state,
                                                      const std::vector<Point>& pts) const {
  const int n = static_cast<int>(pts.size());
  Eigen::VectorXd out(n);
  for (int lo = 0; lo < n; lo += kChunk) {
    const int len = std::min(kChunk, n - lo);
    std::vector<Point> chunk(pts.begin() + lo, pts.begin() + lo + len);
    FeatureBatch fb = half_basis_features(chunk, false);
    Eigen::MatrixXd p = state.apply_posterior(fb.values);
    out.segment(lo, len) = state.mass() * p.colwise().squaredNorm().transpose();
  }
  return out;
}

Eigen::MatrixXd UtilityEngine::first_variation_gradients(const ResolventState& state,
                                                         const std::vector<Point>& pts) const {
  const int n = static_cast<int>(pts.size());
  const int dim = domain().dim;
  Eigen::MatrixXd out(n, dim);
  for (int lo = 0; lo < n; lo += kChunk) {
    const int len = std::min(kChunk, n - lo);
    std::vector<Point> chunk(pts.begin() + lo, pts.begin() + lo + len);
    FeatureBatch fb = half_basis_features(chunk, true);
    Eigen::MatrixXd pv = state.apply_posterior(fb.values);
    Eigen::MatrixXd px = state.apply_posterior(fb.dx);
    out.col(0).segment(lo, len) =
        2.0 * state.mass() * (pv.array() * px.array()).colwise().sum().transpose();
    if (dim == 2) {
      Eigen::MatrixXd py = state.apply_posterior(fb.dy);
      out.col(1).segment(lo, len) =
          2.0 * state.mass() * (pv.array() * py.array()).colwise().sum().transpose();
    }
  }
  return out;
}

}  // namespace oedflow
