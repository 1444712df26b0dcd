#include "oedflow/models.hpp"

#include <cmath>

#include "oedflow/interpolate.hpp"

namespace oedflow {

Eigen::VectorXd ObservationMap::feature(const Point& x) const {
  check_point(x);
  FeatureBatch fb = feature_batch({x}, false);
  return fb.values.col(0);
}

Eigen::MatrixXd ObservationMap::feature_jacobian(const Point& x) const {
  check_point(x);
  FeatureBatch fb = feature_batch({x}, true);
  Eigen::MatrixXd jac(output_dim_, domain_.dim);
  jac.col(0) = fb.dx.col(0);
  if (domain_.dim == 2) jac.col(1) = fb.dy.col(0);
  return jac;
}

// ---------------------------------------------------------------------------
// Poisson
// ---------------------------------------------------------------------------

PoissonMap::PoissonMap(ParameterGrid grid, double noise_std)
    : ObservationMap(noise_std, std::move(grid)) {
  if (grid_->dim != 1) throw ConfigError("poisson1d requires a 1d grid");
  grid_->validate();
}

FeatureBatch PoissonMap::feature_batch(const std::vector<Point>& pts, bool with_jacobian) const {
  const auto& g = *grid_;
  const int m = g.size();
  const int n = static_cast<int>(pts.size());
  FeatureBatch fb;
  fb.values.resize(m, n);
  if (with_jacobian) fb.dx.resize(m, n);
  const double inv_sigma = 1.0 / noise_std_;
  for (int j = 0; j < n; ++j) {
    const double x = pts[j][0];
    for (int i = 0; i < m; ++i) {
      const double z = g.points(i, 0);
      const double scale = inv_sigma * g.weights[i];
      if (x <= z) {
        fb.values(i, j) = scale * x * (1.0 - z);
        if (with_jacobian) fb.dx(i, j) = scale * (1.0 - z);
      } else {
        fb.values(i, j) = scale * z * (1.0 - x);
        if (with_jacobian) fb.dx(i, j) = scale * (-z);
      }
    }
  }
  return fb;
}

// ---------------------------------------------------------------------------
// Schroedinger
// ---------------------------------------------------------------------------

namespace {

// 1d factor of the mollified indicator: convolution of 1(|t-1/2|<=a) with a
// centered Gaussian of standard deviation eps.
double mollified_slab(double t, double a, double eps) {
  const double r = 1.0 / (eps * std::sqrt(2.0));
  return 0.5 * (std::erf((t - 0.5 + a) * r) - std::erf((t - 0.5 - a) * r));
}

}  // namespace

SchrodingerMap::SchrodingerMap(ParameterGrid grid, const SchrodingerOptions& opts, double noise_std)
    : ObservationMap(noise_std, std::move(grid)), opts_(opts) {
  if (grid_->dim != 2) throw ConfigError("schrodinger2d requires a 2d grid");
  grid_->validate();
  const double two_pi_sq = 2.0 * M_PI * M_PI;
  if (opts_.omega * opts_.omega >= two_pi_sq)
    throw ConfigError("well-posedness bound violated: omega^2 must be below 2*pi^2");
  if (opts_.mollifier_eps <= 0) throw ConfigError("mollifier_eps must be positive");

  n_ = static_cast<int>(std::lround(std::sqrt(double(grid_->size()))));
  if (n_ * n_ != grid_->size()) throw ConfigError("schrodinger2d grid must be square");
  h_ = 1.0 / (n_ + 1);

  const int m = n_ * n_;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * m);
  const double inv_h2 = 1.0 / (h_ * h_);
  for (int iy = 0; iy < n_; ++iy) {
    for (int ix = 0; ix < n_; ++ix) {
      const int k = iy * n_ + ix;
      const double v = potential((ix + 1) * h_, (iy + 1) * h_);
      trip.emplace_back(k, k, 4.0 * inv_h2 + v - opts_.omega * opts_.omega);
      if (ix > 0) trip.emplace_back(k, k - 1, -inv_h2);
      if (ix < n_ - 1) trip.emplace_back(k, k + 1, -inv_h2);
      if (iy > 0) trip.emplace_back(k, k - n_, -inv_h2);
      if (iy < n_ - 1) trip.emplace_back(k, k + n_, -inv_h2);
    }
  }
  op_.resize(m, m);
  op_.setFromTriplets(trip.begin(), trip.end());
  solver_.compute(op_);
  if (solver_.info() != Eigen::Success)
    throw NumericError("schrodinger operator factorization failed");
  min_pivot_ = solver_.vectorD().minCoeff();
  if (min_pivot_ <= 0) throw NumericError("schrodinger operator is not positive definite");
}

double SchrodingerMap::potential(double x, double y) const {
  return opts_.potential_magnitude *
         mollified_slab(x, opts_.potential_halfwidth, opts_.mollifier_eps) *
         mollified_slab(y, opts_.potential_halfwidth, opts_.mollifier_eps);
}

void SchrodingerMap::stencil_columns(const std::vector<Point>& pts, Eigen::MatrixXd& rhs,
                                     bool with_jacobian) const {
  const int m = n_ * n_;
  const int n = static_cast<int>(pts.size());
  const int cols_per_pt = with_jacobian ? 3 : 1;
  rhs.setZero(m, cols_per_pt * n);
  const int padded = n_ + 2;  // lattice including the zero Dirichlet ring
  for (int j = 0; j < n; ++j) {
    const CubicStencil sx = cubic_stencil(pts[j][0], padded, h_);
    const CubicStencil sy = cubic_stencil(pts[j][1], padded, h_);
    for (int a = 0; a < sx.count; ++a) {
      const int ix = sx.index[a] - 1;  // interior index
      if (ix < 0 || ix >= n_) continue;
      for (int b = 0; b < sy.count; ++b) {
        const int iy = sy.index[b] - 1;
        if (iy < 0 || iy >= n_) continue;
        const int k = iy * n_ + ix;
        rhs(k, cols_per_pt * j) += sx.value[a] * sy.value[b];
        if (with_jacobian) {
          rhs(k, cols_per_pt * j + 1) += sx.deriv[a] * sy.value[b];
          rhs(k, cols_per_pt * j + 2) += sx.value[a] * sy.deriv[b];
        }
      }
    }
  }
}

FeatureBatch SchrodingerMap::feature_batch(const std::vector<Point>& pts,
                                           bool with_jacobian) const {
  Eigen::MatrixXd rhs;
  stencil_columns(pts, rhs, with_jacobian);
  Eigen::MatrixXd sol = solver_.solve(rhs);
  if (solver_.info() != Eigen::Success) throw NumericError("schrodinger solve failed");
  sol /= noise_std_;

  const int n = static_cast<int>(pts.size());
  FeatureBatch fb;
  if (!with_jacobian) {
    fb.values = std::move(sol);
    return fb;
  }
  fb.values.resize(sol.rows(), n);
  fb.dx.resize(sol.rows(), n);
  fb.dy.resize(sol.rows(), n);
  for (int j = 0; j < n; ++j) {
    fb.values.col(j) = sol.col(3 * j);
    fb.dx.col(j) = sol.col(3 * j + 1);
    fb.dy.col(j) = sol.col(3 * j + 2);
  }
  return fb;
}

// ---------------------------------------------------------------------------
// Torus
// ---------------------------------------------------------------------------

TorusMap::TorusMap() : ObservationMap(1.0, Box::unit_interval(), 2) {}

FeatureBatch TorusMap::feature_batch(const std::vector<Point>& pts, bool with_jacobian) const {
  const int n = static_cast<int>(pts.size());
  FeatureBatch fb;
  fb.values.resize(2, n);
  if (with_jacobian) fb.dx.resize(2, n);
  for (int j = 0; j < n; ++j) {
    const double a = 2.0 * M_PI * pts[j][0];
    fb.values(0, j) = std::cos(a);
    fb.values(1, j) = std::sin(a);
    if (with_jacobian) {
      fb.dx(0, j) = -2.0 * M_PI * std::sin(a);
      fb.dx(1, j) = 2.0 * M_PI * std::cos(a);
    }
  }
  return fb;
}

std::shared_ptr<ObservationMap> poisson_observation_map(ParameterGrid grid, double noise_std) {
  return std::make_shared<PoissonMap>(std::move(grid), noise_std);
}

std::shared_ptr<ObservationMap> schrodinger_observation_map(ParameterGrid grid,
                                                            const SchrodingerOptions& opts,
                                                            double noise_std) {
  return std::make_shared<SchrodingerMap>(std::move(grid), opts, noise_std);
}

std::shared_ptr<ObservationMap> torus_observation_map() { return std::make_shared<TorusMap>(); }

}  // namespace oedflow
