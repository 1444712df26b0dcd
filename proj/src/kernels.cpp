#include "oedflow/kernels.hpp"

#include <cmath>

namespace oedflow {

KernelSpec KernelSpec::squared_exponential(double sigma0) {
  if (sigma0 <= 0) throw ConfigError("kernel lengthscale must be positive");
  return {KernelFamily::SquaredExponential, sigma0, 0.0};
}

KernelSpec KernelSpec::nonstationary_product(double sigma0, double curvature) {
  if (sigma0 <= 0) throw ConfigError("kernel lengthscale must be positive");
  return {KernelFamily::NonstationaryProduct, sigma0, curvature};
}

KernelSpec KernelSpec::gaussian_interaction(double sigma_q) {
  if (sigma_q <= 0) throw ConfigError("kernel lengthscale must be positive");
  return {KernelFamily::GaussianInteraction, sigma_q, 0.0};
}

KernelSpec KernelSpec::torus_cosine() { return {KernelFamily::TorusCosine, 1.0, 0.0}; }

namespace {

inline double wrap_diff(double x, double z) {
  double d = x - z;
  return d - std::floor(d);  // representative in [0,1)
}

inline double nonstationary_prefactor(double t, double c) {
  const double u = t - 0.5;
  return 1.0 + c * u * u;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Point& x, const Point& z) {
  switch (spec.family) {
    case KernelFamily::SquaredExponential:
    case KernelFamily::GaussianInteraction: {
      const double s2 = spec.lengthscale * spec.lengthscale;
      return std::exp(-(x - z).squaredNorm() / (2.0 * s2));
    }
    case KernelFamily::NonstationaryProduct: {
      const double s2 = spec.lengthscale * spec.lengthscale;
      const double d = x[0] - z[0];
      return nonstationary_prefactor(x[0], spec.curvature) *
             nonstationary_prefactor(z[0], spec.curvature) * std::exp(-d * d / (2.0 * s2));
    }
    case KernelFamily::TorusCosine:
      return std::cos(2.0 * M_PI * wrap_diff(x[0], z[0]));
  }
  return 0.0;
}

Point kernel_grad_x(const KernelSpec& spec, const Point& x, const Point& z) {
  switch (spec.family) {
    case KernelFamily::SquaredExponential:
    case KernelFamily::GaussianInteraction: {
      const double s2 = spec.lengthscale * spec.lengthscale;
      const double k = std::exp(-(x - z).squaredNorm() / (2.0 * s2));
      return (-(k / s2)) * (x - z);
    }
    case KernelFamily::NonstationaryProduct: {
      const double s2 = spec.lengthscale * spec.lengthscale;
      const double d = x[0] - z[0];
      const double e = std::exp(-d * d / (2.0 * s2));
      const double px = nonstationary_prefactor(x[0], spec.curvature);
      const double pz = nonstationary_prefactor(z[0], spec.curvature);
      const double dpx = 2.0 * spec.curvature * (x[0] - 0.5);
      return Point(pz * e * (dpx - px * d / s2), 0.0);
    }
    case KernelFamily::TorusCosine:
      return Point(-2.0 * M_PI * std::sin(2.0 * M_PI * wrap_diff(x[0], z[0])), 0.0);
  }
  return Point::Zero();
}

namespace {

int family_dim(const KernelSpec& spec) {
  switch (spec.family) {
    case KernelFamily::NonstationaryProduct:
    case KernelFamily::TorusCosine:
      return 1;
    default:
      return 0;  // any
  }
}

Point to_point(const Eigen::VectorXd& v) {
  Point p = Point::Zero();
  for (int d = 0; d < v.size(); ++d) p[d] = v[d];
  return p;
}

void check_args(const KernelSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
  if (x.size() != z.size()) throw InputError("kernel arguments have mismatched dimensions");
  if (x.size() < 1 || x.size() > 2) throw InputError("kernel arguments must be 1- or 2-dimensional");
  const int req = family_dim(spec);
  if (req != 0 && x.size() != req)
    throw InputError("kernel family is one-dimensional but arguments are not");
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
  check_args(spec, x, z);
  return kernel_eval(spec, to_point(x), to_point(z));
}

Eigen::VectorXd kernel_grad_x(const KernelSpec& spec, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& z) {
  check_args(spec, x, z);
  Point g = kernel_grad_x(spec, to_point(x), to_point(z));
  return g.head(x.size());
}

}  // namespace oedflow
