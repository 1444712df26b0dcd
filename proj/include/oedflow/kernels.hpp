#pragma once

#include "oedflow/core.hpp"

namespace oedflow {

enum class KernelFamily {
  SquaredExponential,   // k(x,z) = exp(-|x-z|^2 / (2 s^2))
  NonstationaryProduct, // k(x,z) = p(x) p(z) exp(-(x-z)^2 / (2 s^2)), 1d
  GaussianInteraction,  // q(x,z) = exp(-|x-z|^2 / (2 s^2)), peak 1
  TorusCosine,          // k(x,z) = cos(2 pi (x-z)), arguments wrapped mod 1
};

// Closed set of covariance / interaction kernels. `lengthscale` is sigma_0
// for the covariance families and sigma_q for the interaction kernel;
// `curvature` is the quadratic prefactor coefficient of the nonstationary
// family, p(t) = 1 + curvature (t - 1/2)^2.
struct KernelSpec {
  KernelFamily family = KernelFamily::SquaredExponential;
  double lengthscale = 1.0;
  double curvature = 50.0;

  static KernelSpec squared_exponential(double sigma0);
  static KernelSpec nonstationary_product(double sigma0, double curvature = 50.0);
  static KernelSpec gaussian_interaction(double sigma_q);
  static KernelSpec torus_cosine();
};

// Unchecked fast path on padded fixed-size points.
double kernel_eval(const KernelSpec& spec, const Point& x, const Point& z);
Point kernel_grad_x(const KernelSpec& spec, const Point& x, const Point& z);

// Checked variants; reject dimension mismatches between x, z and the family.
double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& z);
Eigen::VectorXd kernel_grad_x(const KernelSpec& spec, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& z);

}  // namespace oedflow
