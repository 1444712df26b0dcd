#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace oedflow {

// Spatial point in the design domain. The domain is 1- or 2-dimensional;
// points are stored as fixed-size vectors with unused coordinates equal to
// zero, so squared distances and kernel evaluations are dimension-agnostic.
using Point = Eigen::Vector2d;

inline Point make_point(double x) { return Point(x, 0.0); }
inline Point make_point(double x, double y) { return Point(x, y); }

// Axis-aligned closed box, the design domain.
struct Box {
  int dim = 1;
  Point lo = Point::Zero();
  Point hi = Point::Zero();

  static Box unit_interval() { return Box{1, Point(0.0, 0.0), Point(1.0, 0.0)}; }
  static Box unit_square() { return Box{2, Point(0.0, 0.0), Point(1.0, 1.0)}; }

  bool contains(const Point& x, double slack = 0.0) const {
    for (int d = 0; d < dim; ++d) {
      if (x[d] < lo[d] - slack || x[d] > hi[d] + slack) return false;
    }
    return true;
  }
  double volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= hi[d] - lo[d];
    return v;
  }
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Portable uniform double in [0, 1) from a 64-bit generator state. Fixed
// bit-level mapping keeps trajectories reproducible across standard
// libraries (std::uniform_real_distribution is implementation-defined).
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace oedflow
