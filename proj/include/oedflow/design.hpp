#pragma once

#include <vector>

#include "oedflow/core.hpp"

namespace oedflow {

// Weighted particle set representing a positive measure of total mass B.
struct DesignMeasure {
  std::vector<Point> positions;
  Eigen::VectorXd weights;
  double total_mass = 1.0;

  int size() const { return static_cast<int>(positions.size()); }
  static DesignMeasure uniform(std::vector<Point> positions, double total_mass);
  // Checks mass/positivity/domain invariants; throws InputError on failure.
  void validate(const Box& domain) const;
};

// B named particle ensembles of N particles each, the computational carrier
// of the product measure in the tensorized flow. Particle (i, b) is stored
// at index b*N + i (ensemble-major).
struct EnsembleProduct {
  int batch = 1;          // B
  int per_ensemble = 1;   // N
  std::vector<Point> particles;

  EnsembleProduct() = default;
  EnsembleProduct(int batch_, int per_ensemble_)
      : batch(batch_), per_ensemble(per_ensemble_),
        particles(static_cast<size_t>(batch_) * per_ensemble_, Point::Zero()) {}

  Point& at(int b, int i) { return particles[static_cast<size_t>(b) * per_ensemble + i]; }
  const Point& at(int b, int i) const {
    return particles[static_cast<size_t>(b) * per_ensemble + i];
  }
  int size() const { return batch * per_ensemble; }
};

// N*B atoms of weight 1/N each; total mass B.
DesignMeasure flatten(const EnsembleProduct& ens);

Point ensemble_mean(const EnsembleProduct& ens, int b);
// Population (1/N) mean squared deviation from the ensemble mean.
double ensemble_variance(const EnsembleProduct& ens, int b);

// Squared Euclidean distances between ensemble means, B x B.
Eigen::MatrixXd pairwise_mean_distances(const EnsembleProduct& ens);

// Atom counts over `bins` equal cells along each domain axis (bins cells in
// 1d, bins^2 row-major in 2d).
Eigen::VectorXi histogram(const DesignMeasure& measure, int bins, const Box& domain);

struct AtomCluster {
  Point center = Point::Zero();  // mass-weighted
  double mass = 0.0;
  int count = 0;
};

// Single-linkage clustering of atoms: atoms closer than `merge_radius` are
// chained into one cluster. Clusters are sorted by their first coordinate.
std::vector<AtomCluster> cluster_atoms(const DesignMeasure& measure, double merge_radius);
std::vector<AtomCluster> cluster_points(const std::vector<Point>& pts, double merge_radius);

}  // namespace oedflow
