#include "oedflow/design.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace oedflow {

DesignMeasure DesignMeasure::uniform(std::vector<Point> positions, double total_mass) {
  DesignMeasure m;
  const int n = static_cast<int>(positions.size());
  if (n == 0) throw InputError("design measure needs at least one atom");
  m.positions = std::move(positions);
  m.weights = Eigen::VectorXd::Constant(n, total_mass / n);
  m.total_mass = total_mass;
  return m;
}

void DesignMeasure::validate(const Box& domain) const {
  if (static_cast<int>(positions.size()) != weights.size())
    throw InputError("design measure positions/weights size mismatch");
  if (total_mass <= 0) throw InputError("design measure mass must be positive");
  if ((weights.array() <= 0).any()) throw InputError("design measure weights must be positive");
  if (std::abs(weights.sum() - total_mass) > 1e-12 * std::max(1.0, total_mass))
    throw InputError("design measure weights must sum to the total mass");
  for (const Point& p : positions)
    if (!domain.contains(p, 1e-12)) throw InputError("design atom outside the closed domain");
}

DesignMeasure flatten(const EnsembleProduct& ens) {
  DesignMeasure m;
  m.positions = ens.particles;
  m.weights = Eigen::VectorXd::Constant(ens.size(), 1.0 / ens.per_ensemble);
  m.total_mass = static_cast<double>(ens.batch);
  return m;
}

Point ensemble_mean(const EnsembleProduct& ens, int b) {
  Point mean = Point::Zero();
  for (int i = 0; i < ens.per_ensemble; ++i) mean += ens.at(b, i);
  return mean / ens.per_ensemble;
}

double ensemble_variance(const EnsembleProduct& ens, int b) {
  const Point mean = ensemble_mean(ens, b);
  double acc = 0.0;
  for (int i = 0; i < ens.per_ensemble; ++i) acc += (ens.at(b, i) - mean).squaredNorm();
  return acc / ens.per_ensemble;
}

Eigen::MatrixXd pairwise_mean_distances(const EnsembleProduct& ens) {
  std::vector<Point> means(ens.batch);
  for (int b = 0; b < ens.batch; ++b) means[b] = ensemble_mean(ens, b);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(ens.batch, ens.batch);
  for (int a = 0; a < ens.batch; ++a)
    for (int b = 0; b < ens.batch; ++b)
      if (a != b) d(a, b) = (means[a] - means[b]).squaredNorm();
  return d;
}

Eigen::VectorXi histogram(const DesignMeasure& measure, int bins, const Box& domain) {
  if (bins < 1) throw InputError("histogram needs at least one bin");
  const int cells = domain.dim == 1 ? bins : bins * bins;
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(cells);
  auto bin_of = [&](double v, int d) {
    const double t = (v - domain.lo[d]) / (domain.hi[d] - domain.lo[d]);
    return std::clamp(static_cast<int>(t * bins), 0, bins - 1);
  };
  for (const Point& p : measure.positions) {
    if (domain.dim == 1)
      counts[bin_of(p[0], 0)] += 1;
    else
      counts[bin_of(p[1], 1) * bins + bin_of(p[0], 0)] += 1;
  }
  return counts;
}

namespace {

std::vector<AtomCluster> cluster_impl(const std::vector<Point>& pts, const Eigen::VectorXd& wts,
                                      double merge_radius) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((pts[i] - pts[j]).norm() <= merge_radius) parent[find(i)] = find(j);

  std::vector<AtomCluster> clusters;
  std::vector<int> root_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<int>(clusters.size());
      clusters.push_back({});
    }
    AtomCluster& c = clusters[root_of[r]];
    c.center += wts[i] * pts[i];
    c.mass += wts[i];
    c.count += 1;
  }
  for (AtomCluster& c : clusters) c.center /= c.mass;
  std::sort(clusters.begin(), clusters.end(),
            [](const AtomCluster& a, const AtomCluster& b) { return a.center[0] < b.center[0]; });
  return clusters;
}

}  // namespace

std::vector<AtomCluster> cluster_atoms(const DesignMeasure& measure, double merge_radius) {
  return cluster_impl(measure.positions, measure.weights, merge_radius);
}

std::vector<AtomCluster> cluster_points(const std::vector<Point>& pts, double merge_radius) {
  return cluster_impl(pts, Eigen::VectorXd::Ones(static_cast<int>(pts.size())), merge_radius);
}

}  // namespace oedflow
