#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace roundness {

/// A finite set of labelled points with a symmetric distance matrix.
///
/// Instances are immutable once built. `from_matrix` validates user data;
/// the builders below produce metrics that are correct by construction and
/// use the unchecked constructor.
class FiniteMetricSpace {
 public:
  /// Validating constructor; throws Error(InvalidMetric) listing the first
  /// violated invariant.
  static FiniteMetricSpace from_matrix(std::vector<std::string> labels,
                                       std::vector<std::vector<double>> dist);

  FiniteMetricSpace() = default;

  /// Unchecked; `dist` is row-major n*n.
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist);

  std::size_t size() const noexcept { return labels_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return dist_[i * size() + j];
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {dist_.data() + i * size(), size()};
  }
  const std::vector<double>& flat() const noexcept { return dist_; }

  FiniteMetricSpace scaled(double lambda) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
};

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 1.0;
};

struct WeightedGraph {
  std::size_t vertex_count = 0;
  std::vector<WeightedEdge> edges;

  static WeightedGraph path(std::size_t n);
  static WeightedGraph cycle(std::size_t n);
  static WeightedGraph complete(std::size_t n);
};

enum class ViolationKind { NonzeroDiagonal, Asymmetric, NonPositive, Triangle };

struct Violation {
  ViolationKind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;  // only meaningful for Triangle: d(i,j) > d(i,k) + d(k,j)
};

std::string describe(const Violation& v);

inline constexpr double kTriangleTolerance = 1e-12;

/// All-pairs shortest paths. Throws DisconnectedGraph / InvalidParameter.
FiniteMetricSpace build_from_graph(const WeightedGraph& g);

/// k equally spaced points on a circle of circumference `circumference`.
FiniteMetricSpace build_circle(std::size_t k, double circumference);

/// Points in R^d under the p-norm; pass infinity for the max norm.
FiniteMetricSpace build_euclidean(const std::vector<std::vector<double>>& points,
                                  double norm_p = 2.0);

/// Path metric of a weighted tree. Throws NotATree if the graph has a cycle.
FiniteMetricSpace build_tree_metric(const WeightedGraph& tree);

std::vector<Violation> validate(std::span<const double> dist, std::size_t n);
inline std::vector<Violation> validate(const FiniteMetricSpace& m) {
  return validate(m.flat(), m.size());
}

/// Induced metric on `subset` (in the given order).
FiniteMetricSpace restrict(const FiniteMetricSpace& m, std::span<const std::size_t> subset);

}  // namespace roundness
