#include "roundness/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "roundness/error.hpp"

namespace roundness {

namespace {

std::vector<std::string> default_labels(std::size_t n, const char* prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

void check_graph_shape(const WeightedGraph& g) {
  if (g.vertex_count == 0) throw Error(ErrorCode::InvalidParameter, "graph has no vertices");
  for (const auto& e : g.edges) {
    if (e.u >= g.vertex_count || e.v >= g.vertex_count) {
      throw Error(ErrorCode::IndexOutOfRange, "edge endpoint out of range");
    }
    if (e.u == e.v) throw Error(ErrorCode::InvalidParameter, "self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::InvalidParameter, "edge weights must be positive and finite");
    }
  }
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  if (labels_.empty()) throw Error(ErrorCode::InvalidParameter, "metric space needs at least one point");
  if (dist_.size() != labels_.size() * labels_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "distance matrix does not match label count");
  }
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<std::string> labels,
                                                 std::vector<std::vector<double>> dist) {
  const std::size_t n = dist.size();
  if (labels.empty()) labels = default_labels(n, "p");
  if (labels.size() != n) throw Error(ErrorCode::DimensionMismatch, "labels and dist sizes differ");
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : dist) {
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "distance matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  auto report = validate(flat, n);
  if (!report.empty()) throw Error(ErrorCode::InvalidMetric, describe(report.front()));
  return FiniteMetricSpace(std::move(labels), std::move(flat));
}

FiniteMetricSpace FiniteMetricSpace::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidParameter, "scale must be positive");
  auto d = dist_;
  for (auto& x : d) x *= lambda;
  return FiniteMetricSpace(labels_, std::move(d));
}

WeightedGraph WeightedGraph::path(std::size_t n) {
  WeightedGraph g{n, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1.0});
  return g;
}

WeightedGraph WeightedGraph::cycle(std::size_t n) {
  WeightedGraph g = path(n);
  if (n >= 3) g.edges.push_back({n - 1, 0, 1.0});
  return g;
}

WeightedGraph WeightedGraph::complete(std::size_t n) {
  WeightedGraph g{n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.edges.push_back({i, j, 1.0});
  return g;
}

std::string describe(const Violation& v) {
  std::ostringstream os;
  switch (v.kind) {
    case ViolationKind::NonzeroDiagonal: os << "nonzero diagonal at " << v.i; break;
    case ViolationKind::Asymmetric: os << "asymmetric pair (" << v.i << "," << v.j << ")"; break;
    case ViolationKind::NonPositive:
      os << "non-positive or non-finite distance between distinct points (" << v.i << "," << v.j << ")";
      break;
    case ViolationKind::Triangle:
      os << "triangle inequality violated: d(" << v.i << "," << v.j << ") > d(" << v.i << "," << v.k
         << ") + d(" << v.k << "," << v.j << ")";
      break;
  }
  return os.str();
}

std::vector<Violation> validate(std::span<const double> dist, std::size_t n) {
  std::vector<Violation> out;
  auto d = [&](std::size_t i, std::size_t j) { return dist[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) out.push_back({ViolationKind::NonzeroDiagonal, i, i, 0});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) != d(j, i)) out.push_back({ViolationKind::Asymmetric, i, j, 0});
      if (!(d(i, j) > 0.0) || !std::isfinite(d(i, j)) || !(d(j, i) > 0.0) || !std::isfinite(d(j, i))) {
        out.push_back({ViolationKind::NonPositive, i, j, 0});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d(i, j) > d(i, k) + d(k, j) + kTriangleTolerance) {
          out.push_back({ViolationKind::Triangle, i, j, k});
        }
  return out;
}

FiniteMetricSpace build_from_graph(const WeightedGraph& g) {
  check_graph_shape(g);
  const std::size_t n = g.vertex_count;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const auto& e : g.edges) {
    d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.w);
    d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.w);
  }
  // Floyd-Warshall; graphs here are small and dense results are wanted anyway.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  for (std::size_t j = 1; j < n; ++j)
    if (d[j] == kInf) {
      throw Error(ErrorCode::DisconnectedGraph, "vertex " + std::to_string(j) + " unreachable from 0");
    }
  return FiniteMetricSpace(default_labels(n, "v"), std::move(d));
}

FiniteMetricSpace build_circle(std::size_t k, double circumference) {
  if (k < 3) throw Error(ErrorCode::InvalidParameter, "circle sampler needs k >= 3");
  if (!(circumference > 0.0) || !std::isfinite(circumference)) {
    throw Error(ErrorCode::InvalidParameter, "circumference must be positive");
  }
  const double step = circumference / static_cast<double>(k);
  std::vector<double> d(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      d[i * k + j] = static_cast<double>(std::min(gap, k - gap)) * step;
    }
  return FiniteMetricSpace(default_labels(k, "p"), std::move(d));
}

FiniteMetricSpace build_euclidean(const std::vector<std::vector<double>>& points, double norm_p) {
  if (points.empty()) throw Error(ErrorCode::InvalidParameter, "no points");
  if (!(norm_p >= 1.0)) throw Error(ErrorCode::InvalidParameter, "norm exponent must be >= 1");
  const std::size_t dim = points.front().size();
  for (const auto& p : points)
    if (p.size() != dim) throw Error(ErrorCode::DimensionMismatch, "points have different dimensions");
  const std::size_t n = points.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double diff = std::abs(points[i][c] - points[j][c]);
        if (std::isinf(norm_p)) {
          acc = std::max(acc, diff);
        } else if (norm_p == 1.0) {
          acc += diff;
        } else if (norm_p == 2.0) {
          acc += diff * diff;
        } else {
          acc += std::pow(diff, norm_p);
        }
      }
      double v = acc;
      if (norm_p == 2.0) {
        v = std::sqrt(acc);
      } else if (!std::isinf(norm_p) && norm_p != 1.0) {
        v = std::pow(acc, 1.0 / norm_p);
      }
      d[i * n + j] = d[j * n + i] = v;
    }
  return FiniteMetricSpace(default_labels(n, "x"), std::move(d));
}

FiniteMetricSpace build_tree_metric(const WeightedGraph& tree) {
  check_graph_shape(tree);
  const std::size_t n = tree.vertex_count;
  if (tree.edges.size() != n - 1) {
    if (tree.edges.size() >= n) throw Error(ErrorCode::NotATree, "graph has a cycle");
    throw Error(ErrorCode::DisconnectedGraph, "tree is not connected");
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : tree.edges) {
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }
  std::vector<double> d(n * n, -1.0);
  for (std::size_t s = 0; s < n; ++s) {
    double* row = d.data() + s * n;
    row[s] = 0.0;
    std::vector<std::size_t> stack{s};
    std::size_t seen = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (auto [w, len] : adj[v]) {
        if (row[w] >= 0.0) continue;
        row[w] = row[v] + len;
        stack.push_back(w);
        ++seen;
      }
    }
    // n-1 edges and connected is a tree; n-1 edges and disconnected hides a cycle
    if (seen != n) throw Error(ErrorCode::NotATree, "graph has a cycle and is disconnected");
  }
  return FiniteMetricSpace(default_labels(n, "v"), std::move(d));
}

FiniteMetricSpace restrict(const FiniteMetricSpace& m, std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorCode::InvalidParameter, "empty subset");
  std::vector<char> used(m.size(), 0);
  for (auto i : subset) {
    if (i >= m.size()) throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(i));
    if (used[i]) throw Error(ErrorCode::DuplicateIndex, "index " + std::to_string(i));
    used[i] = 1;
  }
  const std::size_t k = subset.size();
  std::vector<std::string> labels;
  std::vector<double> d(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    labels.push_back(m.labels()[subset[a]]);
    for (std::size_t b = 0; b < k; ++b) d[a * k + b] = m(subset[a], subset[b]);
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

}  // namespace roundness
