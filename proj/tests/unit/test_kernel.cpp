#include <cmath>
#include <random>

#include "doctest.h"
#include "roundness/error.hpp"
#include "roundness/kernel.hpp"
#include "roundness/quad.hpp"

using namespace roundness;

namespace {

FiniteMetricSpace two_points(double d) { return FiniteMetricSpace::from_matrix({"a", "b"}, {{0, d}, {d, 0}}); }

FiniteMetricSpace unit_square() { return build_euclidean({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

FiniteMetricSpace random_graph_metric(std::mt19937_64& rng, std::size_t n) {
  WeightedGraph g{n, {}};
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t v = 1; v < n; ++v) g.edges.push_back({std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v, 1.0});
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng) < 0.3) g.edges.push_back({u, v, 1.0});
  return build_from_graph(g);
}

FiniteMetricSpace random_space(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> kind(0, 2);
  if (kind(rng) == 0) return random_graph_metric(rng, n);
  std::vector<std::vector<double>> pts(n, std::vector<double>(2));
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return build_euclidean(pts, kind(rng) == 1 ? 1.0 : std::numeric_limits<double>::infinity());
}

// Oracle: H is negative on sum-zero vectors iff B_ij = H_i0 + H_j0 - H_ij
// (i, j >= 1) is positive semidefinite; checked with a pivoted LDL^T.
bool negative_by_gram(const Eigen::MatrixXd& H, double tol) {
  const auto n = H.rows();
  if (n <= 1) return true;
  Eigen::MatrixXd B(n - 1, n - 1);
  for (Eigen::Index i = 1; i < n; ++i)
    for (Eigen::Index j = 1; j < n; ++j) B(i - 1, j - 1) = H(i, 0) + H(j, 0) - H(i, j);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(B);
  return (ldlt.vectorD().array() >= -tol).all();
}

}  // namespace

TEST_CASE("simplex deficit at n = 2 is the quad deficit") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_space(rng, 5);
    for_each_quad(m.size(), 0, m.size(), [&](const Quad& q) {
      DoubleSimplex s{{q.x00(), q.x11()}, {q.x01(), q.x10()}};
      for (double t : {0.0, 0.5, 1.0, 1.7, 3.0}) {
        CHECK(simplex_deficit(m, s, t) == doctest::Approx(quad_deficit(lengths(m, q), t)));
      }
    });
  }
}

TEST_CASE("simplex deficit examples") {
  auto c4 = build_from_graph(WeightedGraph::cycle(4));
  DoubleSimplex s{{0, 2}, {1, 3}};
  CHECK(simplex_deficit(c4, s, 1.0) == 0.0);
  DoubleSimplex same{{0, 1, 3}, {0, 1, 3}};
  for (double t : {0.0, 1.0, 2.5}) CHECK(simplex_deficit(c4, same, t) == doctest::Approx(0.0));
  CHECK_THROWS_AS(simplex_deficit(c4, DoubleSimplex{{0, 1}, {2}}, 1.0), Error);
}

TEST_CASE("simplex critical exponent") {
  auto c4 = build_from_graph(WeightedGraph::cycle(4));
  CHECK(std::abs(simplex_critical_exponent(c4, DoubleSimplex{{0, 2}, {1, 3}}).value() - 1.0) < 1e-9);
  CHECK(simplex_critical_exponent(c4, DoubleSimplex{{0, 1, 2}, {0, 1, 2}}).is_infinite());
  // unit square corners: (0,0),(1,0),(0,1),(1,1) -> diagonals {0,3}, {1,2}
  CHECK(std::abs(simplex_critical_exponent(unit_square(), DoubleSimplex{{0, 3}, {1, 2}}).value() - 2.0) < 1e-9);
}

TEST_CASE("generalized roundness upper search") {
  auto c4 = gr_upper_search(build_from_graph(WeightedGraph::cycle(4)), 3, 0);
  CHECK(c4.upper.value() <= 1.0 + 1e-9);
  auto p3 = gr_upper_search(build_from_graph(WeightedGraph::path(3)), 3, 0);
  CHECK(p3.upper.value() <= 2.0 + 1e-9);
  auto pair = gr_upper_search(two_points(3.0), 4, 200);
  CHECK(pair.upper.is_infinite());
  CHECK(pair.sampled_count == 200);
  CHECK_THROWS_AS(gr_upper_search(two_points(1.0), 1, 0), Error);
}

TEST_CASE("simplex enumeration counts unordered pairs of multisets") {
  // 4 points: C(5,2) = 10 multisets of size 2 -> 55 unordered pairs
  std::size_t count = 0;
  for_each_simplex(4, 2, [&](const DoubleSimplex&) { ++count; });
  CHECK(count == 55);
  // 6 points, n = 3: C(8,3) = 56 -> 56*57/2
  count = 0;
  for_each_simplex(6, 3, [&](const DoubleSimplex&) { ++count; });
  CHECK(count == 1596);
}

TEST_CASE("random sampling is reproducible from the seed") {
  std::mt19937_64 rng(8);
  auto m = random_space(rng, 10);
  RunConfig cfg;
  cfg.seed = 42;
  auto a = gr_upper_search(m, 4, 300, cfg);
  auto b = gr_upper_search(m, 4, 300, cfg);
  CHECK(a.upper == b.upper);
  CHECK(a.witness == b.witness);
  CHECK(a.seed == 42);
  cfg.threads = 3;
  auto c = gr_upper_search(m, 4, 300, cfg);
  CHECK(a.upper == c.upper);
  CHECK(a.witness == c.witness);
}

TEST_CASE("power matrix") {
  auto sq = unit_square();
  auto H1 = power_matrix(sq, 1.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(H1(i, j) == sq(i, j));
  auto H2 = power_matrix(sq, 2.0);
  CHECK(H2(0, 1) == doctest::Approx(1.0));
  CHECK(H2(0, 2) == doctest::Approx(1.0));
  CHECK(H2(0, 3) == doctest::Approx(2.0));
  auto H0 = power_matrix(sq, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(H0(i, j) == (i == j ? 0.0 : 1.0));
}

TEST_CASE("negative kernel test") {
  for (double p : {0.3, 1.0, 5.0}) CHECK(is_negative_kernel(power_matrix(two_points(2.0), p)).is_negative);
  CHECK(is_negative_kernel(power_matrix(build_tree_metric(WeightedGraph::path(4)), 1.0)).is_negative);
  auto sq = is_negative_kernel(power_matrix(unit_square(), 2.0));
  CHECK(sq.is_negative);
  CHECK(std::abs(sq.max_projected_eigenvalue) <= sq.tol);

  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(is_negative_kernel(asym), Error);
  Eigen::MatrixXd diag(2, 2);
  diag << 1, 1, 1, 0;
  try {
    is_negative_kernel(diag);
    FAIL("expected NonzeroDiagonal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonzeroDiagonal);
  }
  // C4 at p = 2 is not negative (generalized roundness 1)
  CHECK_FALSE(is_negative_kernel(power_matrix(build_from_graph(WeightedGraph::cycle(4)), 2.0)).is_negative);
}

TEST_CASE("eigen test agrees with the Gram-matrix oracle") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pu(0.0, 4.0);
  int agree = 0, total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_space(rng, 3 + trial % 6);
    const double p = pu(rng);
    auto H = power_matrix(m, p);
    auto report = is_negative_kernel(H);
    // skip borderline cases where either test sits inside its tolerance band
    if (std::abs(report.max_projected_eigenvalue) < 1e-6 * H.cwiseAbs().maxCoeff()) continue;
    ++total;
    if (report.is_negative == negative_by_gram(H, 1e-9 * H.cwiseAbs().maxCoeff())) ++agree;
  }
  CHECK(total > 100);
  CHECK(agree == total);
}

TEST_CASE("eigensolver residual") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto H = power_matrix(random_space(rng, 7), 1.3);
    const auto n = H.rows();
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::MatrixXd C = P * H * P;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C);
    const double residual = (C * eig.eigenvectors() - eig.eigenvectors() * eig.eigenvalues().asDiagonal()).norm();
    CHECK(residual <= 1e-10 * H.norm());
  }
}

TEST_CASE("generalized roundness via kernel") {
  CHECK(std::abs(gr_via_kernel(build_from_graph(WeightedGraph::cycle(4))) - 1.0) < 1e-6);
  ScanConfig cfg;
  CHECK(gr_via_kernel(two_points(5.0), cfg) == cfg.qmax);
  auto k3 = build_from_graph(WeightedGraph::complete(3));
  CHECK(is_negative_kernel(power_matrix(k3, 2.0)).is_negative);
  CHECK(gr_via_kernel(k3) >= 2.0);
}

TEST_CASE("kernel negativity is monotone in the exponent") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> pu(0.0, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_space(rng, 2 + trial % 7);
    double p = pu(rng), q = pu(rng);
    if (q > p) std::swap(p, q);
    if (q == 0.0) continue;
    if (is_negative_kernel(power_matrix(m, p)).is_negative) {
      CHECK(is_negative_kernel(power_matrix(m, q)).is_negative);
    }
  }
}

TEST_CASE("kernel bound sits below the quad bound and is scale invariant") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    auto m = random_space(rng, 3 + trial % 5);
    const double gr = gr_via_kernel(m);
    CHECK(gr <= roundness_estimate(m).upper.value() + 1e-6);
    CHECK(std::abs(gr_via_kernel(m.scaled(3.5)) - gr) < 1e-6);
  }
}

TEST_CASE("schoenberg embedding") {
  auto k3 = schoenberg_embed(build_from_graph(WeightedGraph::complete(3)), 2.0);
  CHECK(k3.coords.rows() == 3);
  CHECK(k3.coords.cols() == 2);
  CHECK(k3.max_relative_error <= 1e-9);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK((k3.coords.row(i) - k3.coords.row(j)).norm() == doctest::Approx(1.0));

  auto p3 = schoenberg_embed(build_from_graph(WeightedGraph::path(3)), 1.0);
  CHECK(p3.max_relative_error <= 1e-9);
  CHECK((p3.coords.row(0) - p3.coords.row(1)).squaredNorm() == doctest::Approx(1.0));
  CHECK((p3.coords.row(1) - p3.coords.row(2)).squaredNorm() == doctest::Approx(1.0));
  CHECK((p3.coords.row(0) - p3.coords.row(2)).squaredNorm() == doctest::Approx(2.0));

  auto pair = schoenberg_embed(two_points(3.0), 1.0);
  CHECK((pair.coords.row(0) - pair.coords.row(1)).norm() == doctest::Approx(std::sqrt(3.0)));

  try {
    schoenberg_embed(build_from_graph(WeightedGraph::cycle(4)), 2.0);
    FAIL("expected KernelNotNegative");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KernelNotNegative);
  }
}

TEST_CASE("embeddings are faithful whenever they exist") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_space(rng, 3 + trial % 6);
    const double p = gr_via_kernel(m) * 0.999;
    auto e = schoenberg_embed(m, p);
    CHECK(e.max_relative_error <= 1e-6);
  }
}
