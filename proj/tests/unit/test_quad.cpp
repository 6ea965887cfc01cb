#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "roundness/error.hpp"
#include "roundness/quad.hpp"

using namespace roundness;

namespace {

QuadLengths ql(std::array<double, 4> e, std::array<double, 2> d) { return QuadLengths{e, d}; }

// The 8 relabelings of a 2-cube that preserve its diagonal pairing.
std::array<std::array<std::size_t, 4>, 8> cube_symmetries(const std::array<std::size_t, 4>& x) {
  // x = (x00, x01, x10, x11); diagonals {x00,x11}, {x01,x10}
  std::array<std::array<std::size_t, 4>, 8> out{};
  int k = 0;
  for (int swap_diags = 0; swap_diags < 2; ++swap_diags)
    for (int flip1 = 0; flip1 < 2; ++flip1)
      for (int flip2 = 0; flip2 < 2; ++flip2) {
        std::array<std::size_t, 2> d1 = {x[0], x[3]}, d2 = {x[1], x[2]};
        if (swap_diags) std::swap(d1, d2);
        if (flip1) std::swap(d1[0], d1[1]);
        if (flip2) std::swap(d2[0], d2[1]);
        out[k++] = {d1[0], d2[0], d2[1], d1[1]};
      }
  return out;
}

std::array<std::size_t, 4> canonical(const std::array<std::size_t, 4>& x) {
  auto all = cube_symmetries(x);
  return *std::min_element(all.begin(), all.end());
}

FiniteMetricSpace random_metric(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<double>> pts(n, std::vector<double>(3));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& p : pts)
    for (auto& c : p) c = u(rng);
  std::uniform_int_distribution<int> pick(0, 2);
  const double norms[] = {1.0, 2.0, std::numeric_limits<double>::infinity()};
  return build_euclidean(pts, norms[pick(rng)]);
}

WeightedGraph random_tree(std::mt19937_64& rng, std::size_t n) {
  WeightedGraph g{n, {}};
  for (std::size_t v = 1; v < n; ++v) g.edges.push_back({std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v, 1.0});
  return g;
}

}  // namespace

TEST_CASE("quad deficit") {
  CHECK(quad_deficit(ql({1, 1, 1, 1}, {2, 2}), 1.0) == 0.0);
  CHECK(quad_deficit(ql({1, 1, 1, 1}, {2, 2}), 2.0) == doctest::Approx(-4.0));
  CHECK(quad_deficit(ql({1, 1, 2, 2}, {2, 3}), 1.0) == doctest::Approx(1.0));
  // collapsed sides contribute nothing, including at t = 0
  CHECK(quad_deficit(ql({0, 0, 1, 1}, {1, 1}), 0.0) == 0.0);
}

TEST_CASE("quad critical exponent") {
  CHECK(quad_critical_exponent(ql({1, 1, 1, 1}, {2, 2})).value() == doctest::Approx(1.0).epsilon(1e-9));
  // oracle: 2^t + 1 = 4 solved in closed form
  const double log2_3 = std::log(3.0) / std::log(2.0);
  CHECK(std::abs(quad_critical_exponent(ql({1, 1, 1, 1}, {2, 1})).value() - log2_3) < 1e-8);
  CHECK(quad_critical_exponent(ql({1, 1, 1, 1}, {1, 1})).is_infinite());
  // midpoint quad: 4 = 2^t
  CHECK(std::abs(quad_critical_exponent(ql({1, 1, 1, 1}, {2, 0})).value() - 2.0) < 1e-9);
  CHECK_THROWS_AS(quad_critical_exponent(ql({1, 1, 1, 1}, {5, 5})), Error);
}

TEST_CASE("critical exponent matches a brute-force sign scan") {
  std::mt19937_64 rng(11);
  ScanConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_metric(rng, 5);
    auto quads = enumerate_quads(m);
    const auto& q = quads[std::uniform_int_distribution<std::size_t>(0, quads.size() - 1)(rng)];
    auto len = lengths(m, q);
    auto crit = quad_critical_exponent(len, cfg);
    // oracle: fine linear scan of the raw deficit
    double first_negative = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 8 * 1024; ++k) {
      const double t = 1.0 + k / 1024.0;
      const double f = quad_deficit(len, t);
      double mass = 0;
      for (double e : len.edges) mass += e == 0 ? 0 : std::pow(e, t);
      for (double d : len.diagonals) mass += d == 0 ? 0 : std::pow(d, t);
      if (f < -1e-12 * mass) {
        first_negative = t;
        break;
      }
    }
    if (std::isinf(first_negative)) {
      CHECK(crit.value() >= 9.0 - 1.0 / 1024);
    } else {
      CHECK(crit.value() <= first_negative + 1e-9);
      CHECK(crit.value() >= first_negative - 1.0 / 1024 - 1e-9);
    }
  }
}

TEST_CASE("enumeration matches symmetry classes of all 4-tuples") {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::set<std::array<std::size_t, 4>> classes;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t d = 0; d < n; ++d) classes.insert(canonical({a, b, c, d}));
    std::set<std::array<std::size_t, 4>> emitted;
    std::size_t count = 0;
    for_each_quad(n, 0, n, [&](const Quad& q) {
      ++count;
      emitted.insert(canonical(q.idx));
    });
    CHECK(count == classes.size());
    CHECK(emitted == classes);
    CHECK(quad_count(n) == classes.size());
  }
}

TEST_CASE("enumeration examples") {
  auto k4 = build_from_graph(WeightedGraph::complete(4));
  std::size_t distinct = 0;
  for (const auto& q : enumerate_quads(k4)) {
    std::set<std::size_t> s(q.idx.begin(), q.idx.end());
    if (s.size() == 4) ++distinct;
  }
  CHECK(distinct == 3);

  // two points: {xxyy} x2, {xxxy}, {xyyy}, {xxxx}, {yyyy}
  CHECK(quad_count(2) == 6);

  auto p3 = build_from_graph(WeightedGraph::path(3));
  bool midpoint = false;
  for (const auto& q : enumerate_quads(p3)) {
    auto len = lengths(p3, q);
    auto d = len.diagonals;
    std::sort(d.begin(), d.end());
    if (d[0] == 0.0 && d[1] == 2.0 && len.edges == std::array<double, 4>{1, 1, 1, 1}) midpoint = true;
  }
  CHECK(midpoint);
}

TEST_CASE("roundness predicate") {
  auto c4 = build_from_graph(WeightedGraph::cycle(4));
  CHECK(roundness_predicate(c4, 1.0).holds);
  auto r = roundness_predicate(c4, 1.01);
  CHECK_FALSE(r.holds);
  REQUIRE(r.violation);
  auto len = lengths(c4, *r.violation);
  CHECK(len.edges == std::array<double, 4>{1, 1, 1, 1});
  CHECK(len.diagonals == std::array<double, 2>{2, 2});
  CHECK(r.worst_deficit == doctest::Approx(4.0 - 2.0 * std::pow(2.0, 1.01)));

  auto k4 = build_from_graph(WeightedGraph::complete(4));
  CHECK(roundness_predicate(k4, 10.0).holds);
}

TEST_CASE("roundness estimate examples") {
  auto p3 = roundness_estimate(build_from_graph(WeightedGraph::path(3)));
  CHECK(p3.upper.value() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(p3.lower.value() == doctest::Approx(2.0).epsilon(1e-9));
  REQUIRE(p3.witness);
  CHECK(p3.witness_lengths.edges == std::array<double, 4>{1, 1, 1, 1});

  auto k5 = roundness_estimate(build_from_graph(WeightedGraph::complete(5)));
  CHECK(k5.upper.is_infinite());
  CHECK(k5.lower.is_infinite());
  CHECK_FALSE(k5.witness);

  auto c4 = roundness_estimate(build_from_graph(WeightedGraph::cycle(4)));
  CHECK(std::abs(c4.upper.value() - 1.0) < 1e-9);
  CHECK(c4.lower <= c4.upper);
  CHECK(c4.quad_count == quad_count(4));
}

TEST_CASE("estimate is independent of thread count") {
  std::mt19937_64 rng(5);
  auto m = random_metric(rng, 9);
  RunConfig one, four;
  one.threads = 1;
  four.threads = 4;
  auto a = roundness_estimate(m, one);
  auto b = roundness_estimate(m, four);
  CHECK(a.upper == b.upper);
  CHECK(a.lower == b.lower);
  CHECK(a.witness == b.witness);
  CHECK(a.quad_count == b.quad_count);
}

TEST_CASE("every quad of a metric space satisfies the t = 1 inequality") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_metric(rng, 6);
    for_each_quad(m.size(), 0, m.size(), [&](const Quad& q) {
      auto len = lengths(m, q);
      double mass = 0;
      for (double e : len.edges) mass += e;
      CHECK(quad_deficit(len, 1.0) >= -1e-12 * mass);
    });
    CHECK(roundness_estimate(m).lower.value() >= 1.0);
  }
}

TEST_CASE("scale and relabeling invariance") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = random_metric(rng, 6);
    const double lambda = 0.1 + trial * 0.7;
    auto a = roundness_estimate(m);
    auto b = roundness_estimate(m.scaled(lambda));
    if (a.upper.is_infinite()) {
      CHECK(b.upper.is_infinite());
    } else {
      CHECK(std::abs(a.upper.value() - b.upper.value()) < 1e-8);
    }
    auto quads = enumerate_quads(m);
    for (std::size_t s = 0; s < quads.size(); s += 37) {
      const auto base = quad_critical_exponent(lengths(m, quads[s]));
      for (const auto& image : cube_symmetries(quads[s].idx)) {
        CHECK(quad_critical_exponent(lengths(m, Quad{image})) == base);
      }
    }
  }
}

TEST_CASE("restricting to a subset can only raise the upper bound") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = random_metric(rng, 7);
    std::vector<std::size_t> subset = {0, 2, 3, 5};
    CHECK(roundness_estimate(restrict(m, subset)).upper >= roundness_estimate(m).upper);
  }
}

TEST_CASE("midpoint triples cap the upper bound at 2") {
  // 0 -- 1 -- 2 on a line plus two generic points
  auto m = build_euclidean({{0, 0}, {1, 0}, {2, 0}, {0.3, 1.7}, {-1.1, 0.4}});
  CHECK(roundness_estimate(m).upper.value() <= 2.0 + 1e-9);
}

TEST_CASE("random plane samples have roundness >= 2") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> pts(12, std::vector<double>(2));
    for (auto& p : pts) p = {u(rng), u(rng)};
    CHECK(roundness_predicate(build_euclidean(pts), 2.0, 1e-9).holds);
  }
}

TEST_CASE("random trees have roundness 2") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    auto m = build_tree_metric(random_tree(rng, 5 + 3 * trial));
    CHECK(roundness_predicate(m, 2.0, 1e-9).holds);
    CHECK(std::abs(roundness_estimate(m).upper.value() - 2.0) < 1e-9);
  }
}

TEST_CASE("cube check") {
  auto sq = build_euclidean({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  // vertex at bit position (e1 e0): 00 -> (0,0), 01 -> (1,0), 10 -> (0,1), 11 -> (1,1)
  auto c2 = cube_check(sq, Cube{2, {0, 1, 2, 3}}, 2.0);
  CHECK(c2.deficit == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c2.ratio_ok);

  std::vector<std::vector<double>> corners;
  for (int v = 0; v < 8; ++v) corners.push_back({double(v & 1), double((v >> 1) & 1), double((v >> 2) & 1)});
  auto cube3 = build_euclidean(corners);
  auto c3 = cube_check(cube3, Cube{3, {0, 1, 2, 3, 4, 5, 6, 7}}, 2.0);
  CHECK(std::abs(c3.deficit) < 1e-12);
  CHECK(c3.ratio_ok);

  auto flat = cube_check(sq, Cube{3, std::vector<std::size_t>(8, 2)}, 1.7);
  CHECK(flat.deficit == 0.0);
  CHECK(flat.ratio_ok);
}
