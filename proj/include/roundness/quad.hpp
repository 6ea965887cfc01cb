#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "roundness/config.hpp"
#include "roundness/exponent.hpp"
#include "roundness/metric_space.hpp"

namespace roundness {

/// A 2-cube (x00, x01, x10, x11) given by point indices; repeats allowed.
/// Diagonals are (x00, x11) and (x01, x10).
struct Quad {
  std::array<std::size_t, 4> idx{};  // x00, x01, x10, x11

  std::size_t x00() const { return idx[0]; }
  std::size_t x01() const { return idx[1]; }
  std::size_t x10() const { return idx[2]; }
  std::size_t x11() const { return idx[3]; }

  friend auto operator<=>(const Quad&, const Quad&) = default;
};

/// Edges a = d(x00,x01), b = d(x00,x10), c = d(x11,x01), e = d(x11,x10);
/// diagonals p = d(x00,x11), r = d(x01,x10).
struct QuadLengths {
  std::array<double, 4> edges{};
  std::array<double, 2> diagonals{};
};

QuadLengths lengths(const FiniteMetricSpace& m, const Quad& q);

/// (a^t + b^t + c^t + e^t) - (p^t + r^t), with 0^t := 0.
double quad_deficit(const QuadLengths& q, double t);

/// First exponent above 1 where the deficit turns negative; infinite if it
/// stays non-negative up to cfg.qmax. Throws InvalidQuad when the deficit is
/// already negative at t = 1.
ExtendedExponent quad_critical_exponent(const QuadLengths& q, const ScanConfig& cfg = {});

/// Canonical quads of the 4-multiset i <= j <= k <= l: one per way of
/// splitting it into two diagonal pairs (duplicates from repeated indices
/// dropped). `f` is called with each quad.
template <class F>
void for_each_pairing(std::size_t i, std::size_t j, std::size_t k, std::size_t l, F&& f) {
  f(Quad{{i, k, l, j}});                        // {i,j} | {k,l}
  if (j != k) f(Quad{{i, j, l, k}});            // {i,k} | {j,l}
  if (k != l && i != j) f(Quad{{i, j, k, l}});  // {i,l} | {j,k}
}

/// Every quad of an n-point space whose smallest index lies in [first, last).
template <class F>
void for_each_quad(std::size_t n, std::size_t first, std::size_t last, F&& f) {
  for (std::size_t i = first; i < last; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) for_each_pairing(i, j, k, l, f);
}

std::vector<Quad> enumerate_quads(const FiniteMetricSpace& m);
std::uint64_t quad_count(std::size_t n);

struct PredicateResult {
  bool holds = true;
  std::optional<Quad> violation;  // quad with the most negative deficit
  double worst_deficit = 0.0;
};

/// True iff every quad satisfies deficit(t) >= -tol * (sum of its six terms).
PredicateResult roundness_predicate(const FiniteMetricSpace& m, double t, double tol = 1e-9,
                                    unsigned threads = 1);

struct Anomaly {
  Quad quad;
  double reentry;  // grid exponent where the deficit becomes non-negative again
};

struct ExponentBound {
  ExtendedExponent lower = ExtendedExponent(1.0);
  ExtendedExponent upper = ExtendedExponent::infinite();
  std::optional<Quad> witness;
  QuadLengths witness_lengths;
  std::vector<Anomaly> anomalies;
  std::uint64_t quad_count = 0;
  double elapsed_ms = 0.0;
};

ExponentBound roundness_estimate(const FiniteMetricSpace& m, const RunConfig& cfg = {});

/// An n-cube: 2^n vertex indices addressed by the bits of their position.
struct Cube {
  unsigned dim = 2;
  std::vector<std::size_t> vertices;
};

struct CubeCheck {
  double deficit = 0.0;  // sum over edges l^t - sum over diagonals l^t
  bool ratio_ok = true;  // l(d_min) <= dim^(1/t) * l(e_max)
};

CubeCheck cube_check(const FiniteMetricSpace& m, const Cube& cube, double t);

}  // namespace roundness
