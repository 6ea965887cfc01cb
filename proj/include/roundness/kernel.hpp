#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "roundness/config.hpp"
#include "roundness/exponent.hpp"
#include "roundness/metric_space.hpp"

namespace roundness {

/// Two lists of n point indices each (repeats allowed). The within-list
/// distances sit on the small side of the inequality, the cross distances on
/// the large side.
struct DoubleSimplex {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;

  std::size_t n() const { return a.size(); }
  friend auto operator<=>(const DoubleSimplex&, const DoubleSimplex&) = default;
};

/// sum_{i,j} d(a_i,b_j)^t - sum_{i<j} (d(a_i,a_j)^t + d(b_i,b_j)^t), 0^t := 0.
double simplex_deficit(const FiniteMetricSpace& m, const DoubleSimplex& s, double t);

/// First sign change of the deficit above t = 0; infinite if none up to qmax.
ExtendedExponent simplex_critical_exponent(const FiniteMetricSpace& m, const DoubleSimplex& s,
                                           const ScanConfig& cfg = {});

struct SimplexBound {
  ExtendedExponent upper = ExtendedExponent::infinite();
  std::optional<DoubleSimplex> witness;
  std::uint64_t exhaustive_count = 0;
  std::uint64_t sampled_count = 0;
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
};

/// Largest list size that is enumerated exhaustively for an m-point space:
/// 3 when m <= 8, otherwise 2.
std::size_t exhaustive_simplex_order(std::size_t points);

/// Upper bound on generalized roundness: every double simplex of order 2 (and
/// 3 for spaces with at most 8 points) is enumerated up to the symmetries of
/// the inequality; larger orders up to `max_n` share `budget` random samples.
SimplexBound gr_upper_search(const FiniteMetricSpace& m, std::size_t max_n, std::uint64_t budget,
                             const RunConfig& cfg = {});

/// Calls f(simplex) for every unordered pair {A, B} of sorted n-multisets.
void for_each_simplex(std::size_t points, std::size_t n, const std::function<void(const DoubleSimplex&)>& f);

/// H_ij = d_ij^p with 0^0 := 0.
Eigen::MatrixXd power_matrix(const FiniteMetricSpace& m, double p);

struct KernelReport {
  double p = 0.0;
  double max_projected_eigenvalue = 0.0;
  bool is_negative = false;
  double tol = 0.0;
};

inline constexpr double kKernelRelTol = 1e-9;

/// Decides sum a_i a_j H_ij <= 0 for all sum-zero a through the largest
/// eigenvalue of P H P, P = I - J/n. Throws AsymmetricInput / NonzeroDiagonal.
KernelReport is_negative_kernel(const Eigen::MatrixXd& H, double rel_tol = kKernelRelTol);

/// Kernel test of d^p; fills in p.
KernelReport kernel_test(const FiniteMetricSpace& m, double p, double rel_tol = kKernelRelTol);

/// sup{p in [0, qmax] : d^p is a negative kernel}, by bisection to cfg.tol.
/// Returns qmax when the test still passes there.
double gr_via_kernel(const FiniteMetricSpace& m, const ScanConfig& cfg = {});

struct EmbeddingResult {
  Eigen::MatrixXd coords;  // one row per point
  double max_relative_error = 0.0;
};

/// Points whose squared Euclidean distances reproduce d^p. Throws
/// KernelNotNegative when d^p fails the kernel test.
EmbeddingResult schoenberg_embed(const FiniteMetricSpace& m, double p);

}  // namespace roundness
