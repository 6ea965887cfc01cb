#pragma once

#include <optional>
#include <vector>

#include "roundness/config.hpp"
#include "roundness/exponent.hpp"

namespace roundness {

/// Relative slack used when deciding the sign of a deficit. It only absorbs
/// floating-point rounding in exact configurations (e.g. sqrt(2)^2 != 2).
inline constexpr double kRoundingSlack = 1e-12;

/// f(t) = sum_i c_i * b_i^t over non-negative bases, with 0^t := 0 for all t.
///
/// Both quadrilateral and double-simplex deficits have this shape. Terms with
/// equal bases are merged; the unmerged absolute mass S(t) = sum |c_i| b_i^t is
/// kept so that "f(t) >= -eps * S(t)" can be tested without cancellation issues.
class PowerSum {
 public:
  struct Term {
    double base;
    double coeff;   // merged coefficient
    double weight;  // sum of |coeff| before merging
    double log_ratio = 0.0;  // log(base / largest base)
  };

  void add(double base, double coeff);
  /// Must be called after the last add() and before evaluation.
  void finalize();

  double value(double t) const;
  double magnitude(double t) const;
  /// Sign-faithful evaluation of f(t) + eps * S(t), scaled by largest_base^-t
  /// so that large exponents cannot overflow.
  double shifted(double t, double eps) const;
  bool holds(double t, double eps) const { return shifted(t, eps) >= 0.0; }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<Term> terms_;
  bool finalized_ = false;
};

struct Crossing {
  /// First exponent above `start` where the sum turns negative (the last
  /// feasible bisection point), or infinite.
  ExtendedExponent exponent = ExtendedExponent::infinite();
  /// Grid index of the first failing scan point (-1 if none).
  long first_fail_cell = -1;
  /// First grid exponent above the crossing where the sum is non-negative again.
  std::optional<double> reentry;
};

/// Locate the first sign change of `f` above `start` on the scan grid of `cfg`,
/// refined by bisection down to cfg.tol. Throws InvalidQuad if f(start) is
/// negative beyond cfg.tol (relative), which only happens for non-metric input.
Crossing first_crossing(const PowerSum& f, double start, const ScanConfig& cfg);

}  // namespace roundness
