#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "roundness/cayley.hpp"

namespace roundness {

using IntVector = std::vector<long long>;

/// Nonzero invariant factors of the integer matrix whose rows are `rows`
/// (each of length `dim`), in divisibility order.
std::vector<long long> smith_invariant_factors(std::vector<IntVector> rows, std::size_t dim);

/// True iff the rows span Z^dim.
bool spans_lattice(const std::vector<IntVector>& rows, std::size_t dim);

/// Throws SpecMismatch unless the group is free abelian.
bool is_generating(const Group& group, const GeneratingSet& sigma);

/// First nonzero coordinate positive.
bool is_positive(const IntVector& v);

/// Sorted positive representatives of the negation pairs of sigma.
std::vector<IntVector> positive_representatives(const std::vector<IntVector>& sigma);

using VectorPair = std::pair<IntVector, IntVector>;

/// Least pair (g, h), g < h among sorted positive representatives, with
/// g + h and g - h both outside sigma. Any sign choice of such a pair is a
/// pair u != +-v of sigma with u +- v outside sigma.
std::optional<VectorPair> find_nonclosed_pair(const std::vector<IntVector>& sigma);

struct PropertyCheck {
  bool holds = true;
  std::optional<VectorPair> violation;
};

/// u + v or u - v lies in sigma for every u != +-v.
PropertyCheck property_star_check(const std::vector<IntVector>& sigma);

/// The star property, and never both u + v and u - v for independent u, v.
PropertyCheck property_doublestar_check(const std::vector<IntVector>& sigma);

/// sigma = {+-u, +-v, +-(u + v)} for some u, v.
bool is_hexagonal_form(const std::vector<IntVector>& sigma);

/// Full symmetric element list from positive representatives: each rep then
/// its negation.
std::vector<IntVector> symmetric_from_representatives(const std::vector<IntVector>& reps);

std::vector<IntVector> to_vectors(const Group& group, const GeneratingSet& sigma);
GeneratingSet from_vectors(const Group& group, const std::vector<IntVector>& sigma);

struct Z2EnumerationOptions {
  int box = 1;
  std::size_t min_size = 2;
  std::size_t max_size = SIZE_MAX;
  /// Keep one set per orbit of the eight signed coordinate permutations. Off
  /// by default.
  bool reduce_automorphisms = false;
};

/// Counts every symmetric generating set of Z^2 inside [-B, B]^2 \ {0} with
/// size in range. Sets are visited by increasing size, then lexicographically
/// by their sorted positive representatives. The visitor receives the
/// positive representatives; returning false stops the enumeration.
std::size_t enumerate_symmetric_generating_sets(
    const Z2EnumerationOptions& opts, const std::function<bool(const std::vector<IntVector>&)>& visit);

struct Z2ScanRow {
  std::size_t set_id = 0;
  std::vector<IntVector> reps;
  bool star = false;
  bool doublestar = false;
  bool hexagonal = false;
  std::optional<VectorPair> pair;
};

struct Z2ScanSummary {
  std::size_t sets = 0;
  std::size_t pair_found = 0;
  std::size_t star_sets = 0;
  std::size_t star_size_six_hexagonal = 0;  // star sets of size 6 in hexagonal form
  std::size_t doublestar_sets = 0;
  std::size_t min_size_seen = SIZE_MAX;
  std::size_t max_size_seen = 0;
  std::vector<std::size_t> sets_by_size;        // indexed by |sigma|
  std::vector<std::size_t> pair_found_by_size;  // indexed by |sigma|
};

/// Runs the per-set checks over the enumeration. `on_row` (optional) sees
/// every row in enumeration order.
Z2ScanSummary scan_z2(const Z2EnumerationOptions& opts, const std::function<void(const Z2ScanRow&)>& on_row = {});

}  // namespace roundness
