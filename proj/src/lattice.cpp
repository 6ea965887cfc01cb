#include "roundness/lattice.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <set>

#include "roundness/error.hpp"

namespace roundness {

namespace {

using Matrix = std::vector<IntVector>;

IntVector add(const IntVector& a, const IntVector& b, long long sign) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + sign * b[i];
  return out;
}

IntVector negate(const IntVector& a) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

bool independent(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] - a[j] * b[i] != 0) return true;
  return false;
}

void check_dimensions(const std::vector<IntVector>& sigma) {
  for (const auto& v : sigma) {
    if (v.size() != sigma.front().size())
      throw Error(ErrorCode::DimensionMismatch, "lattice vectors of different dimensions");
  }
}

// Shared pair scan: `judge(g, h, sum_in, diff_in)` returns true to report the
// pair as a violation.
template <class Judge>
std::optional<VectorPair> scan_pairs(const std::vector<IntVector>& sigma, Judge judge) {
  check_dimensions(sigma);
  std::set<IntVector> members(sigma.begin(), sigma.end());
  auto reps = positive_representatives(sigma);
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      const bool sum_in = members.contains(add(reps[a], reps[b], 1));
      const bool diff_in = members.contains(add(reps[a], reps[b], -1));
      if (judge(reps[a], reps[b], sum_in, diff_in)) return VectorPair{reps[a], reps[b]};
    }
  }
  return std::nullopt;
}

// --- Z^2 box enumeration on indices -----------------------------------------

struct Box {
  int bound = 1;
  std::vector<std::array<int, 2>> reps;  // sorted positive representatives
  std::vector<std::array<int, 8>> image;  // rep index under each signed permutation

  explicit Box(int b) : bound(b) {
    for (int x = -b; x <= b; ++x)
      for (int y = -b; y <= b; ++y)
        if (x > 0 || (x == 0 && y > 0)) reps.push_back({x, y});
    std::sort(reps.begin(), reps.end());
    image.resize(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto [x, y] = reps[i];
      const std::array<std::array<int, 2>, 8> maps = {{{x, y}, {-x, y}, {x, -y}, {-x, -y},
                                                        {y, x}, {-y, x}, {y, -x}, {-y, -x}}};
      for (std::size_t m = 0; m < 8; ++m) image[i][m] = index_of(normalized(maps[m]));
    }
  }

  static std::array<int, 2> normalized(std::array<int, 2> v) {
    if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) return {-v[0], -v[1]};
    return v;
  }

  int index_of(const std::array<int, 2>& v) const {
    auto it = std::lower_bound(reps.begin(), reps.end(), v);
    return static_cast<int>(it - reps.begin());
  }
};

bool spans_z2(const Box& box, const std::vector<int>& idx) {
  long long g = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const auto& u = box.reps[static_cast<std::size_t>(idx[a])];
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const auto& v = box.reps[static_cast<std::size_t>(idx[b])];
      g = std::gcd(g, static_cast<long long>(u[0]) * v[1] - static_cast<long long>(u[1]) * v[0]);
      if (g == 1) return true;
    }
  }
  return false;
}

bool is_orbit_minimum(const Box& box, const std::vector<int>& idx, std::vector<int>& scratch) {
  for (std::size_t m = 1; m < 8; ++m) {
    scratch.clear();
    for (int i : idx) scratch.push_back(box.image[static_cast<std::size_t>(i)][m]);
    std::sort(scratch.begin(), scratch.end());
    if (scratch < idx) return false;
  }
  return true;
}

// Calls f(idx) for every generating set in enumeration order; f returns false
// to stop. Returns the number of sets visited.
template <class F>
std::size_t for_each_z2_set(const Box& box, const Z2EnumerationOptions& opts, F&& f) {
  const std::size_t n = box.reps.size();
  const std::size_t k_min = std::max<std::size_t>(1, (opts.min_size + 1) / 2);
  const std::size_t k_max = std::min(n, opts.max_size / 2);
  std::size_t visited = 0;
  std::vector<int> idx, scratch;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    idx.resize(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (spans_z2(box, idx) && (!opts.reduce_automorphisms || is_orbit_minimum(box, idx, scratch))) {
        ++visited;
        if (!f(idx)) return visited;
      }
      // next combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && static_cast<std::size_t>(idx[i - 1]) == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return visited;
}

std::vector<IntVector> materialize(const Box& box, const std::vector<int>& idx) {
  std::vector<IntVector> out;
  out.reserve(idx.size());
  for (int i : idx) {
    const auto& r = box.reps[static_cast<std::size_t>(i)];
    out.push_back({r[0], r[1]});
  }
  return out;
}

}  // namespace

std::vector<long long> smith_invariant_factors(std::vector<IntVector> rows, std::size_t dim) {
  for (const auto& r : rows)
    if (r.size() != dim) throw Error(ErrorCode::DimensionMismatch, "matrix row has wrong length");
  Matrix& a = rows;
  const std::size_t nr = a.size();
  std::vector<long long> factors;
  for (std::size_t t = 0; t < std::min(nr, dim); ++t) {
    auto select_pivot = [&]() {
      std::size_t bi = nr, bj = dim;
      for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < dim; ++j)
          if (a[i][j] != 0 && (bi == nr || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == nr) return false;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      return true;
    };
    if (!select_pivot()) break;
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < nr; ++i) {
        const long long q = a[i][t] / a[t][t];
        if (q != 0)
          for (std::size_t j = t; j < dim; ++j) a[i][j] -= q * a[t][j];
        dirty = dirty || a[i][t] != 0;
      }
      for (std::size_t j = t + 1; j < dim; ++j) {
        const long long q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < nr; ++i) a[i][j] -= q * a[i][t];
        dirty = dirty || a[t][j] != 0;
      }
      if (dirty) {
        select_pivot();
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < nr && divides; ++i)
        for (std::size_t j = t + 1; j < dim; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t c = t; c < dim; ++c) a[t][c] += a[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
    factors.push_back(std::llabs(a[t][t]));
  }
  return factors;
}

bool spans_lattice(const std::vector<IntVector>& rows, std::size_t dim) {
  auto f = smith_invariant_factors(rows, dim);
  return f.size() == dim && std::all_of(f.begin(), f.end(), [](long long d) { return d == 1; });
}

std::vector<IntVector> to_vectors(const Group& group, const GeneratingSet& sigma) {
  if (group.spec().kind != GroupSpec::Kind::FreeAbelian)
    throw Error(ErrorCode::SpecMismatch, "lattice operations need a free abelian group, got " + to_string(group.spec()));
  std::vector<IntVector> out;
  for (const auto& g : sigma.elements) {
    group.check(g);
    out.push_back(g.coords);
  }
  return out;
}

GeneratingSet from_vectors(const Group& group, const std::vector<IntVector>& sigma) {
  std::vector<GroupElement> elements;
  for (const auto& v : sigma) {
    GroupElement g;
    g.coords = v;
    elements.push_back(std::move(g));
  }
  return symmetric_closure(group, elements);
}

bool is_generating(const Group& group, const GeneratingSet& sigma) {
  return spans_lattice(to_vectors(group, sigma), static_cast<std::size_t>(group.spec().param));
}

bool is_positive(const IntVector& v) {
  for (long long c : v)
    if (c != 0) return c > 0;
  return false;
}

std::vector<IntVector> positive_representatives(const std::vector<IntVector>& sigma) {
  std::set<IntVector> reps;
  for (const auto& v : sigma) {
    if (is_positive(v)) reps.insert(v);
    else if (is_positive(negate(v))) reps.insert(negate(v));
  }
  return {reps.begin(), reps.end()};
}

std::vector<IntVector> symmetric_from_representatives(const std::vector<IntVector>& reps) {
  std::vector<IntVector> out;
  for (const auto& r : reps) {
    out.push_back(r);
    out.push_back(negate(r));
  }
  return out;
}

std::optional<VectorPair> find_nonclosed_pair(const std::vector<IntVector>& sigma) {
  return scan_pairs(sigma, [](const IntVector&, const IntVector&, bool sum_in, bool diff_in) {
    return !sum_in && !diff_in;
  });
}

PropertyCheck property_star_check(const std::vector<IntVector>& sigma) {
  auto pair = find_nonclosed_pair(sigma);
  return {!pair.has_value(), pair};
}

PropertyCheck property_doublestar_check(const std::vector<IntVector>& sigma) {
  auto pair = scan_pairs(sigma, [](const IntVector& g, const IntVector& h, bool sum_in, bool diff_in) {
    return (!sum_in && !diff_in) || (sum_in && diff_in && independent(g, h));
  });
  return {!pair.has_value(), pair};
}

bool is_hexagonal_form(const std::vector<IntVector>& sigma) {
  check_dimensions(sigma);
  auto reps = positive_representatives(sigma);
  if (reps.size() != 3) return false;
  std::set<IntVector> members;
  for (const auto& r : reps) {
    members.insert(r);
    members.insert(negate(r));
  }
  if (members.size() != sigma.size()) return false;
  for (std::size_t w = 0; w < 3; ++w) {
    const auto& u = reps[(w + 1) % 3];
    const auto& v = reps[(w + 2) % 3];
    for (long long sign : {1LL, -1LL}) {
      const auto s = add(u, v, sign);
      if (s == reps[w] || negate(s) == reps[w]) return true;
    }
  }
  return false;
}

std::size_t enumerate_symmetric_generating_sets(
    const Z2EnumerationOptions& opts, const std::function<bool(const std::vector<IntVector>&)>& visit) {
  if (opts.box < 1) throw Error(ErrorCode::InvalidParameter, "box bound must be >= 1");
  Box box(opts.box);
  return for_each_z2_set(box, opts, [&](const std::vector<int>& idx) { return visit(materialize(box, idx)); });
}

Z2ScanSummary scan_z2(const Z2EnumerationOptions& opts, const std::function<void(const Z2ScanRow&)>& on_row) {
  if (opts.box < 1) throw Error(ErrorCode::InvalidParameter, "box bound must be >= 1");
  Box box(opts.box);
  // membership grid covering sums and differences of box vectors
  const int span = 2 * opts.box;
  const int side = 2 * span + 1;
  std::vector<unsigned char> grid(static_cast<std::size_t>(side * side), 0);
  auto cell = [&](int x, int y) { return static_cast<std::size_t>((x + span) * side + (y + span)); };

  Z2ScanSummary summary;
  for_each_z2_set(box, opts, [&](const std::vector<int>& idx) {
    for (int i : idx) {
      const auto& r = box.reps[static_cast<std::size_t>(i)];
      grid[cell(r[0], r[1])] = 1;
      grid[cell(-r[0], -r[1])] = 1;
    }
    // A star violation is also a double-star violation, so the scan can stop
    // at the first one.
    int star_a = -1, star_b = -1;
    bool doublestar = true;
    for (std::size_t a = 0; a < idx.size() && star_a < 0; ++a) {
      const auto& u = box.reps[static_cast<std::size_t>(idx[a])];
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        const auto& v = box.reps[static_cast<std::size_t>(idx[b])];
        const bool sum_in = grid[cell(u[0] + v[0], u[1] + v[1])] != 0;
        const bool diff_in = grid[cell(u[0] - v[0], u[1] - v[1])] != 0;
        if (sum_in && diff_in && u[0] * v[1] - u[1] * v[0] != 0) doublestar = false;
        if (!sum_in && !diff_in) {
          star_a = static_cast<int>(a);
          star_b = static_cast<int>(b);
          doublestar = false;
          break;
        }
      }
    }
    for (int i : idx) {
      const auto& r = box.reps[static_cast<std::size_t>(i)];
      grid[cell(r[0], r[1])] = 0;
      grid[cell(-r[0], -r[1])] = 0;
    }

    const std::size_t size = 2 * idx.size();
    const bool star = star_a < 0;
    bool hexagonal = false;
    if (idx.size() == 3) hexagonal = is_hexagonal_form(symmetric_from_representatives(materialize(box, idx)));
    ++summary.sets;
    summary.min_size_seen = std::min(summary.min_size_seen, size);
    summary.max_size_seen = std::max(summary.max_size_seen, size);
    if (summary.sets_by_size.size() <= size) {
      summary.sets_by_size.resize(size + 1, 0);
      summary.pair_found_by_size.resize(size + 1, 0);
    }
    ++summary.sets_by_size[size];
    if (!star) {
      ++summary.pair_found;
      ++summary.pair_found_by_size[size];
    }
    if (star) ++summary.star_sets;
    if (star && size == 6 && hexagonal) ++summary.star_size_six_hexagonal;
    if (doublestar) ++summary.doublestar_sets;
    if (on_row) {
      Z2ScanRow row;
      row.set_id = summary.sets - 1;
      row.reps = materialize(box, idx);
      row.star = star;
      row.doublestar = doublestar;
      row.hexagonal = hexagonal;
      if (!star) {
        const auto& g = box.reps[static_cast<std::size_t>(idx[static_cast<std::size_t>(star_a)])];
        const auto& h = box.reps[static_cast<std::size_t>(idx[static_cast<std::size_t>(star_b)])];
        row.pair = VectorPair{{g[0], g[1]}, {h[0], h[1]}};
      }
      on_row(row);
    }
    return true;
  });
  return summary;
}

}  // namespace roundness
