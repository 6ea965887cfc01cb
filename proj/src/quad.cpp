#include "roundness/quad.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "roundness/error.hpp"
#include "roundness/parallel.hpp"
#include "roundness/power_sum.hpp"

namespace roundness {

namespace {

/// Distinct distance values of a space, so quads can be keyed by small ids.
struct DistanceIds {
  std::size_t n = 0;
  std::vector<double> values;   // sorted, unique
  std::vector<std::uint32_t> ids;

  explicit DistanceIds(const FiniteMetricSpace& m) : n(m.size()) {
    values = m.flat();
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() >= (1u << 21)) {
      throw Error(ErrorCode::InvalidParameter, "too many distinct distances for quad signatures");
    }
    ids.resize(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      ids[k] = static_cast<std::uint32_t>(
          std::lower_bound(values.begin(), values.end(), m.flat()[k]) - values.begin());
    }
  }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return ids[i * n + j]; }
};

using Key = unsigned __int128;

struct KeyHash {
  std::size_t operator()(Key k) const noexcept {
    std::uint64_t x = static_cast<std::uint64_t>(k) ^ (static_cast<std::uint64_t>(k >> 64) * 0x9E3779B97F4A7C15ull);
    x ^= x >> 31;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 29;
    return static_cast<std::size_t>(x);
  }
};

inline void sort4(std::uint32_t* a) {
  auto cs = [](std::uint32_t& x, std::uint32_t& y) {
    if (y < x) std::swap(x, y);
  };
  cs(a[0], a[1]);
  cs(a[2], a[3]);
  cs(a[0], a[2]);
  cs(a[1], a[3]);
  cs(a[1], a[2]);
}

/// Critical exponent depends only on the multisets of edge and diagonal lengths.
Key signature(const DistanceIds& ids, const Quad& q) {
  std::uint32_t e[4] = {ids(q.idx[0], q.idx[1]), ids(q.idx[0], q.idx[2]), ids(q.idx[3], q.idx[1]),
                        ids(q.idx[3], q.idx[2])};
  sort4(e);
  std::uint32_t p = ids(q.idx[0], q.idx[3]);
  std::uint32_t r = ids(q.idx[1], q.idx[2]);
  if (r < p) std::swap(p, r);
  Key k = 0;
  for (auto v : e) k = (k << 21) | v;
  k = (k << 21) | p;
  k = (k << 21) | r;
  return k;
}

PowerSum deficit_sum(const QuadLengths& q) {
  PowerSum f;
  for (double e : q.edges) f.add(e, 1.0);
  for (double d : q.diagonals) f.add(d, -1.0);
  f.finalize();
  return f;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

QuadLengths lengths(const FiniteMetricSpace& m, const Quad& q) {
  QuadLengths out;
  out.edges = {m(q.x00(), q.x01()), m(q.x00(), q.x10()), m(q.x11(), q.x01()), m(q.x11(), q.x10())};
  out.diagonals = {m(q.x00(), q.x11()), m(q.x01(), q.x10())};
  return out;
}

double quad_deficit(const QuadLengths& q, double t) {
  auto pw = [t](double x) { return x == 0.0 ? 0.0 : std::pow(x, t); };
  double acc = 0.0;
  for (double e : q.edges) acc += pw(e);
  for (double d : q.diagonals) acc -= pw(d);
  return acc;
}

ExtendedExponent quad_critical_exponent(const QuadLengths& q, const ScanConfig& cfg) {
  return first_crossing(deficit_sum(q), 1.0, cfg).exponent;
}

std::uint64_t quad_count(std::size_t n) {
  std::uint64_t count = 0;
  for_each_quad(n, 0, n, [&](const Quad&) { ++count; });
  return count;
}

std::vector<Quad> enumerate_quads(const FiniteMetricSpace& m) {
  std::vector<Quad> out;
  for_each_quad(m.size(), 0, m.size(), [&](const Quad& q) { out.push_back(q); });
  return out;
}

PredicateResult roundness_predicate(const FiniteMetricSpace& m, double t, double tol, unsigned threads) {
  const std::size_t n = m.size();
  std::vector<double> powered(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const double d = m.flat()[k];
    powered[k] = d == 0.0 ? 0.0 : std::pow(d, t);
  }
  auto P = [&](std::size_t i, std::size_t j) { return powered[i * n + j]; };

  const unsigned workers = resolve_threads(threads);
  std::vector<PredicateResult> partial(workers);
  run_strided(workers, [&](unsigned w, unsigned stride) {
    PredicateResult& local = partial[w];
    for (std::size_t i = w; i < n; i += stride) {
      for_each_quad(n, i, i + 1, [&](const Quad& q) {
        const double pos = P(q.x00(), q.x01()) + P(q.x00(), q.x10()) + P(q.x11(), q.x01()) + P(q.x11(), q.x10());
        const double neg = P(q.x00(), q.x11()) + P(q.x01(), q.x10());
        const double deficit = pos - neg;
        if (deficit + tol * (pos + neg) >= 0.0) return;
        if (local.holds || deficit < local.worst_deficit ||
            (deficit == local.worst_deficit && q < *local.violation)) {
          local.holds = false;
          local.worst_deficit = deficit;
          local.violation = q;
        }
      });
    }
  });
  PredicateResult out;
  for (const auto& p : partial) {
    if (p.holds) continue;
    if (out.holds || p.worst_deficit < out.worst_deficit ||
        (p.worst_deficit == out.worst_deficit && *p.violation < *out.violation)) {
      out = p;
    }
  }
  return out;
}

ExponentBound roundness_estimate(const FiniteMetricSpace& m, const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = m.size();
  const DistanceIds ids(m);
  const unsigned workers = resolve_threads(cfg.threads);

  // 1. Group quads by length signature, keeping the lexicographically least quad.
  std::vector<std::unordered_map<Key, Quad, KeyHash>> maps(workers);
  std::vector<std::uint64_t> counts(workers, 0);
  run_strided(workers, [&](unsigned w, unsigned stride) {
    auto& local = maps[w];
    std::uint64_t count = 0;
    for (std::size_t i = w; i < n; i += stride) {
      for_each_quad(n, i, i + 1, [&](const Quad& q) {
        ++count;
        auto [it, inserted] = local.try_emplace(signature(ids, q), q);
        if (!inserted && q < it->second) it->second = q;
      });
    }
    counts[w] = count;
  });
  std::unordered_map<Key, Quad, KeyHash> merged = std::move(maps[0]);
  for (unsigned w = 1; w < workers; ++w) {
    for (const auto& [k, q] : maps[w]) {
      auto [it, inserted] = merged.try_emplace(k, q);
      if (!inserted && q < it->second) it->second = q;
    }
    maps[w].clear();
  }
  std::vector<std::pair<Key, Quad>> sigs(merged.begin(), merged.end());
  merged.clear();
  std::sort(sigs.begin(), sigs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  // 2. Critical exponent per signature.
  std::vector<PowerSum> sums(sigs.size());
  std::vector<Crossing> crossings(sigs.size());
  run_strided(workers, [&](unsigned w, unsigned stride) {
    for (std::size_t s = w; s < sigs.size(); s += stride) {
      sums[s] = deficit_sum(lengths(m, sigs[s].second));
      crossings[s] = first_crossing(sums[s], 1.0, cfg.scan);
    }
  });

  // 3. Deterministic reduction: minimise (exponent, quad).
  ExponentBound out;
  for (unsigned w = 0; w < workers; ++w) out.quad_count += counts[w];
  long first_cell = -1;
  for (std::size_t s = 0; s < sigs.size(); ++s) {
    const auto& c = crossings[s];
    const Quad& q = sigs[s].second;
    if (!c.exponent.is_infinite() &&
        (!out.witness || c.exponent < out.upper || (c.exponent == out.upper && q < *out.witness))) {
      out.upper = c.exponent;
      out.witness = q;
    }
    if (c.first_fail_cell >= 0 && (first_cell < 0 || c.first_fail_cell < first_cell)) first_cell = c.first_fail_cell;
    if (c.reentry) out.anomalies.push_back({q, *c.reentry});
  }
  std::sort(out.anomalies.begin(), out.anomalies.end(),
            [](const Anomaly& a, const Anomaly& b) { return a.quad < b.quad; });
  if (out.witness) out.witness_lengths = lengths(m, *out.witness);

  // 4. Lower bound: the predicate holds on every grid point before first_cell;
  //    bisect it inside that cell.
  if (first_cell < 0) {
    out.lower = ExtendedExponent::infinite();
  } else if (first_cell == 0) {
    out.lower = ExtendedExponent(1.0);
  } else {
    const double step = 1.0 / cfg.scan.grid;
    const double lo0 = 1.0 + static_cast<double>(first_cell - 1) * step;
    double lo = lo0, hi = std::min(cfg.scan.qmax, 1.0 + static_cast<double>(first_cell) * step);
    auto all_hold = [&](double t) {
      for (const auto& f : sums)
        if (!f.holds(t, kRoundingSlack)) return false;
      return true;
    };
    while (hi - lo > cfg.scan.tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (all_hold(mid)) lo = mid; else hi = mid;
    }
    out.lower = std::min(ExtendedExponent(lo), out.upper);
  }
  out.elapsed_ms = cfg.timing ? ms_since(t0) : 0.0;
  return out;
}

CubeCheck cube_check(const FiniteMetricSpace& m, const Cube& cube, double t) {
  if (cube.dim == 0 || cube.dim > 20) throw Error(ErrorCode::InvalidParameter, "cube dimension out of range");
  const std::size_t count = std::size_t{1} << cube.dim;
  if (cube.vertices.size() != count) {
    throw Error(ErrorCode::DimensionMismatch, "cube needs 2^dim vertices");
  }
  for (auto v : cube.vertices)
    if (v >= m.size()) throw Error(ErrorCode::IndexOutOfRange, "cube vertex out of range");
  auto pw = [t](double x) { return x == 0.0 ? 0.0 : std::pow(x, t); };
  const std::size_t full = count - 1;
  CubeCheck out;
  double d_min = std::numeric_limits<double>::infinity();
  double e_max = 0.0;
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) {
      const std::size_t diff = a ^ b;
      const double len = m(cube.vertices[a], cube.vertices[b]);
      if (diff == full) {
        out.deficit -= pw(len);
        d_min = std::min(d_min, len);
      }
      if ((diff & (diff - 1)) == 0) {
        out.deficit += pw(len);
        e_max = std::max(e_max, len);
      }
    }
  const double bound = std::pow(static_cast<double>(cube.dim), 1.0 / t) * e_max;
  out.ratio_ok = d_min <= bound * (1.0 + 1e-12) + 1e-300;
  return out;
}

}  // namespace roundness
