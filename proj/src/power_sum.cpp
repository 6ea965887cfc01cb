#include "roundness/power_sum.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "roundness/error.hpp"

namespace roundness {

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string to_string(ExtendedExponent e) {
  if (e.is_infinite()) return "inf";
  return std::to_string(e.value());
}

void PowerSum::add(double base, double coeff) {
  finalized_ = false;
  if (base <= 0.0 || coeff == 0.0) return;  // 0^t := 0
  terms_.push_back({base, coeff, std::abs(coeff)});
}

void PowerSum::finalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.base > b.base; });
  std::vector<Term> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().base == t.base) {
      merged.back().coeff += t.coeff;
      merged.back().weight += t.weight;
    } else {
      merged.push_back(t);
    }
  }
  if (!merged.empty()) {
    const double top = std::log(merged.front().base);
    for (auto& t : merged) t.log_ratio = std::log(t.base) - top;
  }
  terms_ = std::move(merged);
  finalized_ = true;
}

double PowerSum::value(double t) const {
  double acc = 0.0;
  for (const auto& term : terms_) acc += term.coeff * std::pow(term.base, t);
  return acc;
}

double PowerSum::magnitude(double t) const {
  double acc = 0.0;
  for (const auto& term : terms_) acc += term.weight * std::pow(term.base, t);
  return acc;
}

double PowerSum::shifted(double t, double eps) const {
  double acc = 0.0;
  for (const auto& term : terms_) {
    acc += (term.coeff + eps * term.weight) * std::exp(t * term.log_ratio);
  }
  return acc;
}

Crossing first_crossing(const PowerSum& f, double start, const ScanConfig& cfg) {
  Crossing out;
  if (f.empty()) return out;  // identically zero: never negative
  constexpr double eps = kRoundingSlack;
  if (!f.holds(start, eps)) {
    if (!f.holds(start, cfg.tol)) {
      throw Error(ErrorCode::InvalidQuad, "deficit negative at the starting exponent; input is not a metric");
    }
    out.exponent = ExtendedExponent(start);
    out.first_fail_cell = 0;
    return out;
  }
  const long cells = static_cast<long>(std::ceil((cfg.qmax - start) * cfg.grid - 1e-9));
  if (cells <= 0) return out;
  const double step = 1.0 / cfg.grid;
  auto grid_t = [&](long k) { return k >= cells ? cfg.qmax : start + static_cast<double>(k) * step; };

  const auto& terms = f.terms();
  int changes = 0;
  int prev = 0;
  for (const auto& term : terms) {
    const double c = term.coeff + eps * term.weight;
    const int s = c > 0 ? 1 : (c < 0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  const double lead = terms.front().coeff + eps * terms.front().weight;

  // Past t_stable the largest base dominates and the sign is that of `lead`.
  double t_stable = 0.0;
  if (terms.size() > 1) {
    double rest = 0.0;
    for (std::size_t i = 1; i < terms.size(); ++i) rest += std::abs(terms[i].coeff + eps * terms[i].weight);
    const double ratio = 2.0 * rest / std::abs(lead);
    if (ratio > 1.0) t_stable = std::log(ratio) / -terms[1].log_ratio;
  }

  long fail = -1;
  if (changes <= 1) {
    // At most one real zero, and f(start) >= 0: failing grid points form a suffix.
    if (f.holds(grid_t(cells), eps)) return out;
    long lo = 0, hi = cells;
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      if (f.holds(grid_t(mid), eps)) lo = mid; else hi = mid;
    }
    fail = hi;
  } else {
    for (long k = 1; k <= cells; ++k) {
      const double t = grid_t(k);
      if (!f.holds(t, eps)) { fail = k; break; }
      if (lead > 0 && t > t_stable) break;
    }
    if (fail < 0) return out;
    for (long k = fail + 1; k <= cells; ++k) {
      const double t = grid_t(k);
      if (f.holds(t, eps)) { out.reentry = t; break; }
      if (lead < 0 && t > t_stable) break;
    }
  }
  out.first_fail_cell = fail;

  double lo = grid_t(fail - 1), hi = grid_t(fail);
  while (hi - lo > cfg.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f.holds(mid, eps)) lo = mid; else hi = mid;
  }
  out.exponent = ExtendedExponent(lo);
  return out;
}

}  // namespace roundness
