#include "roundness/kernel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include "roundness/error.hpp"
#include "roundness/parallel.hpp"
#include "roundness/power_sum.hpp"

namespace roundness {

namespace {

using Signature = std::vector<std::pair<double, int>>;

/// Coefficient of each distinct distance in the simplex deficit.
Signature simplex_signature(const FiniteMetricSpace& m, const DoubleSimplex& s) {
  std::map<double, int> coeff;
  const std::size_t n = s.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) coeff[m(s.a[i], s.b[j])] += 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      coeff[m(s.a[i], s.a[j])] -= 1;
      coeff[m(s.b[i], s.b[j])] -= 1;
    }
  Signature out;
  for (auto [d, c] : coeff)
    if (d > 0.0 && c != 0) out.push_back({d, c});
  return out;
}

PowerSum simplex_sum(const FiniteMetricSpace& m, const DoubleSimplex& s) {
  PowerSum f;
  const std::size_t n = s.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f.add(m(s.a[i], s.b[j]), 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      f.add(m(s.a[i], s.a[j]), -1.0);
      f.add(m(s.b[i], s.b[j]), -1.0);
    }
  f.finalize();
  return f;
}

void check_simplex(const FiniteMetricSpace& m, const DoubleSimplex& s) {
  if (s.a.size() != s.b.size()) throw Error(ErrorCode::DimensionMismatch, "simplex lists differ in length");
  if (s.a.size() < 2) throw Error(ErrorCode::InvalidParameter, "double simplex needs n >= 2");
  for (auto i : s.a)
    if (i >= m.size()) throw Error(ErrorCode::IndexOutOfRange, "simplex index out of range");
  for (auto i : s.b)
    if (i >= m.size()) throw Error(ErrorCode::IndexOutOfRange, "simplex index out of range");
}

std::vector<std::vector<std::size_t>> multisets(std::size_t points, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(n, 0);
  while (true) {
    out.push_back(cur);
    std::size_t k = n;
    while (k > 0 && cur[k - 1] == points - 1) --k;
    if (k == 0) break;
    const std::size_t v = cur[k - 1] + 1;
    for (std::size_t r = k - 1; r < n; ++r) cur[r] = v;
  }
  return out;
}

bool better(ExtendedExponent e, const DoubleSimplex& s, ExtendedExponent best, const std::optional<DoubleSimplex>& w) {
  if (e.is_infinite()) return false;
  if (!w || e < best) return true;
  if (e > best) return false;
  if (s.n() != w->n()) return s.n() < w->n();
  return s < *w;
}

}  // namespace

double simplex_deficit(const FiniteMetricSpace& m, const DoubleSimplex& s, double t) {
  check_simplex(m, s);
  auto pw = [t](double x) { return x == 0.0 ? 0.0 : std::pow(x, t); };
  const std::size_t n = s.n();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc += pw(m(s.a[i], s.b[j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) acc -= pw(m(s.a[i], s.a[j])) + pw(m(s.b[i], s.b[j]));
  return acc;
}

ExtendedExponent simplex_critical_exponent(const FiniteMetricSpace& m, const DoubleSimplex& s,
                                           const ScanConfig& cfg) {
  check_simplex(m, s);
  return first_crossing(simplex_sum(m, s), 0.0, cfg).exponent;
}

std::size_t exhaustive_simplex_order(std::size_t points) { return points <= 8 ? 3 : 2; }

void for_each_simplex(std::size_t points, std::size_t n, const std::function<void(const DoubleSimplex&)>& f) {
  if (points == 0 || n == 0) return;
  const auto sets = multisets(points, n);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i; j < sets.size(); ++j) f(DoubleSimplex{sets[i], sets[j]});
}

SimplexBound gr_upper_search(const FiniteMetricSpace& m, std::size_t max_n, std::uint64_t budget,
                             const RunConfig& cfg) {
  if (max_n < 2) throw Error(ErrorCode::InvalidParameter, "max_n must be >= 2");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t points = m.size();
  const std::size_t exhaustive = std::min(max_n, exhaustive_simplex_order(points));
  const unsigned workers = resolve_threads(cfg.threads);

  SimplexBound out;
  out.seed = cfg.seed;
  for (std::size_t n = 2; n <= exhaustive; ++n) {
    const auto sets = multisets(points, n);
    struct Partial {
      ExtendedExponent best = ExtendedExponent::infinite();
      std::optional<DoubleSimplex> witness;
      std::uint64_t count = 0;
    };
    std::vector<Partial> partial(workers);
    run_strided(workers, [&](unsigned w, unsigned stride) {
      auto& local = partial[w];
      std::map<Signature, ExtendedExponent> cache;
      for (std::size_t i = w; i < sets.size(); i += stride)
        for (std::size_t j = i; j < sets.size(); ++j) {
          DoubleSimplex s{sets[i], sets[j]};
          ++local.count;
          auto sig = simplex_signature(m, s);
          auto it = cache.find(sig);
          if (it == cache.end()) {
            it = cache.emplace(std::move(sig), first_crossing(simplex_sum(m, s), 0.0, cfg.scan).exponent).first;
          }
          if (better(it->second, s, local.best, local.witness)) {
            local.best = it->second;
            local.witness = std::move(s);
          }
        }
    });
    for (auto& p : partial) {
      out.exhaustive_count += p.count;
      if (p.witness && better(p.best, *p.witness, out.upper, out.witness)) {
        out.upper = p.best;
        out.witness = p.witness;
      }
    }
  }

  if (max_n > exhaustive && budget > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, points - 1);
    const std::size_t orders = max_n - exhaustive;
    for (std::size_t n = exhaustive + 1; n <= max_n; ++n) {
      std::uint64_t share = budget / orders + (n == exhaustive + 1 ? budget % orders : 0);
      for (std::uint64_t s = 0; s < share; ++s) {
        DoubleSimplex simplex{std::vector<std::size_t>(n), std::vector<std::size_t>(n)};
        for (auto& v : simplex.a) v = pick(rng);
        for (auto& v : simplex.b) v = pick(rng);
        ++out.sampled_count;
        const auto e = first_crossing(simplex_sum(m, simplex), 0.0, cfg.scan).exponent;
        if (better(e, simplex, out.upper, out.witness)) {
          out.upper = e;
          out.witness = std::move(simplex);
        }
      }
    }
  }
  out.elapsed_ms = cfg.timing ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() : 0.0;
  return out;
}

Eigen::MatrixXd power_matrix(const FiniteMetricSpace& m, double p) {
  if (!(p >= 0.0)) throw Error(ErrorCode::InvalidParameter, "exponent must be >= 0");
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd H(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = m(i, j);
      H(i, j) = d == 0.0 ? 0.0 : std::pow(d, p);
    }
  return H;
}

namespace {

Eigen::MatrixXd centered(const Eigen::MatrixXd& H) {
  const auto n = H.rows();
  const Eigen::MatrixXd P =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd C = P * H * P;
  return 0.5 * (C + C.transpose());  // symmetrise rounding noise
}

}  // namespace

KernelReport is_negative_kernel(const Eigen::MatrixXd& H, double rel_tol) {
  if (H.rows() != H.cols() || H.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "kernel matrix must be square");
  const double scale = H.cwiseAbs().maxCoeff();
  const double exact_tol = 1e-12 * scale;
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    if (std::abs(H(i, i)) > exact_tol) throw Error(ErrorCode::NonzeroDiagonal, "H(" + std::to_string(i) + "," + std::to_string(i) + ") != 0");
    for (Eigen::Index j = i + 1; j < H.cols(); ++j)
      if (std::abs(H(i, j) - H(j, i)) > exact_tol) {
        throw Error(ErrorCode::AsymmetricInput, "H is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }
  KernelReport out;
  out.tol = rel_tol * scale;
  if (H.rows() == 1) {
    out.is_negative = true;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centered(H), Eigen::EigenvaluesOnly);
  out.max_projected_eigenvalue = eig.eigenvalues().maxCoeff();
  out.is_negative = out.max_projected_eigenvalue <= out.tol;
  return out;
}

double gr_via_kernel(const FiniteMetricSpace& m, const ScanConfig& cfg) {
  auto passes = [&](double p) { return is_negative_kernel(power_matrix(m, p)).is_negative; };
  if (passes(cfg.qmax)) return cfg.qmax;
  if (!passes(0.0)) return 0.0;
  // d^p negative => d^(alpha p) negative for 0 < alpha <= 1, so the set of
  // passing exponents is an interval starting at 0.
  double lo = 0.0, hi = cfg.qmax;
  while (hi - lo > cfg.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (passes(mid)) lo = mid; else hi = mid;
  }
  return lo;
}

EmbeddingResult schoenberg_embed(const FiniteMetricSpace& m, double p) {
  const Eigen::MatrixXd H = power_matrix(m, p);
  const auto report = is_negative_kernel(H);
  if (!report.is_negative) {
    throw Error(ErrorCode::KernelNotNegative,
                "d^p is not a negative kernel (max projected eigenvalue " + std::to_string(report.max_projected_eigenvalue) + ")");
  }
  const auto n = H.rows();
  EmbeddingResult out;
  if (n == 1) {
    out.coords = Eigen::MatrixXd::Zero(1, 0);
    return out;
  }
  const Eigen::MatrixXd G = -0.5 * centered(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const double top = std::max(lambda.maxCoeff(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = n - 1; k >= 0; --k)
    if (lambda(k) > 1e-9 * top) keep.push_back(k);
  out.coords = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    Eigen::VectorXd v = eig.eigenvectors().col(keep[c]);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;  // fixed orientation for reproducible output
    out.coords.col(static_cast<Eigen::Index>(c)) = v * std::sqrt(lambda(keep[c]));
  }
  const double floor = 1e-12 * std::max(H.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double sq = (out.coords.row(i) - out.coords.row(j)).squaredNorm();
      out.max_relative_error = std::max(out.max_relative_error, std::abs(sq - H(i, j)) / std::max(H(i, j), floor));
    }
  return out;
}

KernelReport kernel_test(const FiniteMetricSpace& m, double p, double rel_tol) {
  auto report = is_negative_kernel(power_matrix(m, p), rel_tol);
  report.p = p;
  return report;
}

}  // namespace roundness
