#include "roundness/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "roundness/constructions.hpp"
#include "roundness/error.hpp"
#include "roundness/kernel.hpp"
#include "roundness/lattice.hpp"
#include "roundness/power_sum.hpp"
#include "roundness/quad.hpp"

namespace roundness {

namespace {

constexpr double kExact = 1e-9;
constexpr double kLoose = 1e-6;

bool near(ExtendedExponent e, double v, double tol) { return !e.is_infinite() && std::abs(e.value() - v) <= tol; }

ExponentBound cayley_roundness(const std::string& spec, const std::string& gens, int radius, const RunConfig& cfg,
                               CayleyBall* keep = nullptr, Group* group_out = nullptr) {
  Group g(parse_group_spec(spec));
  auto ball = cayley_ball(g, parse_generating_set(g, gens), radius, cfg.ball_cap);
  auto bound = roundness_estimate(ball.metric, cfg);
  if (keep) *keep = std::move(ball);
  if (group_out) *group_out = g;
  return bound;
}

Json graph_roundness(const WeightedGraph& graph, const RunConfig& cfg, ExponentBound& out) {
  auto m = build_from_graph(graph);
  out = roundness_estimate(m, cfg);
  return exponent_json(out.upper);
}

// --- claims ------------------------------------------------------------------

Json z2_standard_square(const RunConfig& cfg, bool& pass) {
  CayleyBall ball;
  Group g(GroupSpec::free_abelian(2));
  auto b = cayley_roundness("Z^2", "(1,0),(0,1)", 2, cfg, &ball, &g);
  Json j{{"upper", exponent_json(b.upper)}};
  pass = near(b.upper, 1.0, kExact) && b.witness.has_value();
  if (b.witness) {
    auto q = measure_quad(g, ball.generators, witness_corners(ball, *b.witness));
    j["witness"] = to_json(q, g);
    const std::vector<std::string> expected = {"(0,0)", "(1,0)", "(1,1)", "(0,1)"};
    pass = pass && j["witness"]["corners"].get<std::vector<std::string>>() == expected &&
           q.edges == std::array<int, 4>{1, 1, 1, 1} && q.diagonals == std::array<int, 2>{2, 2};
  }
  return j;
}

Json z2_hexagonal_radii(const RunConfig& cfg, bool& pass) {
  Json rows = Json::array();
  pass = true;
  double previous = std::numeric_limits<double>::infinity();
  double last = previous;
  for (int r = 2; r <= 6; ++r) {
    auto b = cayley_roundness("Z^2", "(1,0),(0,1),(1,1)", r, cfg);
    const double oracle = hexagonal_exponent_bound(r - 1);
    const double upper = b.upper.value();
    pass = pass && !b.upper.is_infinite() && upper <= oracle + kExact && upper <= previous + kExact;
    rows.push_back({{"radius", r}, {"upper", exponent_json(b.upper)}, {"oracle", oracle}});
    previous = upper;
    last = upper;
  }
  pass = pass && last <= 1.30;
  return Json{{"radii", rows}};
}

Json tree_samples(const RunConfig& cfg, bool& pass) {
  std::mt19937_64 rng(cfg.seed + 0x7a3e);
  std::uniform_int_distribution<std::size_t> size(4, 40);
  std::size_t predicate_ok = 0, upper_two = 0, with_midpoint = 0, max_n = 0;
  const std::size_t samples = 50;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t n = size(rng);
    max_n = std::max(max_n, n);
    WeightedGraph g{n, {}};
    for (std::size_t v = 1; v < n; ++v) g.edges.push_back({std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v, 1.0});
    auto m = build_tree_metric(g);
    if (roundness_predicate(m, 2.0, cfg.scan.tol, cfg.threads).holds) ++predicate_ok;
    bool midpoint = false;
    for (std::size_t x = 0; x < n && !midpoint; ++x)
      for (std::size_t y = 0; y < n && !midpoint; ++y)
        for (std::size_t z = 0; z < n && !midpoint; ++z)
          midpoint = m(x, z) > 0 && m(x, y) == m(y, z) && 2 * m(x, y) == m(x, z);
    if (midpoint) {
      ++with_midpoint;
      if (near(roundness_estimate(m, cfg).upper, 2.0, kExact)) ++upper_two;
    }
  }
  pass = predicate_ok == samples && upper_two == with_midpoint;
  return Json{{"samples", samples},      {"max_vertices", max_n},  {"predicate_at_2", predicate_ok},
              {"with_midpoint", with_midpoint}, {"upper_equal_2", upper_two}};
}

Json complete_graphs(const RunConfig& cfg, bool& pass) {
  Json j;
  pass = true;
  for (std::size_t n : {3, 4, 5}) {
    ExponentBound b;
    j["K" + std::to_string(n)] = graph_roundness(WeightedGraph::complete(n), cfg, b);
    pass = pass && b.upper.is_infinite();
  }
  return j;
}

Json cycles(const RunConfig& cfg, bool& pass) {
  Json j;
  pass = true;
  for (std::size_t n : {3, 4, 5, 6, 7, 8}) {
    ExponentBound b;
    j["C" + std::to_string(n)] = graph_roundness(WeightedGraph::cycle(n), cfg, b);
    if (n == 3) pass = pass && b.upper.is_infinite();
    else if (n % 2 == 0) pass = pass && near(b.upper, 1.0, kExact);
    else pass = pass && !b.upper.is_infinite() && b.upper.value() > 1.0 + kLoose;
  }
  return j;
}

Json circle_samples(const RunConfig& cfg, bool& pass) {
  Json j = Json::array();
  pass = true;
  for (std::size_t m = 2; m <= 6; ++m) {
    auto space = build_circle(2 * m, 2.0 * static_cast<double>(m));
    auto b = roundness_estimate(space, cfg);
    // a betweenness quad has equal edge and diagonal sums
    bool between = false;
    if (b.witness) {
      const auto& w = b.witness_lengths;
      const double e = std::accumulate(w.edges.begin(), w.edges.end(), 0.0);
      const double d = w.diagonals[0] + w.diagonals[1];
      between = std::abs(e - d) <= kExact * std::max(1.0, e);
    }
    pass = pass && near(b.upper, 1.0, kExact) && between;
    j.push_back({{"points", 2 * m}, {"upper", exponent_json(b.upper)}, {"betweenness_witness", between}});
  }
  return j;
}

Json plane_samples(const RunConfig& cfg, bool& pass) {
  std::mt19937_64 rng(cfg.seed + 0x91c5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t samples = 200;
  std::size_t ok = 0;
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<std::vector<double>> pts(12, std::vector<double>(2));
    for (auto& p : pts)
      for (auto& c : p) c = u(rng);
    auto r = roundness_predicate(build_euclidean(pts, 2.0), 2.0, cfg.scan.tol, cfg.threads);
    if (r.holds) ++ok;
    worst = std::min(worst, r.worst_deficit);
  }
  pass = ok == samples;
  return Json{{"samples", samples}, {"predicate_at_2", ok}, {"worst_deficit", worst}};
}

Json free_group_augmented(const RunConfig& cfg, bool& pass) {
  Group f2(GroupSpec::free(2));
  auto built = augment_round_one(f2, parse_generating_set(f2, "x,y"), f2.parse("x"), f2.parse("y"));
  auto ball = cayley_ball(f2, built.generators, 2, cfg.ball_cap);
  auto b = roundness_estimate(ball.metric, cfg);
  std::vector<std::string> gens;
  for (const auto& g : built.generators.elements) gens.push_back(f2.format(g));
  auto witness = to_json(built.witness, f2);
  const std::vector<std::string> expected = {"x", "y", "x^-1", "y^-1"};
  pass = near(b.upper, 1.0, kExact) && witness["corners"].get<std::vector<std::string>>() == expected &&
         built.witness.edges == std::array<int, 4>{1, 1, 1, 1} && built.witness.diagonals == std::array<int, 2>{2, 2};
  return Json{{"generators", gens}, {"ball_size", ball.elements.size()}, {"upper", exponent_json(b.upper)},
              {"witness", witness}};
}

Json free_group_three_generators(const RunConfig& cfg, bool& pass) {
  auto b = cayley_roundness("F_2", "x,y,y^-1*x", 3, cfg);
  const double target = std::log(3.0) / std::log(2.0);
  pass = !b.upper.is_infinite() && b.upper.value() <= target + cfg.scan.tol + kLoose && near(b.upper, target, kLoose);
  Group f2(GroupSpec::free(2));
  return Json{{"upper", exponent_json(b.upper)},
              {"log2_3", target},
              {"note", *bound_annotation(f2, parse_generating_set(f2, "x,y,y^-1*x"))}};
}

double simplex_mass(const FiniteMetricSpace& m, const DoubleSimplex& s, double t) {
  auto term = [&](std::size_t i, std::size_t j) { return m(i, j) > 0 ? std::pow(m(i, j), t) : 0.0; };
  double mass = 0.0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    for (std::size_t j = 0; j < s.n(); ++j) mass += term(s.a[i], s.b[j]);
    for (std::size_t j = i + 1; j < s.n(); ++j) mass += term(s.a[i], s.a[j]) + term(s.b[i], s.b[j]);
  }
  return mass;
}

struct GraphCase {
  std::string name;
  FiniteMetricSpace metric;
  double gr = 0.0;
};

std::vector<GraphCase> small_graph_cases(const RunConfig& cfg) {
  std::vector<GraphCase> out;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t k = 0;
    for (const auto& g : connected_graphs(n)) {
      auto m = build_from_graph(g);
      out.push_back({"G" + std::to_string(n) + "_" + std::to_string(k++), m, gr_via_kernel(m, cfg.scan)});
    }
  }
  return out;
}

Json kernel_cross_validation(const RunConfig& cfg, bool& pass) {
  auto cases = small_graph_cases(cfg);
  std::size_t agree = 0, clean = 0, simplices = 0;
  std::vector<std::size_t> per_order(7, 0);
  for (const auto& c : cases) {
    per_order[c.metric.size()]++;
    auto search = gr_upper_search(c.metric, 3, 0, cfg);
    if (search.upper.is_infinite() || c.gr <= search.upper.value() + kLoose) ++agree;
    const double t = std::max(0.0, c.gr - kLoose);
    bool violated = false;
    for (std::size_t n = 2; n <= 3; ++n) {
      for_each_simplex(c.metric.size(), n, [&](const DoubleSimplex& s) {
        ++simplices;
        if (simplex_deficit(c.metric, s, t) < -kRoundingSlack * simplex_mass(c.metric, s, t)) violated = true;
      });
    }
    if (!violated) ++clean;
  }
  pass = agree == cases.size() && clean == cases.size() && per_order[6] == 112;
  return Json{{"graphs", cases.size()}, {"graphs_by_order", per_order}, {"kernel_below_search", agree},
              {"no_violation_below_kernel", clean}, {"simplices_checked", simplices}};
}

Json kernel_c4_and_path(const RunConfig& cfg, bool& pass) {
  const double gr = gr_via_kernel(build_from_graph(WeightedGraph::cycle(4)), cfg.scan);
  auto path = kernel_test(build_tree_metric(WeightedGraph::path(4)), 1.0);
  pass = std::abs(gr - 1.0) <= kLoose && path.is_negative;
  return Json{{"c4_generalized_roundness", gr}, {"p4_kernel", to_json(path)}};
}

Json schoenberg_embeddings(const RunConfig& cfg, bool& pass) {
  auto cases = small_graph_cases(cfg);
  cases.push_back({"C4", build_from_graph(WeightedGraph::cycle(4)), 1.0});
  cases.push_back({"P4", build_tree_metric(WeightedGraph::path(4)), 1.0});
  std::size_t ok = 0;
  double worst = 0.0;
  for (const auto& c : cases) {
    try {
      auto e = schoenberg_embed(c.metric, c.gr);
      worst = std::max(worst, e.max_relative_error);
      if (e.max_relative_error <= kLoose) ++ok;
    } catch (const Error&) {
    }
  }
  pass = ok == cases.size();
  return Json{{"pairs", cases.size()}, {"reconstructed", ok}, {"max_relative_error", worst}};
}

Json z2_box_exhaustive(const RunConfig&, bool& pass) {
  Z2EnumerationOptions opts;
  opts.box = 3;
  auto s = scan_z2(opts);
  std::size_t large = 0, large_with_pair = 0;
  for (std::size_t k = 8; k < s.sets_by_size.size(); ++k) {
    large += s.sets_by_size[k];
    large_with_pair += s.pair_found_by_size[k];
  }
  pass = large > 0 && large == large_with_pair && s.star_sets == s.star_size_six_hexagonal;
  return Json{{"box", 3},
              {"generating_sets", s.sets},
              {"sets_size_at_least_8", large},
              {"with_nonclosed_pair", large_with_pair},
              {"star_sets", s.star_sets},
              {"star_sets_hexagonal_size_6", s.star_size_six_hexagonal},
              {"doublestar_sets", s.doublestar_sets}};
}

Json torsion_constructions(const RunConfig& cfg, bool& pass) {
  Json j;
  pass = true;
  for (long long n : {4LL, 6LL, 8LL, 9LL}) {
    Group g(GroupSpec::cyclic(n));
    auto built = torsion_construction(g, parse_generating_set(g, "1"), g.parse("1"));
    auto b = roundness_estimate(cayley_ball(g, built.generators, 2, cfg.ball_cap).metric, cfg);
    pass = pass && near(b.upper, 1.0, kExact);
    j["Z/" + std::to_string(n)] = {{"witness", to_json(built.witness, g)}, {"upper", exponent_json(b.upper)}};
  }
  for (long long n : {2LL, 3LL, 5LL, 7LL}) {
    Group g(GroupSpec::cyclic(n));
    std::string outcome = "accepted";
    try {
      torsion_construction(g, parse_generating_set(g, "1"), g.parse("1"));
    } catch (const Error& e) {
      outcome = std::string(to_string(e.code()));
    }
    pass = pass && outcome == "UnsupportedOrder";
    j["Z/" + std::to_string(n)] = outcome;
  }
  return j;
}

using ClaimFn = Json (*)(const RunConfig&, bool&);

struct ClaimDef {
  ClaimInfo info;
  ClaimFn fn;  // null for the determinism claim
};

const std::vector<ClaimDef>& definitions() {
  static const std::vector<ClaimDef> defs = {
      {{"z2-standard-square", "Z^2 with (1,0),(0,1), R=2: upper 1 +- 1e-9, witness [0, i, i+j, j]"}, z2_standard_square},
      {{"z2-hexagonal-radii", "Z^2 with (1,0),(0,1),(1,1), R=2..6: non-increasing, <= root of (n+1)^t - n^t = 2, R=6 <= 1.30"},
       z2_hexagonal_radii},
      {{"tree-samples", "50 random trees: predicate at t=2 holds, upper 2 +- 1e-9 with a midpoint triple"}, tree_samples},
      {{"complete-graphs", "K3, K4, K5: upper inf"}, complete_graphs},
      {{"cycles", "C4, C6, C8: upper 1 +- 1e-9; C3 inf; C5, C7 > 1 + 1e-6"}, cycles},
      {{"circle-samples", "circle with 2m points, length 2m, m=2..6: upper 1 +- 1e-9 via a betweenness quad"},
       circle_samples},
      {{"plane-samples", "200 random 12-point plane samples: predicate at t=2 holds"}, plane_samples},
      {{"free-group-augmented", "F_2 six-generator presentation: upper 1, witness [x, y, x^-1, y^-1]"},
       free_group_augmented},
      {{"free-group-three-generators", "F_2 with x,y,y^-1*x, R=3: upper = log2(3) within 1e-6"},
       free_group_three_generators},
      {{"kernel-cross-validation", "connected graphs with <= 6 vertices: kernel bisection <= exhaustive simplex bound"},
       kernel_cross_validation},
      {{"kernel-c4-and-path", "C4 generalized roundness 1 +- 1e-6; P4 kernel negative at p=1"}, kernel_c4_and_path},
      {{"schoenberg-embeddings", "every kernel-passing pair embeds with relative error <= 1e-6"}, schoenberg_embeddings},
      {{"z2-box-exhaustive", "box B=3: every generating set with |S| >= 8 has a non-closed pair; star sets are hexagonal of size 6"},
       z2_box_exhaustive},
      {{"torsion-constructions", "Z/4, Z/6, Z/8, Z/9 verified with upper 1; orders 2, 3, 5, 7 rejected"},
       torsion_constructions},
      {{"thread-determinism", "the claims above give byte-identical reports with 1 and 4 threads"}, nullptr},
  };
  return defs;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Json determinism(const RunConfig& cfg, bool& pass) {
  std::vector<std::string> ids;
  for (const auto& d : definitions())
    if (d.fn) ids.push_back(d.info.id);
  RunConfig one = cfg, four = cfg;
  one.threads = 1;
  four.threads = 4;
  one.timing = four.timing = false;
  const auto a = to_json(run_repro(one, ids)).dump();
  const auto b = to_json(run_repro(four, ids)).dump();
  pass = a == b;
  return Json{{"claims_compared", ids.size()}, {"report_bytes", a.size()}, {"identical", a == b}};
}

}  // namespace

bool ReproReport::all_passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass; });
}

const std::vector<ClaimInfo>& repro_claims() {
  static const std::vector<ClaimInfo> infos = [] {
    std::vector<ClaimInfo> out;
    for (const auto& d : definitions()) out.push_back(d.info);
    return out;
  }();
  return infos;
}

ClaimResult run_claim(const std::string& id, const RunConfig& cfg) {
  const auto& defs = definitions();
  auto it = std::find_if(defs.begin(), defs.end(), [&](const ClaimDef& d) { return d.info.id == id; });
  if (it == defs.end()) throw Error(ErrorCode::InvalidParameter, "unknown claim '" + id + "'");
  ClaimResult r;
  r.id = id;
  r.expected = it->info.expected;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.computed = it->fn ? it->fn(cfg, r.pass) : determinism(cfg, r.pass);
  } catch (const Error& e) {
    r.pass = false;
    r.computed = Json{{"error", e.what()}};
  }
  r.elapsed_ms = cfg.timing ? elapsed(t0) : 0.0;
  return r;
}

ReproReport run_repro(const RunConfig& cfg, const std::vector<std::string>& only) {
  for (const auto& id : only) {
    const auto& c = repro_claims();
    if (std::none_of(c.begin(), c.end(), [&](const ClaimInfo& i) { return i.id == id; }))
      throw Error(ErrorCode::InvalidParameter, "unknown claim '" + id + "'");
  }
  ReproReport report;
  for (const auto& info : repro_claims()) {
    if (!only.empty() && std::find(only.begin(), only.end(), info.id) == only.end()) continue;
    report.claims.push_back(run_claim(info.id, cfg));
  }
  return report;
}

Json to_json(const ReproReport& report) {
  Json claims = Json::array();
  for (const auto& c : report.claims)
    claims.push_back({{"claim_id", c.id},
                      {"expected", c.expected},
                      {"computed", c.computed},
                      {"pass", c.pass},
                      {"elapsed_ms", c.elapsed_ms}});
  return Json{{"all_passed", report.all_passed()}, {"claims", claims}};
}

std::vector<WeightedGraph> connected_graphs(std::size_t vertices) {
  if (vertices == 0 || vertices > 7) throw Error(ErrorCode::InvalidParameter, "graph catalog covers 1..7 vertices");
  const std::size_t n = vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> slot(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      slot[i][j] = slot[j][i] = edges.size();
      edges.emplace_back(i, j);
    }
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  auto connected = [&](std::uint32_t mask) {
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!(mask >> e & 1U)) continue;
        const auto [u, v] = edges[e];
        if (frontier >> u & 1U) next |= 1U << v;
        if (frontier >> v & 1U) next |= 1U << u;
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == (1U << n) - 1;
  };

  std::set<std::uint32_t> classes;
  for (std::uint32_t mask = 0; mask < (1U << edges.size()); ++mask) {
    if (!connected(mask)) continue;
    std::uint32_t best = UINT32_MAX;
    for (const auto& perm : perms) {
      std::uint32_t img = 0;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (mask >> e & 1U) img |= 1U << slot[perm[edges[e].first]][perm[edges[e].second]];
      best = std::min(best, img);
    }
    classes.insert(best);
  }
  std::vector<WeightedGraph> out;
  for (auto mask : classes) {
    WeightedGraph g{n, {}};
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (mask >> e & 1U) g.edges.push_back({edges[e].first, edges[e].second, 1.0});
    out.push_back(std::move(g));
  }
  return out;
}

std::optional<std::string> bound_annotation(const Group& group, const GeneratingSet& sigma) {
  if (group.spec() != GroupSpec::free(2)) return std::nullopt;
  auto target = parse_generating_set(group, "x,y,y^-1*x");
  if (sigma.size() != target.size()) return std::nullopt;
  for (const auto& g : target.elements)
    if (!sigma.contains(g)) return std::nullopt;
  return "conjectured equality: the roundness of this Cayley graph is believed to equal log2(3) = ln3/ln2, "
         "which is stated only as an upper bound";
}

double hexagonal_exponent_bound(double n) {
  auto f = [n](double t) { return std::pow(n + 1.0, t) - std::pow(n, t) - 2.0; };
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace roundness
