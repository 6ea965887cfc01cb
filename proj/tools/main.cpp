#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "roundness/cayley.hpp"
#include "roundness/constructions.hpp"
#include "roundness/error.hpp"
#include "roundness/io.hpp"
#include "roundness/kernel.hpp"
#include "roundness/lattice.hpp"
#include "roundness/quad.hpp"
#include "roundness/repro.hpp"

using namespace roundness;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitComputation = 4;
constexpr int kExitRepro = 5;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return kExitParse;
    case ErrorCode::InvalidQuad:
    case ErrorCode::KernelNotNegative:
    case ErrorCode::BallTooLarge:
    case ErrorCode::DegenerateConstruction: return kExitComputation;
    default: return kExitValidation;
  }
}

struct Globals {
  RunConfig cfg;
  std::string out;
  bool no_timing = false;
};

void validate(const RunConfig& cfg) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidParameter, what); };
  if (!(cfg.scan.tol > 0.0)) bad("--tol must be positive");
  if (!(cfg.scan.qmax > 1.0) || !std::isfinite(cfg.scan.qmax)) bad("--qmax must be finite and above 1");
  if (cfg.scan.grid < 1) bad("--grid must be positive");
  if (cfg.ball_cap < 1) bad("--ball-cap must be positive");
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidParameter, "cannot write " + path);
  f << text;
}

std::string sigma_text(const Group& g, const GeneratingSet& s) {
  std::string out;
  for (const auto& e : s.elements) out += (out.empty() ? "" : " ") + g.format(e);
  return out;
}

Json generator_list(const Group& g, const GeneratingSet& s) {
  Json j = Json::array();
  for (const auto& e : s.elements) j.push_back(g.format(e));
  return j;
}

Json genround_json(const FiniteMetricSpace& m, std::size_t max_n, std::uint64_t budget, const RunConfig& cfg) {
  auto search = gr_upper_search(m, max_n, budget, cfg);
  Json j{{"generalized_roundness", gr_via_kernel(m, cfg.scan)}};
  j.update(to_json(search, m));
  return j;
}

int cmd_cayley(const Globals& gl, const std::string& mode, const std::string& spec, const std::string& gens, int radius,
               const std::string& augment, const std::string& torsion, std::size_t max_n, std::uint64_t budget) {
  Group group(parse_group_spec(spec));
  auto sigma = parse_generating_set(group, gens);
  Json construction;
  if (!augment.empty()) {
    auto xy = split_top_level(augment);
    if (xy.size() != 2) throw Error(ErrorCode::ParseError, "--augment needs two elements: x,y");
    auto built = augment_round_one(group, sigma, group.parse(xy[0]), group.parse(xy[1]));
    sigma = built.generators;
    construction = {{"kind", "augment"}, {"witness", to_json(built.witness, group)}};
  } else if (!torsion.empty()) {
    auto built = torsion_construction(group, sigma, group.parse(torsion));
    sigma = built.generators;
    construction = {{"kind", "torsion"}, {"witness", to_json(built.witness, group)}};
  }
  auto ball = cayley_ball(group, sigma, radius, gl.cfg.ball_cap);
  Json j{{"group", to_string(group.spec())},
         {"generators", generator_list(group, sigma)},
         {"radius", radius},
         {"ball_size", ball.elements.size()}};
  if (!construction.is_null()) j["construction"] = construction;
  if (mode == "ball") {
    j = to_json(ball, group);
    if (!construction.is_null()) j["construction"] = construction;
  } else if (mode == "roundness") {
    j.update(to_json(roundness_estimate(ball.metric, gl.cfg), ball.metric));
    j["certified"] = "upper bounds the roundness of the whole Cayley graph (exact word metric); lower applies to this ball";
    if (auto note = bound_annotation(group, sigma)) j["note"] = *note;
  } else {
    j.update(genround_json(ball.metric, max_n, budget, gl.cfg));
  }
  emit(j);
  return 0;
}

int cmd_scan(const Globals& gl, const Z2EnumerationOptions& opts, int roundness_radius) {
  std::ofstream csv;
  if (!gl.out.empty()) {
    csv.open(gl.out, std::ios::binary);
    if (!csv) throw Error(ErrorCode::InvalidParameter, "cannot write " + gl.out);
    csv << "set_id,size,elements,star,doublestar,pair_found,roundness_upper\n";
  }
  Group z2(GroupSpec::free_abelian(2));
  auto summary = scan_z2(opts, [&](const Z2ScanRow& row) {
    if (!csv.is_open()) return;
    auto sigma = from_vectors(z2, symmetric_from_representatives(row.reps));
    std::string upper;
    if (roundness_radius > 0) {
      auto b = roundness_estimate(cayley_ball(z2, sigma, roundness_radius, gl.cfg.ball_cap).metric, gl.cfg);
      upper = b.upper.is_infinite() ? "inf" : format_double(b.upper.value());
    }
    csv << row.set_id << ',' << 2 * row.reps.size() << ',' << csv_field(sigma_text(z2, sigma)) << ','
        << (row.star ? "true" : "false") << ',' << (row.doublestar ? "true" : "false") << ','
        << (row.pair ? "true" : "false") << ',' << upper << '\n';
  });
  Json by_size = Json::object();
  std::size_t large = 0, large_pair = 0;
  for (std::size_t k = 0; k < summary.sets_by_size.size(); ++k) {
    if (!summary.sets_by_size[k]) continue;
    by_size[std::to_string(k)] = {{"sets", summary.sets_by_size[k]}, {"pair_found", summary.pair_found_by_size[k]}};
    if (k >= 8) {
      large += summary.sets_by_size[k];
      large_pair += summary.pair_found_by_size[k];
    }
  }
  emit(Json{{"box", opts.box},
            {"reduce_automorphisms", opts.reduce_automorphisms},
            {"sets", summary.sets},
            {"pair_found", summary.pair_found},
            {"star_sets", summary.star_sets},
            {"star_sets_hexagonal_size_6", summary.star_size_six_hexagonal},
            {"doublestar_sets", summary.doublestar_sets},
            {"by_size", by_size},
            {"large_sets_all_have_pair", large == large_pair},
            {"star_sets_all_hexagonal_size_6", summary.star_sets == summary.star_size_six_hexagonal}});
  return 0;
}

int cmd_repro(const Globals& gl, bool list, const std::vector<std::string>& only) {
  if (list) {
    Json j = Json::array();
    for (const auto& c : repro_claims()) j.push_back({{"claim_id", c.id}, {"expected", c.expected}});
    emit(j);
    return 0;
  }
  auto report = run_repro(gl.cfg, only);
  auto j = to_json(report);
  if (!gl.out.empty()) write_file(gl.out, j.dump(2) + "\n");
  emit(j);
  for (const auto& c : report.claims)
    if (!c.pass) std::cerr << "claim failed: " << c.id << '\n';
  return report.all_passed() ? 0 : kExitRepro;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roundness and generalized roundness of finite metric spaces and Cayley graphs"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals gl;
  app.add_option("--tol", gl.cfg.scan.tol, "bisection width and relative deficit tolerance")->capture_default_str();
  app.add_option("--qmax", gl.cfg.scan.qmax, "exponents above this are reported as inf")->capture_default_str();
  app.add_option("--grid", gl.cfg.scan.grid, "scan cells per unit exponent")->capture_default_str();
  app.add_option("--ball-cap", gl.cfg.ball_cap, "maximum Cayley ball size")->capture_default_str();
  app.add_option("--seed", gl.cfg.seed, "random seed for sampled searches")->capture_default_str();
  app.add_option("--threads", gl.cfg.threads, "worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--out", gl.out, "output file (CSV for embed and scan-z2, JSON for repro)");
  app.add_flag("--no-timing", gl.no_timing, "report elapsed_ms as 0 for byte-stable output");

  std::string input;
  double p = 1.0;
  std::size_t max_n = 3;
  std::uint64_t budget = 100000;

  auto* roundness = app.add_subcommand("roundness", "roundness bounds of a metric or graph file");
  roundness->add_option("input", input, "metric JSON or graph JSON")->required();

  auto* genround = app.add_subcommand("genround", "generalized roundness of a metric or graph file");
  genround->add_option("input", input)->required();
  genround->add_option("--max-n", max_n, "largest double simplex order searched")->capture_default_str();
  genround->add_option("--budget", budget, "random double simplices beyond the exhaustive orders")->capture_default_str();

  auto* kernel = app.add_subcommand("kernel", "negative kernel test of d^p");
  kernel->add_option("input", input)->required();
  kernel->add_option("--p", p, "exponent")->required();

  auto* embed = app.add_subcommand("embed", "Hilbert space embedding of d^p written as CSV to --out");
  embed->add_option("input", input)->required();
  embed->add_option("--p", p, "exponent")->required();

  std::string mode = "roundness", spec, gens, augment, torsion;
  int radius = 1;
  auto* cayley = app.add_subcommand("cayley", "Cayley ball of a group with a generating set");
  cayley->add_option("mode", mode, "ball | roundness | genround")
      ->required()
      ->check(CLI::IsMember({"ball", "roundness", "genround"}));
  cayley->add_option("group", spec, "e.g. Z^2, Z/8, F_2, Z/2 * Z/3, D_5, Z^1 x Z/2")->required();
  cayley->add_option("generators", gens, "comma separated elements, e.g. (1,0),(0,1) or x,y,y^-1*x")->required();
  cayley->add_option("radius", radius, "ball radius")->required();
  cayley->add_option("--augment", augment, "x,y: add the round-one generators built from x and y first");
  cayley->add_option("--torsion", torsion, "g: apply the torsion construction for g first");
  cayley->add_option("--max-n", max_n, "largest double simplex order searched (genround mode)")->capture_default_str();
  cayley->add_option("--budget", budget, "random double simplices beyond the exhaustive orders (genround mode)")->capture_default_str();

  Z2EnumerationOptions scan_opts;
  int scan_radius = 0;
  auto* scan = app.add_subcommand("scan-z2", "exhaustive generating-set scan of Z^2 in a box");
  scan->add_option("--box", scan_opts.box, "box bound B")->capture_default_str();
  scan->add_option("--min-size", scan_opts.min_size, "smallest |S|")->capture_default_str();
  scan->add_option("--max-size", scan_opts.max_size, "largest |S|");
  scan->add_flag("--reduce-automorphisms", scan_opts.reduce_automorphisms,
                 "one set per orbit of the signed coordinate permutations");
  scan->add_option("--roundness-radius", scan_radius, "also compute each set's roundness upper bound at this radius");

  bool list = false;
  std::vector<std::string> only;
  auto* repro = app.add_subcommand("repro", "run the built-in reproduction suite");
  repro->add_flag("--list", list, "print claim ids without running");
  repro->add_option("--only", only, "run only these claim ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (gl.no_timing) gl.cfg.timing = false;
    validate(gl.cfg);
    if (*roundness) {
      auto m = load_metric_file(input);
      emit(to_json(roundness_estimate(m, gl.cfg), m));
    } else if (*genround) {
      auto m = load_metric_file(input);
      emit(genround_json(m, max_n, budget, gl.cfg));
    } else if (*kernel) {
      emit(to_json(kernel_test(load_metric_file(input), p)));
    } else if (*embed) {
      if (gl.out.empty()) throw Error(ErrorCode::InvalidParameter, "embed writes CSV and needs --out");
      auto m = load_metric_file(input);
      auto e = schoenberg_embed(m, p);
      write_file(gl.out, embedding_csv(e, m.labels()));
      emit(Json{{"p", p},
                {"points", m.size()},
                {"dimensions", e.coords.cols()},
                {"max_relative_error", e.max_relative_error},
                {"csv", gl.out}});
    } else if (*cayley) {
      return cmd_cayley(gl, mode, spec, gens, radius, augment, torsion, max_n, budget);
    } else if (*scan) {
      return cmd_scan(gl, scan_opts, scan_radius);
    } else if (*repro) {
      return cmd_repro(gl, list, only);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return 0;
}
