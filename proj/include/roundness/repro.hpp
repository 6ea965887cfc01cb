#pragma once

#include <optional>
#include <string>
#include <vector>

#include "roundness/cayley.hpp"
#include "roundness/config.hpp"
#include "roundness/io.hpp"
#include "roundness/metric_space.hpp"

namespace roundness {

struct ClaimInfo {
  std::string id;
  std::string expected;
};

struct ClaimResult {
  std::string id;
  std::string expected;
  Json computed;
  bool pass = false;
  double elapsed_ms = 0.0;
};

struct ReproReport {
  std::vector<ClaimResult> claims;

  bool all_passed() const;
};

/// The built-in reproduction suite, in running order.
const std::vector<ClaimInfo>& repro_claims();

/// Throws InvalidParameter for an unknown id. Errors raised while checking
/// a claim are caught and reported as a failure.
ClaimResult run_claim(const std::string& id, const RunConfig& cfg);

/// Runs the listed claims (all when empty) in suite order.
ReproReport run_repro(const RunConfig& cfg, const std::vector<std::string>& only = {});

Json to_json(const ReproReport& report);

/// Connected simple graphs on exactly `vertices` vertices, one per
/// isomorphism class, in order of their canonical adjacency code.
std::vector<WeightedGraph> connected_graphs(std::size_t vertices);

/// Note attached to Cayley reports whose bound is only conjectured to be
/// sharp (F_2 with x, y, y^-1*x).
std::optional<std::string> bound_annotation(const Group& group, const GeneratingSet& sigma);

/// Root of (n + 1)^t - n^t = 2 on [1, 2], by bisection.
double hexagonal_exponent_bound(double n);

}  // namespace roundness
