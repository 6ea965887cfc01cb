#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "doctest.h"
#include "roundness/error.hpp"
#include "roundness/io.hpp"
#include "roundness/repro.hpp"

using namespace roundness;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("metric json: matrix form with and without labels") {
  auto m = metric_from_json(Json::parse(R"({"labels":["a","b","c"],"dist":[[0,1,2],[1,0,1],[2,1,0]]})"));
  CHECK(m.size() == 3);
  CHECK(m.labels()[2] == "c");
  CHECK(m(0, 2) == 2.0);

  auto unlabelled = metric_from_json(Json::parse(R"({"dist":[[0,3],[3,0]]})"));
  CHECK(unlabelled.size() == 2);
  CHECK(unlabelled(0, 1) == 3.0);
}

TEST_CASE("metric json: edge form gives the path metric") {
  auto m = metric_from_json(Json::parse(R"({"n":4,"edges":[[0,1],[1,2],[2,3,2.5]]})"));
  CHECK(m(0, 3) == doctest::Approx(4.5));
  CHECK(m(1, 3) == doctest::Approx(3.5));
}

TEST_CASE("metric json: malformed and invalid input") {
  CHECK(code_of([] { metric_from_json(Json::parse(R"({"foo":1})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { metric_from_json(Json::parse(R"({"dist":"x"})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { metric_from_json(Json::parse(R"({"n":3,"edges":[[0,1]]})")); }) ==
        ErrorCode::DisconnectedGraph);
  CHECK(code_of([] { metric_from_json(Json::parse(R"({"dist":[[0,1,5],[1,0,1],[5,1,0]]})")); }) ==
        ErrorCode::InvalidMetric);
  CHECK(code_of([] { load_metric_file("/nonexistent/metric.json"); }) == ErrorCode::ParseError);
}

TEST_CASE("exponent json writes infinity as a string") {
  CHECK(exponent_json(ExtendedExponent::infinite()) == "inf");
  CHECK(exponent_json(ExtendedExponent(1.5)).get<double>() == 1.5);
}

TEST_CASE("format_double round-trips and normalizes negative zero") {
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.1");
  for (double v : {1.0 / 3.0, std::log2(3.0), -2.5e-17, 12345678.9}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv_field quotes only when needed") {
  CHECK(csv_field("(1,0)") == "\"(1,0)\"");
  CHECK(csv_field("x") == "x");
  CHECK(csv_field("a\"b") == "\"a\"\"b\"");
}

TEST_CASE("embedding csv has one row per point") {
  auto k3 = build_from_graph(WeightedGraph::complete(3));
  auto csv = embedding_csv(schoenberg_embed(k3, 1.0), k3.labels());
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("label,c0", 0) == 0);
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("ball json reloads as the same metric") {
  Group z2(GroupSpec::free_abelian(2));
  auto ball = cayley_ball(z2, parse_generating_set(z2, "(1,0),(0,1)"), 2);
  auto reloaded = metric_from_json(to_json(ball, z2));
  REQUIRE(reloaded.size() == ball.metric.size());
  CHECK(reloaded.flat() == ball.metric.flat());
  CHECK(reloaded.labels() == ball.metric.labels());
}

TEST_CASE("connected graph catalog counts") {
  const std::size_t expected[] = {1, 1, 2, 6, 21, 112};
  for (std::size_t v = 1; v <= 6; ++v) {
    CAPTURE(v);
    CHECK(connected_graphs(v).size() == expected[v - 1]);
  }
}

TEST_CASE("hexagonal exponent bound solves (n+1)^t - n^t = 2") {
  for (double n : {1.0, 3.0, 6.0}) {
    double t = hexagonal_exponent_bound(n);
    CHECK(std::pow(n + 1, t) - std::pow(n, t) == doctest::Approx(2.0).epsilon(1e-9));
  }
  CHECK(hexagonal_exponent_bound(1.0) == doctest::Approx(std::log2(3.0)).epsilon(1e-9));
}

TEST_CASE("repro rejects unknown claim ids") {
  CHECK(code_of([] { run_claim("no-such-claim", RunConfig{}); }) == ErrorCode::InvalidParameter);
  CHECK(repro_claims().size() == 15);
}
