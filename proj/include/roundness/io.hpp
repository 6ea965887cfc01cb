#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "roundness/cayley.hpp"
#include "roundness/kernel.hpp"
#include "roundness/metric_space.hpp"
#include "roundness/quad.hpp"

namespace roundness {

using Json = nlohmann::ordered_json;

/// Accepts {"labels": [...], "dist": [[...]]} (labels optional) or
/// {"n": k, "edges": [[u, v, w?], ...]}. Throws ParseError for malformed
/// input and the metric_space errors for invalid metrics.
FiniteMetricSpace metric_from_json(const Json& j);
FiniteMetricSpace load_metric_file(const std::string& path);

/// Number, or the string "inf".
Json exponent_json(ExtendedExponent e);

Json to_json(const ExponentBound& bound, const FiniteMetricSpace& m);
Json to_json(const SimplexBound& bound, const FiniteMetricSpace& m);
Json to_json(const KernelReport& report);
Json to_json(const ElementQuad& quad, const Group& group);

/// Ball as a loadable metric file plus its group data.
Json to_json(const CayleyBall& ball, const Group& group);

/// Header `label,c0,c1,...`, then one row per point.
std::string embedding_csv(const EmbeddingResult& e, const std::vector<std::string>& labels);

/// Quotes a CSV field when it contains separators or quotes.
std::string csv_field(const std::string& s);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace roundness
