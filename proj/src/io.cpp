#include "roundness/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "roundness/error.hpp"

namespace roundness {

namespace {

Json quad_lengths_json(const QuadLengths& q) {
  return Json{{"edges", q.edges}, {"diagonals", q.diagonals}};
}

std::vector<std::string> labels_of(const FiniteMetricSpace& m, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(m.labels().at(i));
  return out;
}

}  // namespace

FiniteMetricSpace metric_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "expected a JSON object");
    if (j.contains("dist")) {
      auto dist = j.at("dist").get<std::vector<std::vector<double>>>();
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      return FiniteMetricSpace::from_matrix(std::move(labels), std::move(dist));
    }
    if (j.contains("edges")) {
      if (!j.contains("n")) throw Error(ErrorCode::ParseError, "graph file needs \"n\"");
      const auto n = j.at("n").get<long long>();
      if (n < 1) throw Error(ErrorCode::InvalidParameter, "graph needs at least one vertex");
      WeightedGraph g{static_cast<std::size_t>(n), {}};
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3)
          throw Error(ErrorCode::ParseError, "edge must be [u, v] or [u, v, w]");
        const auto u = e.at(0).get<long long>();
        const auto v = e.at(1).get<long long>();
        if (u < 0 || v < 0) throw Error(ErrorCode::IndexOutOfRange, "negative vertex index");
        g.edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v),
                           e.size() == 3 ? e.at(2).get<double>() : 1.0});
      }
      return build_from_graph(g);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  throw Error(ErrorCode::ParseError, "input has neither \"dist\" nor \"edges\"");
}

FiniteMetricSpace load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return metric_from_json(j);
}

Json exponent_json(ExtendedExponent e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

Json to_json(const ExponentBound& b, const FiniteMetricSpace& m) {
  Json j;
  j["lower"] = exponent_json(b.lower);
  j["upper"] = exponent_json(b.upper);
  if (b.witness) {
    std::vector<std::size_t> idx(b.witness->idx.begin(), b.witness->idx.end());
    Json w{{"indices", idx}, {"labels", labels_of(m, idx)}};
    w.update(quad_lengths_json(b.witness_lengths));
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  Json anomalies = Json::array();
  for (const auto& a : b.anomalies) anomalies.push_back({{"indices", a.quad.idx}, {"reentry", a.reentry}});
  j["anomalies"] = anomalies;
  j["quad_count"] = b.quad_count;
  j["elapsed_ms"] = b.elapsed_ms;
  return j;
}

Json to_json(const SimplexBound& b, const FiniteMetricSpace& m) {
  Json j;
  j["upper"] = exponent_json(b.upper);
  if (b.witness) {
    j["witness"] = {{"a", b.witness->a}, {"b", b.witness->b}, {"a_labels", labels_of(m, b.witness->a)},
                    {"b_labels", labels_of(m, b.witness->b)}};
  } else {
    j["witness"] = nullptr;
  }
  j["exhaustive_count"] = b.exhaustive_count;
  j["sampled_count"] = b.sampled_count;
  j["seed"] = b.seed;
  j["elapsed_ms"] = b.elapsed_ms;
  return j;
}

Json to_json(const KernelReport& r) {
  return Json{{"p", r.p}, {"max_eig", r.max_projected_eigenvalue}, {"negative", r.is_negative}, {"tol", r.tol}};
}

Json to_json(const ElementQuad& q, const Group& group) {
  std::vector<std::string> corners;
  for (const auto& c : q.corners) corners.push_back(group.format(c));
  return Json{{"corners", corners}, {"edges", q.edges}, {"diagonals", q.diagonals}};
}

Json to_json(const CayleyBall& ball, const Group& group) {
  std::vector<std::string> gens;
  for (const auto& g : ball.generators.elements) gens.push_back(group.format(g));
  Json dist = Json::array();
  for (std::size_t i = 0; i < ball.metric.size(); ++i) {
    auto row = ball.metric.row(i);
    dist.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return Json{{"group", to_string(ball.spec)},
              {"generators", gens},
              {"radius", ball.radius},
              {"labels", ball.metric.labels()},
              {"word_length", ball.word_length},
              {"dist", dist}};
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string embedding_csv(const EmbeddingResult& e, const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "label";
  for (Eigen::Index c = 0; c < e.coords.cols(); ++c) out << ",c" << c;
  out << '\n';
  for (Eigen::Index r = 0; r < e.coords.rows(); ++r) {
    out << csv_field(labels.at(static_cast<std::size_t>(r)));
    for (Eigen::Index c = 0; c < e.coords.cols(); ++c) out << ',' << format_double(e.coords(r, c));
    out << '\n';
  }
  return out.str();
}

}  // namespace roundness
