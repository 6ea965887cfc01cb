#include "roundness/cayley.hpp"

#include <algorithm>
#include <unordered_map>

#include "roundness/error.hpp"
#include "roundness/lattice.hpp"

namespace roundness {

namespace {

using LengthTable = std::unordered_map<GroupElement, int, GroupElementHash>;

constexpr long long kClosureLimit = 10'000'000;
constexpr int kExtraSearchDepth = 64;

// Coordinate moduli of a finitely generated abelian spec (0 = infinite
// cyclic), or nullopt if the group spec is not of that shape.
std::optional<std::vector<long long>> abelian_layout(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::FreeAbelian: return std::vector<long long>(static_cast<std::size_t>(spec.param), 0);
    case GroupSpec::Kind::Cyclic: return std::vector<long long>{spec.param};
    case GroupSpec::Kind::DirectProduct: {
      std::vector<long long> out;
      for (const auto& f : spec.factors) {
        auto sub = abelian_layout(f);
        if (!sub) return std::nullopt;
        out.insert(out.end(), sub->begin(), sub->end());
      }
      return out;
    }
    default: return std::nullopt;
  }
}

void flatten(const GroupElement& g, IntVector& out) {
  out.insert(out.end(), g.coords.begin(), g.coords.end());
  for (const auto& p : g.parts) flatten(p, out);
}

class Explorer {
 public:
  Explorer(const Group& group, const GeneratingSet& sigma) : group_(group), sigma_(sigma) {
    auto id = group.identity();
    table_.emplace(id, 0);
    order_.push_back(std::move(id));
  }

  // Expands one more BFS level; false once the group is exhausted.
  bool expand() {
    const std::size_t end = order_.size();
    if (level_start_ == end) return false;
    const int next = depth_ + 1;
    for (std::size_t i = level_start_; i < end; ++i) {
      for (const auto& s : sigma_.elements) {
        auto h = group_.multiply(order_[i], s);
        if (table_.emplace(h, next).second) {
          order_.push_back(std::move(h));
          if (order_.size() > kLengthTableCap) {
            throw Error(ErrorCode::BallTooLarge, "length table exceeds " + std::to_string(kLengthTableCap) +
                                                     " elements at depth " + std::to_string(next));
          }
        }
      }
    }
    level_start_ = end;
    depth_ = next;
    return true;
  }

  int depth() const { return depth_; }
  const LengthTable& table() const { return table_; }
  const std::vector<GroupElement>& order() const { return order_; }

 private:
  const Group& group_;
  const GeneratingSet& sigma_;
  LengthTable table_;
  std::vector<GroupElement> order_;
  std::size_t level_start_ = 0;
  int depth_ = 0;
};

// Extends the exploration until every target is found; false if the
// exploration gives up first.
bool reach_all(Explorer& ex, const std::vector<GroupElement>& targets, int max_depth) {
  auto missing = [&] {
    return std::any_of(targets.begin(), targets.end(),
                       [&](const GroupElement& g) { return !ex.table().contains(g); });
  };
  while (missing()) {
    if (ex.depth() >= max_depth) return false;
    try {
      if (!ex.expand()) return false;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BallTooLarge) return false;
      throw;
    }
  }
  return true;
}

}  // namespace

bool GeneratingSet::contains(const GroupElement& g) const {
  return std::find(elements.begin(), elements.end(), g) != elements.end();
}

GeneratingSet symmetric_closure(const Group& group, const std::vector<GroupElement>& elements) {
  GeneratingSet out;
  for (const auto& g : elements) {
    group.check(g);
    if (group.is_identity(g) || out.contains(g)) continue;
    out.elements.push_back(g);
  }
  const std::size_t given = out.elements.size();
  for (std::size_t i = 0; i < given; ++i) {
    auto inv = group.inverse(out.elements[i]);
    if (!out.contains(inv)) out.elements.push_back(std::move(inv));
  }
  if (out.elements.empty()) throw Error(ErrorCode::EmptyAfterClosure, "generating set is empty after closure");
  return out;
}

GeneratingSet parse_generating_set(const Group& group, std::string_view text) {
  std::vector<GroupElement> elements;
  for (const auto& lit : split_top_level(text)) elements.push_back(group.parse(lit));
  return symmetric_closure(group, elements);
}

void check_generating_set(const Group& group, const GeneratingSet& sigma) {
  if (sigma.elements.empty()) throw Error(ErrorCode::InvalidParameter, "generating set is empty");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const auto& g = sigma.elements[i];
    group.check(g);
    if (group.is_identity(g)) throw Error(ErrorCode::InvalidParameter, "generating set contains the identity");
    if (std::find(sigma.elements.begin() + static_cast<std::ptrdiff_t>(i) + 1, sigma.elements.end(), g) !=
        sigma.elements.end())
      throw Error(ErrorCode::InvalidParameter, "generating set repeats " + group.format(g));
    if (!sigma.contains(group.inverse(g)))
      throw Error(ErrorCode::InvalidParameter, "generating set is not symmetric at " + group.format(g));
  }
}

std::optional<bool> generates(const Group& group, const GeneratingSet& sigma) {
  if (auto layout = abelian_layout(group.spec())) {
    const std::size_t dim = layout->size();
    std::vector<IntVector> rows;
    for (const auto& g : sigma.elements) {
      IntVector v;
      flatten(g, v);
      rows.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if ((*layout)[i] == 0) continue;
      IntVector rel(dim, 0);
      rel[i] = (*layout)[i];
      rows.push_back(std::move(rel));
    }
    return spans_lattice(rows, dim);
  }
  if (auto n = group.size(); n && *n <= kClosureLimit) {
    Explorer ex(group, sigma);
    while (ex.expand()) {
    }
    return static_cast<long long>(ex.order().size()) == *n;
  }
  return std::nullopt;
}

CayleyBall cayley_ball(const Group& group, const GeneratingSet& sigma, int radius, std::size_t ball_cap) {
  if (radius < 1) throw Error(ErrorCode::InvalidParameter, "ball radius must be >= 1");
  check_generating_set(group, sigma);
  auto decided = generates(group, sigma);
  if (decided && !*decided) throw Error(ErrorCode::NotGenerating, "set does not generate " + to_string(group.spec()));

  Explorer ex(group, sigma);
  std::size_t ball_size = 0;
  while (ex.depth() < 2 * radius) {
    if (ex.depth() == radius) {
      ball_size = ex.order().size();
      if (ball_size > ball_cap)
        throw Error(ErrorCode::BallTooLarge, "ball of radius " + std::to_string(radius) + " has " +
                                                 std::to_string(ball_size) + " elements, cap is " +
                                                 std::to_string(ball_cap));
    }
    if (!ex.expand()) break;
  }
  if (ex.depth() <= radius) ball_size = ex.order().size();
  if (ball_size > ball_cap)
    throw Error(ErrorCode::BallTooLarge, "ball has " + std::to_string(ball_size) + " elements, cap is " +
                                             std::to_string(ball_cap));

  if (!decided && !reach_all(ex, group.standard_generators(), 2 * radius + kExtraSearchDepth))
    throw Error(ErrorCode::NotGenerating, "standard generators of " + to_string(group.spec()) +
                                              " are not reachable within the exploration limit");

  CayleyBall ball;
  ball.spec = group.spec();
  ball.generators = sigma;
  ball.radius = radius;
  ball.elements.assign(ex.order().begin(), ex.order().begin() + static_cast<std::ptrdiff_t>(ball_size));
  std::vector<GroupElement> inverses;
  std::vector<std::string> labels;
  for (const auto& g : ball.elements) {
    ball.word_length.push_back(ex.table().at(g));
    inverses.push_back(group.inverse(g));
    labels.push_back(group.format(g));
  }
  const std::size_t n = ball_size;
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = ex.table().at(group.multiply(inverses[i], ball.elements[j]));
      flat[i * n + j] = d;
      flat[j * n + i] = d;
    }
  }
  ball.metric = FiniteMetricSpace(std::move(labels), std::move(flat));
  return ball;
}

ElementQuad measure_quad(const Group& group, const GeneratingSet& sigma,
                         const std::array<GroupElement, 4>& corners) {
  check_generating_set(group, sigma);
  auto diff = [&](std::size_t a, std::size_t b) {
    return group.multiply(group.inverse(corners[a]), corners[b]);
  };
  std::vector<GroupElement> targets = {diff(0, 1), diff(1, 2), diff(2, 3), diff(3, 0), diff(0, 2), diff(1, 3)};
  Explorer ex(group, sigma);
  if (!reach_all(ex, targets, kExtraSearchDepth))
    throw Error(ErrorCode::NotGenerating, "quad corners are not connected within the exploration limit");
  ElementQuad q;
  q.corners = corners;
  for (std::size_t i = 0; i < 4; ++i) q.edges[i] = ex.table().at(targets[i]);
  q.diagonals = {ex.table().at(targets[4]), ex.table().at(targets[5])};
  return q;
}

std::array<GroupElement, 4> witness_corners(const CayleyBall& ball, const Quad& q) {
  return {ball.elements.at(q.x00()), ball.elements.at(q.x01()), ball.elements.at(q.x11()),
          ball.elements.at(q.x10())};
}

SpectrumReport spectrum_scan(const Group& group, const std::vector<GeneratingSet>& sets, int radius,
                             const RunConfig& cfg) {
  SpectrumReport report;
  report.group = group.spec();
  report.radius = radius;
  for (const auto& sigma : sets) {
    auto ball = cayley_ball(group, sigma, radius, cfg.ball_cap);
    report.rows.push_back({sigma, roundness_estimate(ball.metric, cfg)});
  }
  return report;
}

}  // namespace roundness
