#include "roundness/constructions.hpp"

#include <algorithm>

#include "roundness/error.hpp"

namespace roundness {

namespace {

GeneratingSet without(const Group& group, GeneratingSet sigma, const std::vector<GroupElement>& drop) {
  std::erase_if(sigma.elements, [&](const GroupElement& g) {
    return std::find(drop.begin(), drop.end(), g) != drop.end();
  });
  if (sigma.elements.empty())
    throw Error(ErrorCode::DegenerateConstruction, "generating set of " + to_string(group.spec()) +
                                                       " is empty after removing squares");
  return sigma;
}

// Corners may lie at distance 2 from the identity (g^2, or a y that was
// removed as x^2), so the quad is read off a radius-2 ball.
ConstructionResult verified(const Group& group, GeneratingSet sigma, const std::array<GroupElement, 4>& corners) {
  if (auto gen = generates(group, sigma); gen && !*gen)
    throw Error(ErrorCode::DegenerateConstruction, "constructed set no longer generates " + to_string(group.spec()));
  CayleyBall ball;
  try {
    ball = cayley_ball(group, sigma, 2);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotGenerating) throw Error(ErrorCode::DegenerateConstruction, e.what());
    throw;
  }
  std::array<std::size_t, 4> at{};
  for (std::size_t c = 0; c < 4; ++c) {
    auto it = std::find(ball.elements.begin(), ball.elements.end(), corners[c]);
    if (it == ball.elements.end())
      throw Error(ErrorCode::DegenerateConstruction, "corner " + group.format(corners[c]) + " is farther than 2 from the identity");
    at[c] = static_cast<std::size_t>(it - ball.elements.begin());
  }
  ElementQuad q;
  q.corners = corners;
  for (std::size_t c = 0; c < 4; ++c) q.edges[c] = static_cast<int>(ball.metric(at[c], at[(c + 1) % 4]));
  q.diagonals = {static_cast<int>(ball.metric(at[0], at[2])), static_cast<int>(ball.metric(at[1], at[3]))};
  const bool ok = std::all_of(q.edges.begin(), q.edges.end(), [](int e) { return e == 1; }) &&
                  q.diagonals[0] == 2 && q.diagonals[1] == 2;
  if (!ok) {
    std::string got;
    for (int e : q.edges) got += std::to_string(e) + " ";
    got += "| " + std::to_string(q.diagonals[0]) + " " + std::to_string(q.diagonals[1]);
    throw Error(ErrorCode::DegenerateConstruction, "witness quad has edges/diagonals " + got);
  }
  return {std::move(sigma), std::move(q)};
}

void require_hypotheses(const Group& group, const GroupElement& x, const GroupElement& y) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::HypothesisViolated, "x = " + group.format(x) + ", y = " + group.format(y) + ": " + why);
  };
  for (const auto* g : {&x, &y}) {
    auto o = group.order(*g);
    if (o && *o <= 2) fail((g == &x ? "x" : "y") + std::string(" has order ") + std::to_string(*o));
  }
  if (x == y || x == group.inverse(y)) fail("x equals y or its inverse");
  const auto x3 = group.power(x, 3);
  if (x3 == y || x3 == group.inverse(y)) fail("x cubed equals y or its inverse");
  const auto y3 = group.power(y, 3);
  if (y3 == x || y3 == group.inverse(x)) fail("y cubed equals x or its inverse");
}

}  // namespace

ConstructionResult augment_round_one(const Group& group, const GeneratingSet& sigma, const GroupElement& x,
                                     const GroupElement& y) {
  check_generating_set(group, sigma);
  group.check(x);
  group.check(y);
  require_hypotheses(group, x, y);
  const auto xi = group.inverse(x);
  const auto yi = group.inverse(y);
  std::vector<GroupElement> elements = sigma.elements;
  for (const auto& g : {x, y, group.multiply(xi, y), group.multiply(x, y), group.multiply(x, yi),
                        group.multiply(xi, yi)})
    elements.push_back(g);
  auto closed = symmetric_closure(group, elements);
  auto reduced = without(group, std::move(closed),
                         {group.power(x, 2), group.power(x, -2), group.power(y, 2), group.power(y, -2)});
  return verified(group, std::move(reduced), {x, y, xi, yi});
}

ConstructionResult torsion_construction(const Group& group, const GeneratingSet& sigma, const GroupElement& g) {
  check_generating_set(group, sigma);
  const auto order = group.order(g);
  if (!order) throw Error(ErrorCode::UnsupportedOrder, group.format(g) + " has infinite order");
  const long long n = *order;
  if (n == 4) {
    std::vector<GroupElement> elements = sigma.elements;
    elements.push_back(g);
    auto reduced = without(group, symmetric_closure(group, elements), {group.power(g, 2)});
    return verified(group, std::move(reduced), {group.identity(), g, group.power(g, 2), group.power(g, 3)});
  }
  if (n == 6) return augment_round_one(group, sigma, g, group.power(g, 2));
  if (n < 8) throw Error(ErrorCode::UnsupportedOrder, group.format(g) + " has order " + std::to_string(n));

  std::string last_failure = "no admissible power";
  for (long long k = 2; k <= n - 2; ++k) {
    const auto candidate = group.power(g, k);
    try {
      return augment_round_one(group, sigma, g, candidate);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HypothesisViolated && e.code() != ErrorCode::DegenerateConstruction) throw;
      last_failure = e.what();
    }
  }
  throw Error(ErrorCode::DegenerateConstruction,
              "no power of " + group.format(g) + " completes the construction; last: " + last_failure);
}

}  // namespace roundness
