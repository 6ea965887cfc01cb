#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "roundness/config.hpp"
#include "roundness/group.hpp"
#include "roundness/metric_space.hpp"
#include "roundness/quad.hpp"

namespace roundness {

/// Finite symmetric set without the identity. Element order is the order in
/// which generators were supplied, with missing inverses appended; BFS
/// expands generators in this order.
struct GeneratingSet {
  std::vector<GroupElement> elements;

  std::size_t size() const { return elements.size(); }
  bool contains(const GroupElement& g) const;
};

/// Adds inverses, drops the identity and duplicates. Throws EmptyAfterClosure.
GeneratingSet symmetric_closure(const Group& group, const std::vector<GroupElement>& elements);

/// Parses a comma separated list of element literals and closes it.
GeneratingSet parse_generating_set(const Group& group, std::string_view text);

/// Throws InvalidParameter unless the set is symmetric, identity free and
/// duplicate free.
void check_generating_set(const Group& group, const GeneratingSet& sigma);

/// Exact answer where the tool can decide it: free abelian and finitely
/// generated abelian products via Smith normal form, finite groups via
/// closure. nullopt for free groups and free products.
std::optional<bool> generates(const Group& group, const GeneratingSet& sigma);

struct CayleyBall {
  GroupSpec spec;
  GeneratingSet generators;
  int radius = 0;
  std::vector<GroupElement> elements;  // BFS discovery order, identity first
  std::vector<int> word_length;
  FiniteMetricSpace metric;
};

/// Upper limit on the depth-2R length table; exceeding it is reported as
/// BallTooLarge.
inline constexpr std::size_t kLengthTableCap = 2'000'000;

/// Throws NotGenerating, BallTooLarge, InvalidParameter.
CayleyBall cayley_ball(const Group& group, const GeneratingSet& sigma, int radius,
                       std::size_t ball_cap = 20000);

/// Corner elements of a quad in cyclic order, with their exact word lengths.
struct ElementQuad {
  std::array<GroupElement, 4> corners;
  std::array<int, 4> edges{};      // |c0c1|, |c1c2|, |c2c3|, |c3c0|
  std::array<int, 2> diagonals{};  // |c0c2|, |c1c3|
};

/// Measures [c0, c1, c2, c3] in the word metric of (group, sigma).
ElementQuad measure_quad(const Group& group, const GeneratingSet& sigma,
                         const std::array<GroupElement, 4>& corners);

/// The corner labels of a roundness witness found in a ball, in cyclic order.
std::array<GroupElement, 4> witness_corners(const CayleyBall& ball, const Quad& q);

struct SpectrumRow {
  GeneratingSet generators;
  ExponentBound bound;
};

struct SpectrumReport {
  GroupSpec group;
  int radius = 0;
  std::vector<SpectrumRow> rows;
};

SpectrumReport spectrum_scan(const Group& group, const std::vector<GeneratingSet>& sets, int radius,
                             const RunConfig& cfg = {});

}  // namespace roundness
