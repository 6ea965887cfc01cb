#pragma once

#include "roundness/cayley.hpp"

namespace roundness {

/// A generating set together with a quad of its Cayley graph whose four
/// edges have length 1 and whose diagonals have length 2, checked by BFS.
struct ConstructionResult {
  GeneratingSet generators;
  ElementQuad witness;
};

/// Enlarges sigma by z1 = x^-1 y, z2 = x y, z3 = x y^-1, z4 = x^-1 y^-1 (and
/// x, y), closes it and removes x^+-2, y^+-2. The witness is
/// [x, y, x^-1, y^-1].
/// Throws HypothesisViolated when x or y has order at most 2, x = y^+-1,
/// x^3 = y^+-1 or y^3 = x^+-1; DegenerateConstruction when the result does
/// not verify.
ConstructionResult augment_round_one(const Group& group, const GeneratingSet& sigma, const GroupElement& x,
                                     const GroupElement& y);

/// Roundness-one witness driven by a torsion element g:
///   order 4:   sigma with g added and g^2 removed, witness [1, g, g^2, g^3];
///   order 6:   augment_round_one(g, g^2);
///   order >= 8: augment_round_one(g, g') for the first power g' = g^k,
///              k = 2, 3, ..., that satisfies the hypotheses and verifies.
/// Throws UnsupportedOrder for every other order, including infinite.
ConstructionResult torsion_construction(const Group& group, const GeneratingSet& sigma, const GroupElement& g);

}  // namespace roundness
