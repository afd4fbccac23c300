#pragma once

#include <map>
#include <vector>

#include "dphg/hypergraph.hpp"

namespace dphg {

struct ColoringState {
  std::vector<int> colors;
  int round = 0;

  static ColoringState uniform(NodeId num_nodes);

  int num_colors() const;
  std::map<int, int> histogram() const;
};

// One refinement round. The signature of v is (own color, sorted multiset over
// incident edges of the sorted multiset of member colors). Distinct signatures
// are numbered 0..k-1 in sorted signature order, so the result depends only on
// the structure and the previous colors, never on node ids.
ColoringState color_refine_step(const Hypergraph& hg, const ColoringState& state);

// Refines until the partition stops splitting (at most n rounds).
ColoringState color_refine(const Hypergraph& hg, int max_rounds = -1);

enum class GwlOutcome { Distinguished, PossiblyIsomorphic };

const char* to_string(GwlOutcome outcome);

struct GwlVerdict {
  GwlOutcome outcome = GwlOutcome::PossiblyIsomorphic;
  int rounds_used = 0;
};

// Joint refinement over the disjoint union so color ids are comparable.
// max_rounds < 0 means "until stable".
GwlVerdict gwl_test(const Hypergraph& a, const Hypergraph& b, int max_rounds = -1);

// Exhaustive search with degree pruning. Throws TooLarge when either side has
// more than 10 nodes.
bool brute_force_isomorphic(const Hypergraph& a, const Hypergraph& b);

}  // namespace dphg
