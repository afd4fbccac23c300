#include <gtest/gtest.h>

#include <algorithm>

#include "dphg/gwl.hpp"
#include "dphg/synthetic.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

using namespace dphg;

namespace {

Hypergraph random_permuted(const Hypergraph& hg, Rng& rng) {
  const auto p32 = rng.permutation(hg.num_nodes());
  return hg.relabeled(std::vector<NodeId>(p32.begin(), p32.end()));
}

}  // namespace

TEST(ColorRefine, OneStepOnSmallExample) {
  const Hypergraph hg = build_hypergraph(4, {{0, 1, 2}, {2, 3}});
  const ColoringState s = color_refine_step(hg, ColoringState::uniform(4));
  EXPECT_EQ(s.round, 1);
  EXPECT_EQ(s.num_colors(), 3);
  EXPECT_EQ(s.colors[0], s.colors[1]);
  EXPECT_NE(s.colors[0], s.colors[2]);
  EXPECT_NE(s.colors[0], s.colors[3]);
  EXPECT_NE(s.colors[2], s.colors[3]);
}

TEST(ColorRefine, NoEdgesNeverChanges) {
  const Hypergraph hg = build_hypergraph(5, {});
  ColoringState s = ColoringState::uniform(5);
  for (int r = 0; r < 3; ++r) {
    s = color_refine_step(hg, s);
    EXPECT_EQ(s.num_colors(), 1);
  }
}

TEST(ColorRefine, VertexTransitiveKeepsOneColor) {
  const Hypergraph hg = build_hypergraph(6, {{0, 1, 2}, {3, 4, 5}});
  ColoringState s = ColoringState::uniform(6);
  for (int r = 0; r < 4; ++r) {
    s = color_refine_step(hg, s);
    EXPECT_EQ(s.num_colors(), 1);
  }
}

TEST(ColorRefine, HistogramSumsToN) {
  Rng rng(1);
  const Hypergraph hg = oracle::random_hypergraph(rng, 12, 8, 4, false);
  const ColoringState s = color_refine(hg);
  int total = 0;
  for (const auto& [c, k] : s.histogram()) total += k;
  EXPECT_EQ(total, 12);
  // Colors are the dense range 0..k-1.
  EXPECT_EQ(*std::max_element(s.colors.begin(), s.colors.end()) + 1, s.num_colors());
}

TEST(ColorRefine, MonotoneAndStableWithinNRounds) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const Hypergraph hg = oracle::random_hypergraph(rng, n, static_cast<int>(rng.below(10)), 4, false);
    ColoringState s = ColoringState::uniform(n);
    int prev = 1;
    int stable_at = -1;
    for (int r = 1; r <= n + 1; ++r) {
      s = color_refine_step(hg, s);
      ASSERT_GE(s.num_colors(), prev);
      if (s.num_colors() == prev && stable_at < 0) stable_at = r;
      prev = s.num_colors();
    }
    EXPECT_GE(stable_at, 1);
    EXPECT_LE(stable_at, n);
    EXPECT_LE(color_refine(hg).round, n);
  }
}

TEST(ColorRefine, CommutesWithRelabeling) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.below(9));
    const Hypergraph hg = oracle::random_hypergraph(rng, n, 1 + static_cast<int>(rng.below(8)), 4, false);
    const auto p32 = rng.permutation(n);
    const std::vector<NodeId> perm(p32.begin(), p32.end());
    ColoringState a = ColoringState::uniform(n);
    ColoringState b = ColoringState::uniform(n);
    const Hypergraph img = hg.relabeled(perm);
    for (int r = 0; r < 3; ++r) {
      a = color_refine_step(hg, a);
      b = color_refine_step(img, b);
      for (int v = 0; v < n; ++v) {
        ASSERT_EQ(b.colors[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])], a.colors[static_cast<std::size_t>(v)]);
      }
    }
  }
}

TEST(ColorRefine, AutomorphicPairAgreesAtEveryRound) {
  // Rotation maps node 0 to node 1 on a 4-uniform ring.
  const Hypergraph ring = uniform_ring(8, 4);
  ColoringState s = ColoringState::uniform(8);
  for (int r = 0; r < 8; ++r) {
    s = color_refine_step(ring, s);
    EXPECT_EQ(s.colors[0], s.colors[1]);
  }
}

TEST(GwlTest, PermutedCopyIsPossiblyIsomorphic) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const Hypergraph hg = oracle::random_hypergraph(rng, 2 + static_cast<int>(rng.below(10)), 5, 4, false);
    EXPECT_EQ(gwl_test(hg, random_permuted(hg, rng)).outcome, GwlOutcome::PossiblyIsomorphic);
  }
}

TEST(GwlTest, DifferentEdgeSizesDistinguishedInRoundOne) {
  const Hypergraph a = build_hypergraph(4, {{0, 1, 2}, {2, 3}});
  const Hypergraph b = build_hypergraph(4, {{0, 1}, {2, 3}});
  const GwlVerdict v = gwl_test(a, b);
  EXPECT_EQ(v.outcome, GwlOutcome::Distinguished);
  EXPECT_EQ(v.rounds_used, 1);
  EXPECT_EQ(gwl_test(a, build_hypergraph(5, {{0, 1, 2}, {2, 3}})).outcome, GwlOutcome::Distinguished);
}

TEST(GwlTest, TwoTrianglesVersusSixCycle) {
  const Hypergraph triangles = build_hypergraph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  const Hypergraph cycle = uniform_ring(6, 2);
  EXPECT_EQ(gwl_test(triangles, cycle).outcome, GwlOutcome::PossiblyIsomorphic);
  EXPECT_FALSE(brute_force_isomorphic(triangles, cycle));
}

TEST(GwlTest, SoundOnRandomIsomorphicPairs) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const Hypergraph a = oracle::random_hypergraph(rng, n, static_cast<int>(rng.below(7)), 4, false);
    const Hypergraph b = random_permuted(a, rng);
    ASSERT_TRUE(brute_force_isomorphic(a, b));
    EXPECT_EQ(gwl_test(a, b).outcome, GwlOutcome::PossiblyIsomorphic);
  }
}

TEST(GwlTest, MaxRoundsCapsRefinement) {
  // Degree profiles agree, so round one cannot separate these trees.
  const Hypergraph p = build_hypergraph(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}});
  const Hypergraph q = build_hypergraph(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {1, 5}});
  EXPECT_EQ(gwl_test(p, q, 1).outcome, GwlOutcome::PossiblyIsomorphic);
  EXPECT_EQ(gwl_test(p, q).outcome, GwlOutcome::Distinguished);
}

TEST(BruteForce, BasicCases) {
  const Hypergraph a = build_hypergraph(4, {{0, 1, 2}, {2, 3}});
  EXPECT_TRUE(brute_force_isomorphic(a, a));
  EXPECT_FALSE(brute_force_isomorphic(a, build_hypergraph(4, {{0, 1, 2}})));
  EXPECT_TRUE(brute_force_isomorphic(build_hypergraph(3, {}), build_hypergraph(3, {})));
  // A 4-cycle with either chord.
  EXPECT_TRUE(brute_force_isomorphic(build_hypergraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}),
                                     build_hypergraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}})));
  EXPECT_DPHG_ERROR(brute_force_isomorphic(build_hypergraph(11, {}), build_hypergraph(11, {})), ErrorCode::TooLarge);
}

TEST(BruteForce, AgreesWithPermutationEnumeration) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const Hypergraph a = oracle::random_hypergraph(rng, n, 3, 3, false);
    const Hypergraph b = oracle::random_hypergraph(rng, n, 3, 3, false);
    std::vector<NodeId> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    bool iso = false;
    const auto target = canonical_edges(b);
    do {
      if (canonical_edges(a.relabeled(perm)) == target) iso = true;
    } while (!iso && std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(brute_force_isomorphic(a, b), iso);
  }
}
