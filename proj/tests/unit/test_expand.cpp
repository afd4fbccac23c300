#include <gtest/gtest.h>

#include "dphg/expand.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

using namespace dphg;

namespace {

Hypergraph build(int n, const oracle::EdgeList& edges) { return build_hypergraph(n, edges); }

}  // namespace

TEST(Expand, CliqueMatchesPairScanOnAllSmallHypergraphs) {
  int count = 0;
  oracle::for_each_hypergraph(4, 3, [&](int n, const oracle::EdgeList& edges) {
    const Graph g = clique_expand(build(n, edges));
    ASSERT_EQ(oracle::max_abs_diff(g.adjacency.to_dense(), oracle::clique_adjacency(n, edges)), 0.0);
    ++count;
  });
  EXPECT_EQ(count, 650);  // sum over n <= 4 of C(2^n - 1, <= 3)
}

TEST(Expand, StarMatchesIncidenceBlocks) {
  oracle::for_each_hypergraph(4, 3, [&](int n, const oracle::EdgeList& edges) {
    const StarGraph s = star_expand(build(n, edges));
    ASSERT_EQ(s.num_nodes, n);
    ASSERT_EQ(s.num_supernodes, static_cast<Index>(edges.size()));
    ASSERT_EQ(oracle::max_abs_diff(s.graph.adjacency.to_dense(), oracle::star_adjacency(n, edges)), 0.0);
  });
}

TEST(Expand, HyperGcnMatchesRankedPairs) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    const Hypergraph hg = oracle::random_hypergraph(rng, n, 1 + static_cast<int>(rng.below(6)), 5, false);
    // Integer-valued features produce plenty of distance ties.
    Matrix x(n, 2);
    for (Index i = 0; i < x.size(); ++i) x.data()[i] = static_cast<double>(rng.below(3));
    const Graph g = hypergcn_expand(hg, x);
    ASSERT_LT(oracle::max_abs_diff(g.adjacency.to_dense(), oracle::hypergcn_adjacency(n, hg.edges(), x)), 1e-15);
  }
}

TEST(Expand, HyperGcnTieBreakAndWeights) {
  // All features equal: every pair ties, so the smallest pair (0, 1) wins.
  const Hypergraph hg = build_hypergraph(4, {{0, 1, 2, 3}, {2}});
  const Graph g = hypergcn_expand(hg, Matrix::Zero(4, 1));
  const auto edges = g.edge_list();
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0].u, 0);
  EXPECT_EQ(edges[0].v, 1);
  EXPECT_DOUBLE_EQ(edges[0].weight, 1.0 / 5.0);
  EXPECT_DPHG_ERROR(hypergcn_expand(hg, Matrix::Zero(3, 1)), ErrorCode::ShapeMismatch);
}

TEST(Expand, CliqueOfSharedPairIsUnweighted) {
  const Graph g = clique_expand(build_hypergraph(3, {{0, 1}, {0, 1, 2}}));
  EXPECT_DOUBLE_EQ(g.adjacency.coeff(0, 1), 1.0);
  EXPECT_EQ(g.degrees, (Vector(3) << 2, 2, 2).finished());
  EXPECT_EQ(g.neighbors(2), (std::vector<Index>{0, 1}));
}

TEST(Expand, RowMask) {
  const StarGraph s = star_expand(build_hypergraph(3, {{0, 1}, {1, 2}}));
  Matrix m(5, 1);
  m << 0, 1, 2, 3, 4;
  EXPECT_EQ(row_mask(m, RowTarget::NodeRows, s), (Matrix(3, 1) << 0, 1, 2).finished());
  EXPECT_EQ(row_mask(m, RowTarget::SupernodeRows, s), (Matrix(2, 1) << 3, 4).finished());
  EXPECT_DPHG_ERROR(row_mask(Matrix::Zero(4, 1), RowTarget::NodeRows, s), ErrorCode::ShapeMismatch);
}

TEST(Expand, ExpansionsCommuteWithRelabeling) {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const Hypergraph hg = oracle::random_hypergraph(rng, n, 4, 4, false);
    const auto p32 = rng.permutation(n);
    const std::vector<NodeId> perm(p32.begin(), p32.end());
    Matrix p = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) p(perm[static_cast<std::size_t>(i)], i) = 1.0;
    const Matrix a = clique_expand(hg).adjacency.to_dense();
    const Matrix b = clique_expand(hg.relabeled(perm)).adjacency.to_dense();
    EXPECT_EQ(b, p * a * p.transpose());
  }
}

TEST(Graph, FromEdgesRejectsSelfPairs) {
  const std::vector<Graph::WeightedEdge> e = {{1, 1, 1.0}};
  EXPECT_DPHG_ERROR(Graph::from_edges(2, e), ErrorCode::ShapeMismatch);
}
