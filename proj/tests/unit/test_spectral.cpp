#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "dphg/spectral.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

using namespace dphg;

namespace {

bool covers_all(int n, const oracle::EdgeList& edges) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& e : edges) {
    for (auto v : e) seen[static_cast<std::size_t>(v)] = true;
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

TEST(Spectral, LaplaciansMatchDenseProductsOnAllSmallHypergraphs) {
  int checked = 0;
  oracle::for_each_hypergraph(4, 3, [&](int n, const oracle::EdgeList& edges) {
    if (!covers_all(n, edges)) return;
    const Hypergraph hg = build_hypergraph(n, edges);
    ASSERT_LT(oracle::max_abs_diff(laplacian_hgnn(hg).to_dense(), oracle::laplacian_hgnn(n, edges)), 1e-12);
    ASSERT_LT(oracle::max_abs_diff(laplacian_sym(hg).to_dense(), oracle::laplacian_sym(n, edges)), 1e-12);
    ASSERT_LT(oracle::max_abs_diff(laplacian_rw(hg).to_dense(), oracle::laplacian_rw(n, edges)), 1e-12);
    ASSERT_LT(oracle::max_abs_diff(random_walk_operator(hg).to_dense(), oracle::random_walk(n, edges)), 1e-12);
    ++checked;
  });
  EXPECT_GT(checked, 100);
}

TEST(Spectral, IsolatedNodeIsRejected) {
  const Hypergraph hg = build_hypergraph(3, {{0, 1}});
  EXPECT_DPHG_ERROR(laplacian_hgnn(hg), ErrorCode::IsolatedNode);
  EXPECT_DPHG_ERROR(laplacian_rw(hg), ErrorCode::IsolatedNode);
  EXPECT_DPHG_ERROR(SibOperators::build(hg), ErrorCode::IsolatedNode);
}

TEST(Spectral, SymmetricLaplacianIsPsdWithSpectrumInZeroTwo) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(12));
    const Hypergraph hg = oracle::random_hypergraph(rng, n, 1 + static_cast<int>(rng.below(10)), 5, true);
    const Matrix l = laplacian_sym(hg).to_dense();
    ASSERT_LT((l - l.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(l);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_LT(es.eigenvalues().maxCoeff(), 2.0 + 1e-10);
    // Dv^{1/2} 1 is in the kernel.
    Vector s(n);
    for (int v = 0; v < n; ++v) s(v) = std::sqrt(static_cast<double>(hg.node_degrees()[static_cast<std::size_t>(v)]));
    EXPECT_LT((l * s).norm(), 1e-10);
  }
}

TEST(Spectral, RandomWalkIsRowStochastic) {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const Hypergraph hg = oracle::random_hypergraph(rng, 2 + static_cast<int>(rng.below(12)), 6, 4, true);
    const Vector sums = random_walk_operator(hg).row_sums();
    EXPECT_LT((sums - Vector::Ones(sums.size())).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(laplacian_rw(hg).row_sums().cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Spectral, GraphLaplacian) {
  const Graph g = Graph::from_edges(3, std::vector<Graph::WeightedEdge>{{0, 1, 2.0}, {1, 2, 0.5}});
  const Matrix l = graph_laplacian(g).to_dense();
  EXPECT_LT(oracle::max_abs_diff(l, oracle::graph_laplacian(oracle::from_matrix(g.adjacency.to_dense()))), 1e-15);
  EXPECT_LT(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Spectral, SibUpdateMatchesDefinition) {
  Rng rng(8);
  const Hypergraph hg = oracle::random_hypergraph(rng, 7, 5, 4, true);
  const Matrix x = oracle::random_matrix(rng, 7, 3);
  const Matrix theta = oracle::random_matrix(rng, 6, 4);
  const double lambda = 0.7;
  Matrix lhs(7, 6);
  lhs << x, x;
  Matrix spec(7, 6);
  spec << (laplacian_rw(hg).to_dense() + laplacian_sym(hg).to_dense()) * x, laplacian_hgnn(hg).to_dense() * x;
  const Matrix expected = ((lhs + lambda * spec) * theta).cwiseMax(0.0);
  EXPECT_LT((sib_update(hg, x, lambda, theta) - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(sib_update(hg, x, lambda, Matrix::Zero(3, 4)), Error);
}

TEST(Spectral, SibRwPlusSymIsTwoIMinusWalkMinusHgnn) {
  Rng rng(9);
  const Hypergraph hg = oracle::random_hypergraph(rng, 9, 6, 4, true);
  const SibOperators ops = SibOperators::build(hg);
  const Matrix expected = 2.0 * Matrix::Identity(9, 9) - random_walk_operator(hg).to_dense() -
                          laplacian_hgnn(hg).to_dense();
  EXPECT_LT((ops.rw_plus_sym.to_dense() - expected).cwiseAbs().maxCoeff(), 1e-12);
}
