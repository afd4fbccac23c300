#pragma once

#include "dphg/autodiff.hpp"
#include "dphg/expand.hpp"
#include "dphg/hypergraph.hpp"
#include "dphg/sparse.hpp"

namespace dphg {

// All hypergraph Laplacians throw IsolatedNode when some node has degree 0.

// Dv^{-1/2} H De^{-1} H^T Dv^{-1/2}
SparseMatrix laplacian_hgnn(const Hypergraph& hg);
// I - laplacian_hgnn
SparseMatrix laplacian_sym(const Hypergraph& hg);
// I - Dv^{-1} H De^{-1} H^T
SparseMatrix laplacian_rw(const Hypergraph& hg);
// Dv^{-1} H De^{-1} H^T, the row-stochastic two-step walk.
SparseMatrix random_walk_operator(const Hypergraph& hg);

// Combinatorial D - A.
SparseMatrix graph_laplacian(const Graph& g);

// Operators used by the spectral inductive bias block.
struct SibOperators {
  SparseMatrix rw_plus_sym;  // Δrw + Δsym
  SparseMatrix hgnn;         // Δ_HGNN

  static SibOperators build(const Hypergraph& hg);
};

// relu((X |;| X + lambda [(Δrw + Δsym) X |;| Δ_HGNN X]) theta) with theta of
// shape 2d x d'.
Matrix sib_update(const Hypergraph& hg, const Matrix& x, double lambda, const Matrix& theta);

namespace nn {
Var sib_update(const SibOperators& ops, Var x, double lambda, Var theta);
}  // namespace nn

}  // namespace dphg
