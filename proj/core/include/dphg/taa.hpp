#pragma once

#include <vector>

#include "dphg/autodiff.hpp"
#include "dphg/expand.hpp"
#include "dphg/ops.hpp"

namespace dphg {

class HypergraphContext;

enum class UpdateVariant {
  ResidualRW,  // I + D^{-1} A; rows of isolated vertices keep only the identity
  SymNorm,     // D̂^{-1/2} (A + I) D̂^{-1/2} with D̂ the degrees of A + I
};

SparseMatrix propagation_operator(const Graph& g, UpdateVariant variant);

// relu(P X theta) with P = propagation_operator(g, variant).
Matrix single_layer_update(const Graph& g, const Matrix& x, const Matrix& theta, UpdateVariant variant);

// Flattened (query, key) pairs: for every node i, the keys are N(i) ∪ {i} in
// ascending order. Pairs are grouped by query.
struct AttentionNeighborhoods {
  Index num_nodes = 0;
  std::vector<Index> query;
  std::vector<Index> key;

  static AttentionNeighborhoods from_graph(const Graph& g);
  std::size_t num_pairs() const { return query.size(); }
};

struct TaaParams {
  Matrix delta;  // 2h' x 1; the first h' entries score the query, the rest the key
  Matrix W;      // h x h'
  Matrix theta_c;
  Matrix theta_star;
  Matrix theta_hyp;
  int num_heads = 1;
};

// Dense, inference-only forms. `attention` (optional) receives one E x 1
// weight column per head, aligned with the neighborhood pairs.
Matrix cross_attention(const Matrix& query, const Matrix& key, const Matrix& value,
                       const AttentionNeighborhoods& nbrs, const TaaParams& params,
                       std::vector<Matrix>* attention = nullptr);

struct TaaOutput {
  Matrix x_hat_kappa;  // spatial path, n x h'
  Matrix x_hat_z;      // Laplacian-smoothed path, n x h'
  Matrix x_star;       // star-view update over all n + m star vertices
};

TaaOutput taa_forward(const HypergraphContext& ctx, const Matrix& x, const TaaParams& params);

namespace nn {

Var single_layer_update(const SparseMatrix& propagation, Var x, Var theta);

struct AttentionWeights {
  Var W;
  Var delta;
  int num_heads = 1;
  double dropout = 0.0;  // applied to the normalized weights
};

// For node i and head h: s_ij = LeakyReLU_0.2(δ1_h·(W q_i)_h + δ2_h·(W k_j)_h)
// over j in N(i) ∪ {i}, softmax over j, output_i = Σ_j α_ij (W v_j)_h. Heads
// are concatenated.
Var cross_attention(Var query, Var key, Var value, const AttentionNeighborhoods& nbrs,
                    const AttentionWeights& weights, const DropoutContext& dropout,
                    std::vector<Matrix>* attention = nullptr);

struct TaaVars {
  Var x_star;  // (n + m) x h
  Var x_c;     // n x h
  Var x_hyp;   // n x h
  Var x_hat_kappa;
  Var x_hat_z;
};

struct TaaThetas {
  Var theta_c;
  Var theta_star;
  Var theta_hyp;
};

// Only the three single-layer view updates; used on its own when attention is
// ablated but star features are still needed downstream.
TaaVars view_updates(const HypergraphContext& ctx, Var x, const TaaThetas& thetas);

TaaVars taa_forward(const HypergraphContext& ctx, Var x, const TaaThetas& thetas,
                    const AttentionWeights& weights, const DropoutContext& dropout);

}  // namespace nn

}  // namespace dphg
