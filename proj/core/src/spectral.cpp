#include "dphg/spectral.hpp"

#include <cmath>
#include <string>

#include "dphg/error.hpp"
#include "dphg/ops.hpp"

namespace dphg {

namespace {

void require_no_isolated(const Hypergraph& hg) {
  const auto& deg = hg.node_degrees();
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] == 0) throw Error(ErrorCode::IsolatedNode, "node " + std::to_string(v) + " has degree 0");
  }
}

Vector edge_inverse_degrees(const Hypergraph& hg) {
  Vector de(hg.num_edges());
  for (Index e = 0; e < hg.num_edges(); ++e) de[e] = 1.0 / static_cast<double>(hg.edge_degrees()[static_cast<std::size_t>(e)]);
  return de;
}

// H De^{-1} H^T
SparseMatrix edge_averaged_gram(const Hypergraph& hg) {
  const SparseMatrix h = hg.incidence();
  return h.scale_cols(edge_inverse_degrees(hg)) * h.transpose();
}

}  // namespace

SparseMatrix laplacian_hgnn(const Hypergraph& hg) {
  require_no_isolated(hg);
  Vector s(hg.num_nodes());
  for (NodeId v = 0; v < hg.num_nodes(); ++v) s[v] = 1.0 / std::sqrt(static_cast<double>(hg.node_degrees()[static_cast<std::size_t>(v)]));
  return edge_averaged_gram(hg).scale_rows(s).scale_cols(s);
}

SparseMatrix laplacian_sym(const Hypergraph& hg) {
  return SparseMatrix::identity(hg.num_nodes()) - laplacian_hgnn(hg);
}

SparseMatrix random_walk_operator(const Hypergraph& hg) {
  require_no_isolated(hg);
  Vector inv(hg.num_nodes());
  for (NodeId v = 0; v < hg.num_nodes(); ++v) inv[v] = 1.0 / static_cast<double>(hg.node_degrees()[static_cast<std::size_t>(v)]);
  return edge_averaged_gram(hg).scale_rows(inv);
}

SparseMatrix laplacian_rw(const Hypergraph& hg) {
  return SparseMatrix::identity(hg.num_nodes()) - random_walk_operator(hg);
}

SparseMatrix graph_laplacian(const Graph& g) {
  return SparseMatrix::diagonal(g.degrees) - g.adjacency;
}

SibOperators SibOperators::build(const Hypergraph& hg) {
  SibOperators ops;
  ops.rw_plus_sym = laplacian_rw(hg) + laplacian_sym(hg);
  ops.hgnn = laplacian_hgnn(hg);
  return ops;
}

Matrix sib_update(const Hypergraph& hg, const Matrix& x, double lambda, const Matrix& theta) {
  const SibOperators ops = SibOperators::build(hg);
  nn::Tape tape;
  return nn::sib_update(ops, tape.constant(x), lambda, tape.constant(theta)).value();
}

namespace nn {

Var sib_update(const SibOperators& ops, Var x, double lambda, Var theta) {
  if (ops.hgnn.cols() != x.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "sib_update: feature rows must equal node count");
  }
  if (theta.rows() != 2 * x.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "sib_update: theta must have 2d rows");
  }
  Var doubled = concat_cols({x, x});
  Var smoothed = concat_cols({spmm(ops.rw_plus_sym, x), spmm(ops.hgnn, x)});
  return relu(matmul(add(doubled, scale(smoothed, lambda)), theta));
}

}  // namespace nn

}  // namespace dphg
