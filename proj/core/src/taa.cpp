#include "dphg/taa.hpp"

#include <cmath>

#include "dphg/context.hpp"
#include "dphg/error.hpp"

namespace dphg {

SparseMatrix propagation_operator(const Graph& g, UpdateVariant variant) {
  const Index n = g.num_vertices;
  if (variant == UpdateVariant::ResidualRW) {
    Vector inv(n);
    for (Index v = 0; v < n; ++v) inv[v] = g.degrees[v] > 0.0 ? 1.0 / g.degrees[v] : 0.0;
    return SparseMatrix::identity(n) + g.adjacency.scale_rows(inv);
  }
  const SparseMatrix with_loops = g.adjacency + SparseMatrix::identity(n);
  Vector s = with_loops.row_sums();
  for (Index v = 0; v < n; ++v) s[v] = 1.0 / std::sqrt(s[v]);
  return with_loops.scale_rows(s).scale_cols(s);
}

Matrix single_layer_update(const Graph& g, const Matrix& x, const Matrix& theta, UpdateVariant variant) {
  if (x.rows() != g.num_vertices) throw Error(ErrorCode::ShapeMismatch, "single_layer_update: rows != vertices");
  const SparseMatrix p = propagation_operator(g, variant);
  nn::Tape tape;
  return nn::single_layer_update(p, tape.constant(x), tape.constant(theta)).value();
}

AttentionNeighborhoods AttentionNeighborhoods::from_graph(const Graph& g) {
  AttentionNeighborhoods out;
  out.num_nodes = g.num_vertices;
  for (Index i = 0; i < g.num_vertices; ++i) {
    bool self_done = false;
    g.adjacency.for_each_in_row(i, [&](Index j, double) {
      if (!self_done && j > i) {
        out.query.push_back(i);
        out.key.push_back(i);
        self_done = true;
      }
      out.query.push_back(i);
      out.key.push_back(j);
    });
    if (!self_done) {
      out.query.push_back(i);
      out.key.push_back(i);
    }
  }
  return out;
}

Matrix cross_attention(const Matrix& query, const Matrix& key, const Matrix& value,
                       const AttentionNeighborhoods& nbrs, const TaaParams& params, std::vector<Matrix>* attention) {
  nn::Tape tape;
  nn::AttentionWeights w{tape.constant(params.W), tape.constant(params.delta), params.num_heads, 0.0};
  return nn::cross_attention(tape.constant(query), tape.constant(key), tape.constant(value), nbrs, w, {}, attention)
      .value();
}

TaaOutput taa_forward(const HypergraphContext& ctx, const Matrix& x, const TaaParams& params) {
  nn::Tape tape;
  nn::TaaThetas thetas{tape.constant(params.theta_c), tape.constant(params.theta_star),
                       tape.constant(params.theta_hyp)};
  nn::AttentionWeights w{tape.constant(params.W), tape.constant(params.delta), params.num_heads, 0.0};
  const nn::TaaVars out = nn::taa_forward(ctx, tape.constant(x), thetas, w, {});
  return {out.x_hat_kappa.value(), out.x_hat_z.value(), out.x_star.value()};
}

namespace nn {

Var single_layer_update(const SparseMatrix& propagation, Var x, Var theta) {
  return relu(matmul(spmm(propagation, x), theta));
}

Var cross_attention(Var query, Var key, Var value, const AttentionNeighborhoods& nbrs,
                    const AttentionWeights& weights, const DropoutContext& dropout, std::vector<Matrix>* attention) {
  const Index n = nbrs.num_nodes;
  if (query.rows() != n || key.rows() != n || value.rows() != n) {
    throw Error(ErrorCode::ShapeMismatch, "cross_attention: feature rows must match the neighborhoods");
  }
  const Index width = weights.W.cols();
  const int heads = weights.num_heads;
  if (heads <= 0 || width % heads != 0) {
    throw Error(ErrorCode::ShapeMismatch, "cross_attention: head count must divide the projection width");
  }
  if (weights.delta.rows() != 2 * width || weights.delta.cols() != 1) {
    throw Error(ErrorCode::ShapeMismatch, "cross_attention: delta must be 2h' x 1");
  }
  const Index head_width = width / heads;
  Var wq = matmul(query, weights.W);
  Var wk = matmul(key, weights.W);
  Var wv = matmul(value, weights.W);

  if (attention != nullptr) attention->clear();
  std::vector<Var> outputs;
  for (int h = 0; h < heads; ++h) {
    const Index start = h * head_width;
    Var dq = slice_rows(weights.delta, start, head_width);
    Var dk = slice_rows(weights.delta, width + start, head_width);
    Var sq = matmul(slice_cols(wq, start, head_width), dq);
    Var sk = matmul(slice_cols(wk, start, head_width), dk);
    Var scores = leaky_relu(add(select_rows(sq, nbrs.query), select_rows(sk, nbrs.key)), 0.2);
    Var alpha = segment_softmax(scores, nbrs.query, n);
    if (attention != nullptr) attention->push_back(alpha.value());
    alpha = nn::dropout(alpha, weights.dropout, dropout);
    Var messages = scale_rows(select_rows(slice_cols(wv, start, head_width), nbrs.key), alpha);
    outputs.push_back(segment_sum(messages, nbrs.query, n));
  }
  return heads == 1 ? outputs.front() : concat_cols(outputs);
}

TaaVars view_updates(const HypergraphContext& ctx, Var x, const TaaThetas& thetas) {
  TaaVars out;
  out.x_star = single_layer_update(ctx.prop_star_lift, x, thetas.theta_star);
  out.x_c = single_layer_update(ctx.prop_clique, x, thetas.theta_c);
  out.x_hyp = single_layer_update(ctx.prop_hyp, x, thetas.theta_hyp);
  return out;
}

TaaVars taa_forward(const HypergraphContext& ctx, Var x, const TaaThetas& thetas, const AttentionWeights& weights,
                    const DropoutContext& dropout) {
  TaaVars out = view_updates(ctx, x, thetas);
  const auto node_rows = row_selector(RowTarget::NodeRows, ctx.star);
  Var beta = select_rows(out.x_star, node_rows);
  out.x_hat_kappa = cross_attention(beta, out.x_c, out.x_hyp, ctx.attention, weights, dropout);

  Var smooth_star = spmm(ctx.lap_star_nodes, out.x_star);
  Var smooth_c = spmm(ctx.lap_clique, out.x_c);
  Var smooth_hyp = spmm(ctx.lap_hyp, out.x_hyp);
  out.x_hat_z = cross_attention(smooth_star, smooth_c, smooth_hyp, ctx.attention, weights, dropout);
  return out;
}

}  // namespace nn

}  // namespace dphg
