#include "dphg/model.hpp"

#include <string>

#include "dphg/error.hpp"
#include "dphg/spectral.hpp"
#include "dphg/taa.hpp"

namespace dphg {

using nn::ParamGroup;
using nn::ParamStore;

void ModelConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (input_dim <= 0) fail("input_dim must be positive");
  if (hidden <= 0 || hidden % 2 != 0) fail("hidden width must be positive and even");
  if (taa_hidden <= 0) fail("attention width must be positive");
  if (num_heads <= 0 || taa_hidden % num_heads != 0) fail("attention heads must divide the attention width");
  if (num_classes < 2) fail("need at least two classes");
  if (dff_layers < 0) fail("dff_layers must be nonnegative");
  if (hgnn_layers < 1) fail("hgnn_layers must be at least 1");
  if (lambda < 0.0) fail("lambda must be nonnegative");
  for (double p : {dropout_gnn, dropout_taa, dropout_sib, dropout_dff}) {
    if (p < 0.0 || p >= 1.0) fail("dropout rates must lie in [0, 1)");
  }
}

namespace {

void add_mlp(ParamStore& store, const std::string& prefix, Index in, Index out, ParamGroup group, Rng& rng) {
  store.add(prefix + ".W1", nn::glorot_uniform(in, out, rng), group);
  store.add(prefix + ".b1", Matrix::Zero(1, out), group);
  store.add(prefix + ".W2", nn::glorot_uniform(out, out, rng), group);
  store.add(prefix + ".b2", Matrix::Zero(1, out), group);
}

std::string dff_name(int layer) { return "dff." + std::to_string(layer) + ".Theta"; }
std::string hgnn_name(int layer) { return "hgnn." + std::to_string(layer) + ".Theta"; }

}  // namespace

ParamStore init_dphgnn_params(const ModelConfig& cfg, Rng& rng) {
  cfg.validate();
  const Index h = cfg.hidden;
  const Index ht = cfg.taa_hidden;
  ParamStore store;
  store.add("proj.W", nn::glorot_uniform(cfg.input_dim, h, rng), ParamGroup::Gnn);
  store.add("taa.theta_c", nn::glorot_uniform(h, h, rng), ParamGroup::Gnn);
  store.add("taa.theta_star", nn::glorot_uniform(h, h, rng), ParamGroup::Gnn);
  store.add("taa.theta_hyp", nn::glorot_uniform(h, h, rng), ParamGroup::Gnn);
  store.add("taa.W", nn::glorot_uniform(h, ht, rng), ParamGroup::Taa);
  store.add("taa.delta", nn::glorot_uniform(2 * ht, 1, rng), ParamGroup::Taa);
  store.add("sib.theta", nn::glorot_uniform(2 * h, 2 * h, rng), ParamGroup::Sib);
  add_mlp(store, "mlp1", 2 * ht, h / 2, ParamGroup::Taa, rng);
  add_mlp(store, "mlp2", 2 * h, h / 2, ParamGroup::Sib, rng);
  add_mlp(store, "mlp3", h, h / 2, ParamGroup::Gnn, rng);
  for (int l = 0; l < cfg.dff_layers; ++l) store.add(dff_name(l), nn::glorot_uniform(h, h, rng), ParamGroup::Dff);
  store.add("head.Theta", nn::glorot_uniform(h, cfg.num_classes, rng), ParamGroup::Gnn);
  return store;
}

ParamStore init_hgnn_params(const ModelConfig& cfg, Rng& rng) {
  cfg.validate();
  ParamStore store;
  Index in = cfg.input_dim;
  for (int l = 0; l < cfg.hgnn_layers; ++l) {
    const Index out = l + 1 == cfg.hgnn_layers ? cfg.num_classes : cfg.hidden;
    store.add(hgnn_name(l), nn::glorot_uniform(in, out, rng), ParamGroup::Gnn);
    in = out;
  }
  return store;
}

ParamStore tied_hgnn_params(const ParamStore& dphgnn, const ModelConfig& cfg) {
  if (cfg.dff_layers < 1 || cfg.hgnn_layers != cfg.dff_layers + 1) {
    throw Error(ErrorCode::InvalidConfig, "weight tying needs hgnn_layers == dff_layers + 1 >= 2");
  }
  ParamStore store;
  store.add(hgnn_name(0), dphgnn.get("proj.W") * dphgnn.get(dff_name(0)), ParamGroup::Gnn);
  for (int l = 1; l < cfg.dff_layers; ++l) store.add(hgnn_name(l), dphgnn.get(dff_name(l)), ParamGroup::Gnn);
  store.add(hgnn_name(cfg.dff_layers), dphgnn.get("head.Theta"), ParamGroup::Gnn);
  return store;
}

ForwardTrace dphgnn_forward(const HypergraphContext& ctx, const Matrix& features, const ParamStore& params,
                            const ModelConfig& cfg) {
  nn::Tape tape;
  nn::ParamBinding bound(tape, params);
  const nn::ForwardVars v = nn::dphgnn_forward(ctx, tape.constant(features), bound, cfg, {});
  auto get = [](const nn::Var& var) { return var.valid() ? var.value() : Matrix(); };
  ForwardTrace t;
  t.projected = get(v.projected);
  t.spectral = get(v.spectral);
  t.x_hat_kappa = get(v.x_hat_kappa);
  t.x_hat_z = get(v.x_hat_z);
  t.eqv = get(v.eqv);
  t.static_features = get(v.static_features);
  t.x_gstar = get(v.x_gstar);
  t.fused = get(v.fused);
  t.dphgnn = get(v.dphgnn);
  t.logits = get(v.logits);
  return t;
}

Matrix hgnn_baseline_forward(const HypergraphContext& ctx, const Matrix& features, const ParamStore& params,
                             const ModelConfig& cfg) {
  nn::Tape tape;
  nn::ParamBinding bound(tape, params);
  return nn::hgnn_forward(ctx, tape.constant(features), bound, cfg, {}).value();
}

Matrix dff_forward(const HypergraphContext& ctx, const Matrix& x_static, const Matrix& x_gstar, const Matrix& theta,
                   Matrix* fused) {
  nn::Tape tape;
  const nn::DffStep step =
      nn::dff_layer(ctx, tape.constant(x_static), tape.constant(x_gstar), tape.constant(theta));
  if (fused != nullptr) *fused = step.fused.value();
  return step.output.value();
}

Matrix predict_layer(const HypergraphContext& ctx, const Matrix& x, const Matrix& theta) {
  nn::Tape tape;
  return nn::predict_layer(ctx, tape.constant(x), tape.constant(theta)).value();
}

namespace nn {

Var mlp(Var x, const ParamBinding& p, const std::string& prefix, double dropout, const DropoutContext& ctx) {
  Var hidden = relu(add(matmul(x, p[prefix + ".W1"]), p[prefix + ".b1"]));
  hidden = nn::dropout(hidden, dropout, ctx);
  return add(matmul(hidden, p[prefix + ".W2"]), p[prefix + ".b2"]);
}

Var feature_mix(Var x_hat_kappa, Var x_hat_z, Var x_spectral, Var x_proj, const ParamBinding& p,
                const ModelConfig& cfg, const DropoutContext& ctx, Var* eqv) {
  if (x_hat_kappa.rows() != x_proj.rows() || x_hat_z.rows() != x_proj.rows() || x_spectral.rows() != x_proj.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "feature_mix: inputs must be row-aligned");
  }
  Var attended = mlp(concat_cols({x_hat_kappa, x_hat_z}), p, "mlp1", cfg.dropout_taa, ctx);
  Var gate = sigmoid(relu(mlp(x_spectral, p, "mlp2", cfg.dropout_sib, ctx)));
  Var mixed = hadamard(attended, gate);
  if (eqv != nullptr) *eqv = mixed;
  return concat_cols({mixed, mlp(x_proj, p, "mlp3", cfg.dropout_gnn, ctx)});
}

DffStep dff_layer(const HypergraphContext& ctx, Var x_static, Var x_gstar, Var theta) {
  if (x_static.rows() != ctx.num_nodes() || x_gstar.rows() != ctx.num_nodes() + ctx.num_edges() ||
      x_static.cols() != x_gstar.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "dff: expected n x h static and (n + m) x h star features");
  }
  DffStep step;
  step.fused = add(spmm(ctx.fuse_nodes, x_static), spmm(ctx.fuse_star, x_gstar));
  step.output = relu(add(x_static, matmul(spmm(ctx.expand, step.fused), theta)));
  return step;
}

Var predict_layer(const HypergraphContext& ctx, Var x, Var theta) { return matmul(spmm(ctx.sib.hgnn, x), theta); }

ForwardVars dphgnn_forward(const HypergraphContext& ctx, Var features, const ParamBinding& p, const ModelConfig& cfg,
                           const DropoutContext& dropout) {
  if (features.rows() != ctx.num_nodes() || features.cols() != cfg.input_dim) {
    throw Error(ErrorCode::ShapeMismatch, "dphgnn: features must be n x input_dim");
  }
  ForwardVars v;
  v.projected = nn::dropout(matmul(features, p["proj.W"]), cfg.dropout_gnn, dropout);
  const Var x = v.projected;

  if (cfg.use_sib) {
    v.spectral = nn::dropout(sib_update(ctx.sib, x, cfg.lambda, p["sib.theta"]), cfg.dropout_sib, dropout);
  } else {
    v.spectral = concat_cols({x, x});
  }

  const TaaThetas thetas{p["taa.theta_c"], p["taa.theta_star"], p["taa.theta_hyp"]};
  if (cfg.use_taa) {
    const AttentionWeights w{p["taa.W"], p["taa.delta"], cfg.num_heads, cfg.dropout_taa};
    const TaaVars taa = taa_forward(ctx, x, thetas, w, dropout);
    v.x_hat_kappa = taa.x_hat_kappa;
    v.x_hat_z = taa.x_hat_z;
    v.x_gstar = taa.x_star;
  } else {
    // Self-only attention: every node attends to itself with weight one.
    v.x_hat_kappa = matmul(x, p["taa.W"]);
    v.x_hat_z = v.x_hat_kappa;
  }

  if (cfg.use_taa || cfg.use_sib) {
    v.static_features = feature_mix(v.x_hat_kappa, v.x_hat_z, v.spectral, x, p, cfg, dropout, &v.eqv);
  } else {
    v.static_features = x;
  }

  Var h = v.static_features;
  if (cfg.use_dff) {
    if (!v.x_gstar.valid()) v.x_gstar = single_layer_update(ctx.prop_star_lift, x, thetas.theta_star);
    for (int l = 0; l < cfg.dff_layers; ++l) {
      const DffStep step = dff_layer(ctx, h, v.x_gstar, p["dff." + std::to_string(l) + ".Theta"]);
      v.fused = step.fused;
      h = nn::dropout(step.output, cfg.dropout_dff, dropout);
    }
  } else {
    for (int l = 0; l < cfg.dff_layers; ++l) {
      h = relu(matmul(spmm(ctx.sib.hgnn, h), p["dff." + std::to_string(l) + ".Theta"]));
      h = nn::dropout(h, cfg.dropout_dff, dropout);
    }
  }
  v.dphgnn = h;
  v.logits = predict_layer(ctx, h, p["head.Theta"]);
  return v;
}

Var hgnn_forward(const HypergraphContext& ctx, Var features, const ParamBinding& p, const ModelConfig& cfg,
                 const DropoutContext& dropout) {
  if (features.rows() != ctx.num_nodes()) throw Error(ErrorCode::ShapeMismatch, "hgnn: features must have n rows");
  Var h = features;
  for (int l = 0; l < cfg.hgnn_layers; ++l) {
    h = matmul(spmm(ctx.sib.hgnn, h), p["hgnn." + std::to_string(l) + ".Theta"]);
    if (l + 1 < cfg.hgnn_layers) h = nn::dropout(relu(h), cfg.dropout_gnn, dropout);
  }
  return h;
}

}  // namespace nn

}  // namespace dphg
