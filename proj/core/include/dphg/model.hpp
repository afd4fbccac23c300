#pragma once

#include <string>

#include "dphg/context.hpp"
#include "dphg/ops.hpp"
#include "dphg/params.hpp"
#include "dphg/rng.hpp"

namespace dphg {

struct ModelConfig {
  Index input_dim = 0;
  Index hidden = 64;      // h, width of the projected features
  Index taa_hidden = 32;  // h', width of the attention projection W
  int num_heads = 2;
  int num_classes = 2;
  int dff_layers = 1;   // hidden fusion layers before the prediction head
  int hgnn_layers = 2;  // baseline depth, prediction layer included
  double lambda = 1.0;
  bool use_taa = true;
  bool use_sib = true;
  bool use_dff = true;
  double dropout_gnn = 0.3;
  double dropout_taa = 0.5;
  double dropout_sib = 0.4;
  double dropout_dff = 0.5;

  // Throws InvalidConfig.
  void validate() const;
};

// Parameter names:
//   proj.W                         d x h        gnn
//   taa.theta_{c,star,hyp}         h x h        gnn
//   taa.W                          h x h'       taa
//   taa.delta                      2h' x 1      taa
//   sib.theta                      2h x 2h      sib
//   mlp1.{W1,b1,W2,b2}             2h' -> h/2   taa
//   mlp2.{W1,b1,W2,b2}             2h  -> h/2   sib
//   mlp3.{W1,b1,W2,b2}             h   -> h/2   gnn
//   dff.<l>.Theta                  h x h        dff
//   head.Theta                     h x C        gnn
// Every tensor exists regardless of the ablation flags so checkpoints keep one
// layout per width setting.
nn::ParamStore init_dphgnn_params(const ModelConfig& cfg, Rng& rng);

// hgnn.<l>.Theta: d -> h -> ... -> C, all in the gnn group.
nn::ParamStore init_hgnn_params(const ModelConfig& cfg, Rng& rng);

// Baseline parameters that make hgnn_baseline_forward reproduce the all-off
// DPHGNN pipeline: hgnn.0 = proj.W * dff.0.Theta, hgnn.l = dff.l.Theta,
// hgnn.last = head.Theta.
nn::ParamStore tied_hgnn_params(const nn::ParamStore& dphgnn, const ModelConfig& cfg);

struct ForwardTrace {
  Matrix projected;        // n x h
  Matrix spectral;         // n x 2h
  Matrix x_hat_kappa;      // n x h'
  Matrix x_hat_z;          // n x h'
  Matrix eqv;              // n x h/2 (empty when TAA and SIB are both off)
  Matrix static_features;  // n x h
  Matrix x_gstar;          // (n + m) x h, empty when DFF is off
  Matrix fused;            // m x h from the last fusion layer, empty when DFF is off
  Matrix dphgnn;           // n x h
  Matrix logits;           // n x C
};

// Eval-mode dense entry points.
ForwardTrace dphgnn_forward(const HypergraphContext& ctx, const Matrix& features, const nn::ParamStore& params,
                            const ModelConfig& cfg);
Matrix hgnn_baseline_forward(const HypergraphContext& ctx, const Matrix& features, const nn::ParamStore& params,
                             const ModelConfig& cfg);

// relu(X_static + H De^{-1} X_fused Θ), X_fused = H^T Dv^{-1/2} X_static +
// De^{-1} (supernode rows of A_* X_gstar).
Matrix dff_forward(const HypergraphContext& ctx, const Matrix& x_static, const Matrix& x_gstar, const Matrix& theta,
                   Matrix* fused = nullptr);
// Δ_HGNN X Θ
Matrix predict_layer(const HypergraphContext& ctx, const Matrix& x, const Matrix& theta);

namespace nn {

struct ForwardVars {
  Var projected;
  Var spectral;
  Var x_hat_kappa;
  Var x_hat_z;
  Var eqv;
  Var static_features;
  Var x_gstar;
  Var fused;
  Var dphgnn;
  Var logits;
};

// Linear -> ReLU -> dropout -> Linear.
Var mlp(Var x, const ParamBinding& p, const std::string& prefix, double dropout, const DropoutContext& ctx);

// X_eqv = MLP1(x̂κ |;| x̂Z) ⊙ sigmoid(relu(MLP2(X_spectral))); returns
// X_eqv |;| MLP3(X_proj). `eqv` (optional) receives X_eqv.
Var feature_mix(Var x_hat_kappa, Var x_hat_z, Var x_spectral, Var x_proj, const ParamBinding& p,
                const ModelConfig& cfg, const DropoutContext& ctx, Var* eqv = nullptr);

struct DffStep {
  Var fused;
  Var output;
};
DffStep dff_layer(const HypergraphContext& ctx, Var x_static, Var x_gstar, Var theta);

Var predict_layer(const HypergraphContext& ctx, Var x, Var theta);

ForwardVars dphgnn_forward(const HypergraphContext& ctx, Var features, const ParamBinding& p,
                           const ModelConfig& cfg, const DropoutContext& dropout);

Var hgnn_forward(const HypergraphContext& ctx, Var features, const ParamBinding& p, const ModelConfig& cfg,
                 const DropoutContext& dropout);

}  // namespace nn

}  // namespace dphg
