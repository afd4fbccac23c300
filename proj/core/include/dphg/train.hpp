#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "dphg/checkpoint.hpp"
#include "dphg/config.hpp"
#include "dphg/context.hpp"
#include "dphg/metrics.hpp"

namespace dphg {

enum class MaskKind { Train, Val, Test };

MaskKind parse_mask_kind(std::string_view name);  // "train" | "val" | "test", else InvalidConfig
const char* to_string(MaskKind kind);
const Mask& mask_of(const LabeledHypergraph& data, MaskKind kind);

struct TrainReport {
  RunConfig config;
  std::vector<double> loss;  // training-mode loss before each update, one per epoch
  // Eval-mode metrics after the last epoch; empty when the mask selects nothing.
  std::optional<Metrics> train;
  std::optional<Metrics> val;
  std::optional<Metrics> test;
  double wall_seconds = 0.0;
};

struct TrainResult {
  TrainReport report;
  Checkpoint checkpoint;
};

struct TrainHooks {
  std::function<void(int epoch, double loss)> on_epoch;
};

// Loads `config.dataset` or runs `config.generator` with `generator_seed`.
// Generators that do not produce a labeled hypergraph are rejected.
LabeledHypergraph resolve_dataset(const RunConfig& config);

// Full-batch transductive training with per-module Adam. Deterministic in
// (config, data). Throws Diverged on a non-finite loss.
TrainResult train(const RunConfig& config, const LabeledHypergraph& data, const TrainHooks& hooks = {});
// Reuses a context built for `data` (several runs on one dataset).
TrainResult train(const RunConfig& config, const LabeledHypergraph& data, const HypergraphContext& ctx,
                  const TrainHooks& hooks = {});
TrainResult train(const RunConfig& config);

// Context honoring config.cache_dir.
HypergraphContext make_context(const RunConfig& config, const LabeledHypergraph& data);

Matrix predict_logits(const Checkpoint& ckpt, const HypergraphContext& ctx, const Matrix& features);

// Eval-mode forward and metrics on one mask. ShapeMismatch when the
// checkpoint's dimensions do not fit the dataset.
Metrics evaluate(const Checkpoint& ckpt, const LabeledHypergraph& data, MaskKind mask);

std::string report_to_json(const TrainReport& report);
std::string metrics_to_json(const Metrics& m);
std::string loss_csv(const TrainReport& report);

}  // namespace dphg
