#include "dphg/train.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "dphg/dataset_io.hpp"
#include "dphg/error.hpp"
#include "dphg/optim.hpp"
#include "json_specs.hpp"

namespace dphg {

using nlohmann::json;

MaskKind parse_mask_kind(std::string_view name) {
  if (name == "train") return MaskKind::Train;
  if (name == "val") return MaskKind::Val;
  if (name == "test") return MaskKind::Test;
  throw Error(ErrorCode::InvalidConfig, "mask must be train, val or test");
}

const char* to_string(MaskKind kind) {
  switch (kind) {
    case MaskKind::Train: return "train";
    case MaskKind::Val: return "val";
    case MaskKind::Test: return "test";
  }
  return "unknown";
}

const Mask& mask_of(const LabeledHypergraph& data, MaskKind kind) {
  switch (kind) {
    case MaskKind::Train: return data.train_mask;
    case MaskKind::Val: return data.val_mask;
    case MaskKind::Test: return data.test_mask;
  }
  return data.test_mask;
}

LabeledHypergraph resolve_dataset(const RunConfig& config) {
  if (!config.dataset.empty()) return load_dataset(config.dataset);
  if (!config.generator) throw Error(ErrorCode::InvalidConfig, "config names no dataset");
  GeneratedData generated = generate_synthetic(*config.generator, config.generator_seed);
  if (auto* data = std::get_if<LabeledHypergraph>(&generated)) return std::move(*data);
  if (auto* pool = std::get_if<IsoPool>(&generated)) return std::move(pool->data);
  throw Error(ErrorCode::InvalidConfig, "pair generators do not produce a training dataset");
}

HypergraphContext make_context(const RunConfig& config, const LabeledHypergraph& data) {
  if (config.cache_dir.empty()) return HypergraphContext::build(data.hg, data.features);
  return HypergraphContext::build_cached(data.hg, data.features, config.cache_dir);
}

namespace {

nn::ParamStore init_params(const RunConfig& config, const ModelConfig& mcfg, Rng& rng) {
  return config.model == ModelKind::Hgnn ? init_hgnn_params(mcfg, rng) : init_dphgnn_params(mcfg, rng);
}

nn::Var forward_logits(ModelKind kind, const HypergraphContext& ctx, nn::Var features, const nn::ParamBinding& p,
                       const ModelConfig& mcfg, const nn::DropoutContext& dropout) {
  if (kind == ModelKind::Hgnn) return nn::hgnn_forward(ctx, features, p, mcfg, dropout);
  return nn::dphgnn_forward(ctx, features, p, mcfg, dropout).logits;
}

std::optional<Metrics> metrics_if_any(const std::vector<int>& preds, const LabeledHypergraph& data, const Mask& mask) {
  for (bool b : mask) {
    if (b) return metrics(preds, data.labels, mask, data.num_classes);
  }
  return std::nullopt;
}

void check_dims(const Checkpoint& ckpt, const LabeledHypergraph& data) {
  if (ckpt.input_dim != data.feature_dim() || ckpt.num_classes != data.num_classes) {
    throw Error(ErrorCode::ShapeMismatch, "checkpoint expects d=" + std::to_string(ckpt.input_dim) + ", C=" +
                                              std::to_string(ckpt.num_classes) + "; dataset has d=" +
                                              std::to_string(data.feature_dim()) + ", C=" +
                                              std::to_string(data.num_classes));
  }
}

}  // namespace

TrainResult train(const RunConfig& config, const LabeledHypergraph& data, const TrainHooks& hooks) {
  config.validate();
  data.validate();
  const HypergraphContext ctx = make_context(config, data);
  return train(config, data, ctx, hooks);
}

TrainResult train(const RunConfig& config, const LabeledHypergraph& data, const HypergraphContext& ctx,
                  const TrainHooks& hooks) {
  config.validate();
  data.validate();
  if (ctx.num_nodes() != data.hg.num_nodes()) throw Error(ErrorCode::ShapeMismatch, "context built for other data");
  const auto start = std::chrono::steady_clock::now();

  const ModelConfig mcfg = config.model_config(data.feature_dim(), data.num_classes);
  Rng rng(config.seed);
  nn::ParamStore params = init_params(config, mcfg, rng);
  Rng dropout_rng = rng.split();
  nn::Adam adam(params, config.adam_settings());

  TrainResult result;
  result.report.config = config;
  result.report.loss.reserve(static_cast<std::size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    nn::Tape tape;
    nn::ParamBinding bound(tape, params);
    const nn::DropoutContext dropout{true, &dropout_rng};
    nn::Var logits = forward_logits(config.model, ctx, tape.constant(data.features), bound, mcfg, dropout);
    nn::Var loss = nn::cross_entropy(logits, data.labels, data.train_mask);
    const double value = loss.value()(0, 0);
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::Diverged, "loss became non-finite at epoch " + std::to_string(epoch));
    }
    tape.backward(loss);
    adam.step(params, bound.gradients());
    result.report.loss.push_back(value);
    if (hooks.on_epoch) hooks.on_epoch(epoch, value);
  }

  result.checkpoint.config = config;
  result.checkpoint.input_dim = data.feature_dim();
  result.checkpoint.num_classes = data.num_classes;
  result.checkpoint.params = std::move(params);

  const auto preds = argmax_rows(predict_logits(result.checkpoint, ctx, data.features));
  result.report.train = metrics_if_any(preds, data, data.train_mask);
  result.report.val = metrics_if_any(preds, data, data.val_mask);
  result.report.test = metrics_if_any(preds, data, data.test_mask);
  result.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

TrainResult train(const RunConfig& config) {
  config.validate();
  return train(config, resolve_dataset(config));
}

Matrix predict_logits(const Checkpoint& ckpt, const HypergraphContext& ctx, const Matrix& features) {
  const ModelConfig mcfg = ckpt.model_config();
  nn::Tape tape;
  nn::ParamBinding bound(tape, ckpt.params);
  return forward_logits(ckpt.config.model, ctx, tape.constant(features), bound, mcfg, {}).value();
}

Metrics evaluate(const Checkpoint& ckpt, const LabeledHypergraph& data, MaskKind mask) {
  data.validate();
  check_dims(ckpt, data);
  const HypergraphContext ctx = make_context(ckpt.config, data);
  const auto preds = argmax_rows(predict_logits(ckpt, ctx, data.features));
  return metrics(preds, data.labels, mask_of(data, mask), data.num_classes);
}

namespace {

json metrics_json(const Metrics& m) {
  return {{"accuracy", m.accuracy}, {"macro_f1", m.macro_f1}, {"micro_f1", m.micro_f1}, {"support", m.support}};
}

json optional_metrics_json(const std::optional<Metrics>& m) { return m ? metrics_json(*m) : json(nullptr); }

}  // namespace

std::string metrics_to_json(const Metrics& m) { return metrics_json(m).dump(2); }

std::string report_to_json(const TrainReport& report) {
  json doc;
  doc["model"] = to_string(report.config.model);
  doc["seed"] = report.config.seed;
  doc["epochs"] = report.config.epochs;
  doc["loss"] = report.loss;
  doc["metrics"] = {{"train", optional_metrics_json(report.train)},
                    {"val", optional_metrics_json(report.val)},
                    {"test", optional_metrics_json(report.test)}};
  doc["wall_seconds"] = report.wall_seconds;
  doc["config"] = detail::run_config_to_json(report.config);
  return doc.dump(2);
}

std::string loss_csv(const TrainReport& report) {
  std::string out = "epoch,loss\n";
  char line[64];
  for (std::size_t i = 0; i < report.loss.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.17g\n", i, report.loss[i]);
    out += line;
  }
  return out;
}

}  // namespace dphg
