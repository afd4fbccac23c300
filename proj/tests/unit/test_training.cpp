#include <gtest/gtest.h>

#include <filesystem>

#include "dphg/checkpoint.hpp"
#include "dphg/config.hpp"
#include "dphg/dataset_io.hpp"
#include "dphg/experiments.hpp"
#include "dphg/metrics.hpp"
#include "dphg/train.hpp"
#include "expect_error.hpp"

using namespace dphg;

namespace {

RunConfig small_run(int epochs) {
  RunConfig cfg;
  cfg.gnn.hidden = 16;
  cfg.sib.hidden = 32;
  cfg.dff.hidden = 16;
  cfg.taa.hidden = 8;
  cfg.epochs = epochs;
  PlantedSpec spec;
  spec.num_nodes = 60;
  cfg.generator = spec;
  cfg.generator_seed = 3;
  return cfg;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dphg_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Metrics, KnownValues) {
  const std::vector<int> labels = {0, 0, 1, 1, 2, 2};
  const std::vector<int> preds = {0, 1, 1, 1, 2, 0};
  const Metrics m = metrics(preds, labels, Mask(6, true), 3);
  EXPECT_DOUBLE_EQ(m.accuracy, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(m.micro_f1, 4.0 / 6.0);
  // Per-class F1: 0.5, 0.8, 2/3.
  EXPECT_NEAR(m.macro_f1, (0.5 + 0.8 + 2.0 / 3.0) / 3.0, 1e-15);
  EXPECT_EQ(m.support, 6u);
  const Metrics masked = metrics(preds, labels, Mask{true, false, true, true, false, false}, 3);
  EXPECT_DOUBLE_EQ(masked.accuracy, 1.0);
  // Class 2 has no members and no predictions inside the mask.
  EXPECT_NEAR(masked.macro_f1, 2.0 / 3.0, 1e-15);
  EXPECT_DPHG_ERROR(metrics(preds, labels, Mask(6, false), 3), ErrorCode::EmptyMask);
}

TEST(Metrics, ArgmaxTiesGoLow) {
  const Matrix l = (Matrix(2, 3) << 1, 1, 0, -1, 2, 2).finished();
  EXPECT_EQ(argmax_rows(l), (std::vector<int>{0, 1}));
}

TEST(RunConfig, DefaultsAndValidation) {
  RunConfig cfg;
  cfg.dataset = "x.json";
  EXPECT_NO_THROW(cfg.validate());
  const ModelConfig mc = cfg.model_config(10, 3);
  EXPECT_EQ(mc.hidden, 64);
  EXPECT_EQ(mc.taa_hidden, 32);
  EXPECT_EQ(mc.dff_layers, 1);
  EXPECT_EQ(mc.hgnn_layers, 2);
  EXPECT_DOUBLE_EQ(mc.dropout_taa, 0.5);
  const auto adam = cfg.adam_settings();
  EXPECT_DOUBLE_EQ(adam[static_cast<std::size_t>(nn::ParamGroup::Taa)].lr, 0.001);
  EXPECT_DOUBLE_EQ(adam[static_cast<std::size_t>(nn::ParamGroup::Sib)].weight_decay, 5e-4);

  RunConfig both = cfg;
  both.generator = PlantedSpec{};
  EXPECT_DPHG_ERROR(both.validate(), ErrorCode::InvalidConfig);
  RunConfig none;
  EXPECT_DPHG_ERROR(none.validate(), ErrorCode::InvalidConfig);
  RunConfig heads = cfg;
  heads.taa.attention_heads = 3;
  EXPECT_DPHG_ERROR(heads.validate(), ErrorCode::InvalidConfig);
  RunConfig widths = cfg;
  widths.sib.hidden = 64;
  EXPECT_DPHG_ERROR(widths.validate(), ErrorCode::InvalidConfig);
}

TEST(RunConfig, JsonRoundTripAndStrictKeys) {
  RunConfig cfg = small_run(7);
  cfg.ablation.use_sib = false;
  cfg.model = ModelKind::Hgnn;
  cfg.lambda = 0.25;
  const RunConfig back = parse_run_config(dump_run_config(cfg));
  EXPECT_EQ(back.epochs, 7);
  EXPECT_EQ(back.ablation, cfg.ablation);
  EXPECT_EQ(back.model, ModelKind::Hgnn);
  EXPECT_DOUBLE_EQ(back.lambda, 0.25);
  EXPECT_EQ(back.gnn.hidden, 16);
  ASSERT_TRUE(back.generator.has_value());
  EXPECT_EQ(std::get<PlantedSpec>(*back.generator).num_nodes, 60);
  EXPECT_DPHG_ERROR(parse_run_config(R"({"dataset": "a.json", "epoch": 3})"), ErrorCode::InvalidConfig);
  EXPECT_DPHG_ERROR(parse_run_config(R"({"dataset": "a.json", "epochs": "many"})"), ErrorCode::ParseError);
  // Derived widths follow gnn.hidden when omitted.
  const RunConfig derived = parse_run_config(R"({"dataset": "a.json", "gnn": {"hidden": 32}})");
  EXPECT_EQ(derived.sib.hidden, 64);
  EXPECT_EQ(derived.dff.hidden, 32);
}

TEST(RunConfig, RelativePathsResolveAgainstConfigFile) {
  const auto dir = scratch("config_paths");
  write_text_file(dir / "run.json", R"({"dataset": "data.json", "cache_dir": "cache"})");
  const RunConfig cfg = load_run_config(dir / "run.json");
  EXPECT_EQ(std::filesystem::path(cfg.dataset), dir / "data.json");
  EXPECT_EQ(std::filesystem::path(cfg.cache_dir), dir / "cache");
}

TEST(Train, ZeroEpochsStillReports) {
  const TrainResult r = train(small_run(0));
  EXPECT_TRUE(r.report.loss.empty());
  ASSERT_TRUE(r.report.test.has_value());
  EXPECT_GT(r.report.test->support, 0u);
}

TEST(Train, DeterministicPerConfig) {
  const RunConfig cfg = small_run(15);
  const TrainResult a = train(cfg);
  const TrainResult b = train(cfg);
  EXPECT_EQ(a.report.loss, b.report.loss);
  EXPECT_EQ(a.report.test->accuracy, b.report.test->accuracy);
  RunConfig other = cfg;
  other.seed = 1;
  EXPECT_NE(train(other).report.loss, a.report.loss);
}

TEST(Train, LossDecreasesOnPlantedData) {
  RunConfig cfg = small_run(60);
  const TrainResult r = train(cfg);
  ASSERT_EQ(r.report.loss.size(), 60u);
  EXPECT_LT(r.report.loss.back(), 0.5 * r.report.loss.front());
  EXPECT_GE(r.report.train->accuracy, 0.9);
}

TEST(Train, HooksSeeEveryEpoch) {
  int calls = 0;
  TrainHooks hooks;
  hooks.on_epoch = [&](int epoch, double loss) {
    EXPECT_EQ(epoch, calls);
    EXPECT_TRUE(std::isfinite(loss));
    ++calls;
  };
  const RunConfig cfg = small_run(5);
  train(cfg, resolve_dataset(cfg), hooks);
  EXPECT_EQ(calls, 5);
}

TEST(Train, EvaluateReproducesReport) {
  const RunConfig cfg = small_run(20);
  const TrainResult r = train(cfg);
  const LabeledHypergraph data = resolve_dataset(cfg);
  const Metrics m = evaluate(r.checkpoint, data, MaskKind::Test);
  EXPECT_EQ(m.accuracy, r.report.test->accuracy);
  EXPECT_EQ(m.macro_f1, r.report.test->macro_f1);

  // Through a file round trip as well.
  const auto dir = scratch("ckpt");
  save_checkpoint(r.checkpoint, dir / "ckpt.json");
  const Checkpoint back = load_checkpoint(dir / "ckpt.json");
  EXPECT_EQ(evaluate(back, data, MaskKind::Val).accuracy, r.report.val->accuracy);
}

TEST(Train, BaselineModelTrains) {
  RunConfig cfg = small_run(30);
  cfg.model = ModelKind::Hgnn;
  const TrainResult r = train(cfg);
  EXPECT_LT(r.report.loss.back(), r.report.loss.front());
  EXPECT_TRUE(r.checkpoint.params.contains("hgnn.0.Theta"));
}

TEST(Train, RejectsPairGenerators) {
  RunConfig cfg = small_run(1);
  cfg.generator = IsoPairSpec{};
  EXPECT_DPHG_ERROR(resolve_dataset(cfg), ErrorCode::InvalidConfig);
}

TEST(Train, EvaluateChecksDimensions) {
  const RunConfig cfg = small_run(1);
  const TrainResult r = train(cfg);
  LabeledHypergraph data = resolve_dataset(cfg);
  data.features = Matrix::Ones(data.features.rows(), 3);
  EXPECT_DPHG_ERROR(evaluate(r.checkpoint, data, MaskKind::Test), ErrorCode::ShapeMismatch);
}

TEST(Checkpoint, RoundTripIsExact) {
  const TrainResult r = train(small_run(3));
  const Checkpoint back = parse_checkpoint(dump_checkpoint(r.checkpoint));
  ASSERT_EQ(back.params.size(), r.checkpoint.params.size());
  for (std::size_t i = 0; i < back.params.size(); ++i) {
    EXPECT_EQ(back.params.entries()[i].name, r.checkpoint.params.entries()[i].name);
    EXPECT_EQ(back.params.entries()[i].group, r.checkpoint.params.entries()[i].group);
    EXPECT_EQ(back.params.entries()[i].value, r.checkpoint.params.entries()[i].value);
  }
  EXPECT_EQ(back.input_dim, r.checkpoint.input_dim);
  EXPECT_DPHG_ERROR(parse_checkpoint(R"({"format": "other"})"), ErrorCode::ParseError);
}

TEST(Train, LossCsvAndReportJson) {
  const TrainResult r = train(small_run(2));
  const std::string csv = loss_csv(r.report);
  EXPECT_EQ(csv.rfind("epoch,loss\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(report_to_json(r.report).find("\"test\""), std::string::npos);
}

TEST(Context, CacheHitReproducesStructures) {
  const auto dir = scratch("cache");
  const LabeledHypergraph data = generate_planted(PlantedSpec{.num_nodes = 40}, 1);
  bool hit = true;
  const HypergraphContext a = HypergraphContext::build_cached(data.hg, data.features, dir, &hit);
  EXPECT_FALSE(hit);
  const HypergraphContext b = HypergraphContext::build_cached(data.hg, data.features, dir, &hit);
  EXPECT_TRUE(hit);
  EXPECT_EQ(a.clique.adjacency, b.clique.adjacency);
  EXPECT_EQ(a.star.graph.adjacency, b.star.graph.adjacency);
  EXPECT_EQ(a.hyper.adjacency, b.hyper.adjacency);
  EXPECT_EQ(a.prop_hyp, b.prop_hyp);

  // A corrupted cache file is rebuilt rather than trusted.
  for (const auto& entry : std::filesystem::directory_iterator(dir)) write_text_file(entry.path(), "garbage");
  const HypergraphContext c = HypergraphContext::build_cached(data.hg, data.features, dir, &hit);
  EXPECT_FALSE(hit);
  EXPECT_EQ(c.hyper.adjacency, a.hyper.adjacency);
}

TEST(Context, IsolatedNodesGetSelfLoops) {
  const Hypergraph hg = build_hypergraph(3, {{0, 1}});
  const HypergraphContext ctx = HypergraphContext::build(hg, Matrix::Ones(3, 1));
  EXPECT_EQ(ctx.num_edges(), 2);
  EXPECT_FALSE(ctx.hg.has_isolated_nodes());
}

TEST(Context, HashDependsOnFeatures) {
  const Hypergraph hg = build_hypergraph(3, {{0, 1}, {1, 2}});
  EXPECT_NE(content_hash(hg, Matrix::Ones(3, 1)), content_hash(hg, Matrix::Zero(3, 1)));
  EXPECT_EQ(content_hash(hg, Matrix::Ones(3, 1)), content_hash(hg, Matrix::Ones(3, 1)));
}

TEST(Ablation, FourRowsPlusDegenerate) {
  const RunConfig cfg = small_run(3);
  const std::vector<std::uint64_t> seeds = {0, 1};
  const AblationTable t = run_ablation(cfg, seeds);
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0].flags, (AblationFlags{true, true, true}));
  EXPECT_EQ(t.rows[1].flags, (AblationFlags{false, true, true}));
  EXPECT_EQ(t.rows[2].flags, (AblationFlags{true, false, true}));
  EXPECT_EQ(t.rows[3].flags, (AblationFlags{true, true, false}));
  EXPECT_EQ(t.degenerate.flags, (AblationFlags{false, false, false}));
  for (const auto& row : t.rows) EXPECT_EQ(row.test_per_seed.size(), 2u);
  EXPECT_NE(ablation_to_json(t).find("w/o TAA"), std::string::npos);
}

TEST(MaskKind, Parse) {
  EXPECT_EQ(parse_mask_kind("val"), MaskKind::Val);
  EXPECT_DPHG_ERROR(parse_mask_kind("dev"), ErrorCode::InvalidConfig);
}
