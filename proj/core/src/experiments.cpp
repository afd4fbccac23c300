#include "dphg/experiments.hpp"

#include <nlohmann/json.hpp>

#include "dphg/error.hpp"

namespace dphg {

using nlohmann::json;

namespace {

Metrics mean_of(const std::vector<Metrics>& all) {
  Metrics m;
  for (const auto& x : all) {
    m.accuracy += x.accuracy;
    m.macro_f1 += x.macro_f1;
    m.micro_f1 += x.micro_f1;
  }
  const auto k = static_cast<double>(all.size());
  m.accuracy /= k;
  m.macro_f1 /= k;
  m.micro_f1 /= k;
  m.support = all.front().support;
  return m;
}

AblationRow run_row(const std::string& name, AblationFlags flags, const RunConfig& base,
                    const LabeledHypergraph& data, const HypergraphContext& ctx,
                    std::span<const std::uint64_t> seeds) {
  AblationRow row;
  row.name = name;
  row.flags = flags;
  for (std::uint64_t seed : seeds) {
    RunConfig cfg = base;
    cfg.model = ModelKind::Dphgnn;
    cfg.ablation = flags;
    cfg.seed = seed;
    const TrainResult result = train(cfg, data, ctx);
    if (!result.report.test) throw Error(ErrorCode::EmptyMask, "ablation needs a nonempty test mask");
    row.test_per_seed.push_back(*result.report.test);
  }
  row.test_mean = mean_of(row.test_per_seed);
  return row;
}

json metrics_json(const Metrics& m) {
  return {{"accuracy", m.accuracy}, {"macro_f1", m.macro_f1}, {"micro_f1", m.micro_f1}, {"support", m.support}};
}

json row_json(const AblationRow& row) {
  json per_seed = json::array();
  for (const auto& m : row.test_per_seed) per_seed.push_back(metrics_json(m));
  return {{"name", row.name},
          {"use_taa", row.flags.use_taa},
          {"use_sib", row.flags.use_sib},
          {"use_dff", row.flags.use_dff},
          {"test_mean", metrics_json(row.test_mean)},
          {"test_per_seed", per_seed}};
}

double instance_accuracy(const IsoPool& pool, const std::vector<int>& preds) {
  const Mask& test = pool.data.test_mask;
  int correct = 0, total = 0;
  for (std::size_t i = 0; i < pool.instances.size(); ++i) {
    const NodeId first = pool.instance_offsets[i];
    if (!test[static_cast<std::size_t>(first)]) continue;
    int votes = 0;
    const NodeId size = pool.instances[i].num_nodes();
    for (NodeId v = 0; v < size; ++v) votes += preds[static_cast<std::size_t>(first + v)] == 1 ? 1 : -1;
    // Ties go to the lower class, matching the node-level argmax policy.
    const int predicted = votes > 0 ? 1 : 0;
    correct += predicted == pool.instance_labels[i] ? 1 : 0;
    ++total;
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / total;
}

}  // namespace

AblationTable run_ablation(const RunConfig& base, const LabeledHypergraph& data, std::span<const std::uint64_t> seeds) {
  base.validate();
  data.validate();
  AblationTable table;
  if (seeds.empty()) {
    table.seeds = {base.seed};
  } else {
    table.seeds.assign(seeds.begin(), seeds.end());
  }
  const HypergraphContext ctx = make_context(base, data);
  table.rows.push_back(run_row("Overall", {true, true, true}, base, data, ctx, table.seeds));
  table.rows.push_back(run_row("w/o TAA", {false, true, true}, base, data, ctx, table.seeds));
  table.rows.push_back(run_row("w/o SIB", {true, false, true}, base, data, ctx, table.seeds));
  table.rows.push_back(run_row("w/o DFF", {true, true, false}, base, data, ctx, table.seeds));
  table.degenerate = run_row("all off", {false, false, false}, base, data, ctx, table.seeds);
  return table;
}

AblationTable run_ablation(const RunConfig& base, std::span<const std::uint64_t> seeds) {
  base.validate();
  return run_ablation(base, resolve_dataset(base), seeds);
}

std::string ablation_to_json(const AblationTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows) rows.push_back(row_json(r));
  json doc;
  doc["seeds"] = table.seeds;
  doc["rows"] = rows;
  doc["degenerate"] = row_json(table.degenerate);
  return doc.dump(2);
}

IsoExperimentReport iso_experiment(const IsoPoolSpec& spec, std::uint64_t seed, const RunConfig& model_config) {
  const IsoPool pool = generate_iso_pool(spec, seed);
  IsoExperimentReport report;
  report.seed = seed;
  report.num_instances = static_cast<int>(pool.instances.size());
  for (std::size_t i = 0; i < pool.instances.size(); ++i) {
    const bool positive = pool.instance_labels[i] == 1;
    report.num_positive += positive ? 1 : 0;
    const GwlVerdict v = gwl_test(pool.instances[i], pool.references[i]);
    const bool distinguished = v.outcome == GwlOutcome::Distinguished;
    if (positive) {
      (distinguished ? report.positive_distinguished : report.positive_possibly_isomorphic) += 1;
    } else {
      (distinguished ? report.negative_distinguished : report.negative_possibly_isomorphic) += 1;
    }
  }

  RunConfig cfg = model_config;
  cfg.dataset.clear();
  cfg.generator = spec;
  cfg.generator_seed = seed;
  const HypergraphContext ctx = make_context(cfg, pool.data);

  cfg.model = ModelKind::Dphgnn;
  const TrainResult dphgnn = train(cfg, pool.data, ctx);
  cfg.model = ModelKind::Hgnn;
  const TrainResult hgnn = train(cfg, pool.data, ctx);
  if (!dphgnn.report.test || !hgnn.report.test) throw Error(ErrorCode::EmptyMask, "iso pool has no test instances");
  report.dphgnn_test = *dphgnn.report.test;
  report.hgnn_test = *hgnn.report.test;
  report.dphgnn_instance_accuracy =
      instance_accuracy(pool, argmax_rows(predict_logits(dphgnn.checkpoint, ctx, pool.data.features)));
  report.hgnn_instance_accuracy =
      instance_accuracy(pool, argmax_rows(predict_logits(hgnn.checkpoint, ctx, pool.data.features)));
  return report;
}

std::string iso_report_to_json(const IsoExperimentReport& r) {
  json doc;
  doc["seed"] = r.seed;
  doc["num_instances"] = r.num_instances;
  doc["num_positive"] = r.num_positive;
  doc["gwl"] = {{"positive", {{"PossiblyIsomorphic", r.positive_possibly_isomorphic},
                               {"Distinguished", r.positive_distinguished}}},
                {"negative", {{"PossiblyIsomorphic", r.negative_possibly_isomorphic},
                               {"Distinguished", r.negative_distinguished}}}};
  doc["dphgnn"] = {{"test", metrics_json(r.dphgnn_test)}, {"instance_accuracy", r.dphgnn_instance_accuracy}};
  doc["hgnn"] = {{"test", metrics_json(r.hgnn_test)}, {"instance_accuracy", r.hgnn_instance_accuracy}};
  return doc.dump(2);
}

}  // namespace dphg
