#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dphg/checkpoint.hpp"
#include "dphg/config.hpp"
#include "dphg/dataset_io.hpp"
#include "dphg/error.hpp"
#include "dphg/experiments.hpp"
#include "dphg/gwl.hpp"
#include "dphg/synthetic.hpp"
#include "dphg/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) seeds.push_back(std::stoull(item));
  }
  return seeds;
}

int cmd_generate(const std::string& spec_path, std::uint64_t seed, const std::string& out) {
  const dphg::GeneratorSpec spec = dphg::parse_generator_spec(dphg::read_text_file(spec_path));
  dphg::GeneratedData data = dphg::generate_synthetic(spec, seed);
  if (auto* labeled = std::get_if<dphg::LabeledHypergraph>(&data)) {
    dphg::save_dataset(*labeled, out);
  } else if (auto* pool = std::get_if<dphg::IsoPool>(&data)) {
    dphg::save_dataset(pool->data, out);
  } else {
    const auto& pair = std::get<dphg::HypergraphPair>(data);
    fs::create_directories(out);
    dphg::save_hypergraph(pair.a, fs::path(out) / "a.json");
    dphg::save_hypergraph(pair.b, fs::path(out) / "b.json");
    dphg::write_text_file(fs::path(out) / "pair.json", json{{"is_isomorphic", pair.is_isomorphic}}.dump(2) + "\n");
  }
  std::cout << json{{"written", out}, {"seed", seed}}.dump() << "\n";
  return 0;
}

int cmd_train(const std::string& config_path, const std::string& out) {
  const dphg::RunConfig config = dphg::load_run_config(config_path);
  const dphg::TrainResult result = dphg::train(config);
  fs::create_directories(out);
  dphg::write_text_file(fs::path(out) / "report.json", dphg::report_to_json(result.report) + "\n");
  dphg::write_text_file(fs::path(out) / "loss.csv", dphg::loss_csv(result.report));
  dphg::save_checkpoint(result.checkpoint, fs::path(out) / "checkpoint.json");
  json summary = json::parse(dphg::report_to_json(result.report));
  summary.erase("loss");
  summary.erase("config");
  summary["final_loss"] = result.report.loss.empty() ? json(nullptr) : json(result.report.loss.back());
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_eval(const std::string& ckpt_path, const std::string& data_path, const std::string& mask) {
  const dphg::Checkpoint ckpt = dphg::load_checkpoint(ckpt_path);
  const dphg::LabeledHypergraph data = dphg::load_dataset(data_path);
  const dphg::Metrics m = dphg::evaluate(ckpt, data, dphg::parse_mask_kind(mask));
  std::cout << dphg::metrics_to_json(m) << "\n";
  return 0;
}

int cmd_iso_test(const std::string& a_path, const std::string& b_path, bool brute_force, int max_rounds) {
  const dphg::Hypergraph a = dphg::load_hypergraph(a_path);
  const dphg::Hypergraph b = dphg::load_hypergraph(b_path);
  const dphg::GwlVerdict verdict = dphg::gwl_test(a, b, max_rounds);
  json doc{{"verdict", dphg::to_string(verdict.outcome)}, {"rounds", verdict.rounds_used}};
  if (brute_force) doc["brute_force_isomorphic"] = dphg::brute_force_isomorphic(a, b);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_ablate(const std::string& config_path, const std::string& seeds_text, const std::string& out) {
  const dphg::RunConfig config = dphg::load_run_config(config_path);
  const auto seeds = parse_seed_list(seeds_text);
  const std::string table = dphg::ablation_to_json(dphg::run_ablation(config, seeds));
  if (!out.empty()) dphg::write_text_file(out, table + "\n");
  std::cout << table << "\n";
  return 0;
}

int cmd_iso_experiment(const std::string& spec_path, std::uint64_t seed, const std::string& config_path) {
  const dphg::GeneratorSpec spec = dphg::parse_generator_spec(dphg::read_text_file(spec_path));
  const auto* pool_spec = std::get_if<dphg::IsoPoolSpec>(&spec);
  if (pool_spec == nullptr) throw dphg::Error(dphg::ErrorCode::InvalidConfig, "iso-experiment needs an iso_pool spec");
  dphg::RunConfig config;
  if (!config_path.empty()) config = dphg::load_run_config(config_path);
  std::cout << dphg::iso_report_to_json(dphg::iso_experiment(*pool_spec, seed, config)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergraph learning toolkit: dataset generation, training, evaluation, isomorphism tests"};
  app.require_subcommand(1);

  std::string spec_path, out, config_path, ckpt_path, data_path, mask = "test", a_path, b_path, seeds_text;
  std::uint64_t seed = 0;
  bool brute_force = false;
  int max_rounds = -1;

  auto* generate = app.add_subcommand("generate", "Generate a synthetic dataset or hypergraph pair");
  generate->add_option("--spec", spec_path, "Generator spec (JSON)")->required()->check(CLI::ExistingFile);
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--out", out, "Output file (datasets) or directory (pairs)")->required();

  auto* train = app.add_subcommand("train", "Train a model from a run config");
  train->add_option("--config", config_path, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  train->add_option("--out", out, "Output directory for report, loss curve and checkpoint")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on a dataset mask");
  eval->add_option("--checkpoint", ckpt_path, "Checkpoint file")->required()->check(CLI::ExistingFile);
  eval->add_option("--data", data_path, "Dataset file")->required()->check(CLI::ExistingFile);
  eval->add_option("--mask", mask, "train, val or test")->check(CLI::IsMember({"train", "val", "test"}));

  auto* iso = app.add_subcommand("iso-test", "Color-refinement isomorphism test of two hypergraphs");
  iso->add_option("--a", a_path, "First hypergraph (JSON)")->required()->check(CLI::ExistingFile);
  iso->add_option("--b", b_path, "Second hypergraph (JSON)")->required()->check(CLI::ExistingFile);
  iso->add_flag("--brute-force", brute_force, "Also run the exhaustive check (n <= 10)");
  iso->add_option("--max-rounds", max_rounds, "Refinement round limit (default: until stable)");

  auto* ablate = app.add_subcommand("ablate", "Train with each block disabled in turn");
  ablate->add_option("--config", config_path, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  ablate->add_option("--seeds", seeds_text, "Comma-separated seeds (default: the config seed)");
  ablate->add_option("--out", out, "Also write the table to this file");

  auto* iso_exp = app.add_subcommand("iso-experiment", "Train DPHGNN and HGNN on an iso/non-iso instance pool");
  iso_exp->add_option("--spec", spec_path, "iso_pool generator spec (JSON)")->required()->check(CLI::ExistingFile);
  iso_exp->add_option("--seed", seed, "Random seed");
  iso_exp->add_option("--config", config_path, "Run config for model hyperparameters")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return cmd_generate(spec_path, seed, out);
    if (*train) return cmd_train(config_path, out);
    if (*eval) return cmd_eval(ckpt_path, data_path, mask);
    if (*iso) return cmd_iso_test(a_path, b_path, brute_force, max_rounds);
    if (*ablate) return cmd_ablate(config_path, seeds_text, out);
    if (*iso_exp) return cmd_iso_experiment(spec_path, seed, config_path);
  } catch (const dphg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
