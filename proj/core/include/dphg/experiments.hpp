#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dphg/gwl.hpp"
#include "dphg/train.hpp"

namespace dphg {

struct AblationRow {
  std::string name;
  AblationFlags flags;
  std::vector<Metrics> test_per_seed;
  Metrics test_mean;  // field-wise mean over seeds (support from the first seed)
};

struct AblationTable {
  std::vector<std::uint64_t> seeds;
  // Overall, w/o TAA, w/o SIB, w/o DFF.
  std::vector<AblationRow> rows;
  // All three blocks off; the pipeline reduces to stacked HGNN convolutions.
  AblationRow degenerate;
};

// One train + test evaluation per flag setting and seed on a shared dataset.
// `seeds` empty means {base.seed}.
AblationTable run_ablation(const RunConfig& base, const LabeledHypergraph& data,
                           std::span<const std::uint64_t> seeds = {});
AblationTable run_ablation(const RunConfig& base, std::span<const std::uint64_t> seeds = {});

std::string ablation_to_json(const AblationTable& table);

struct IsoExperimentReport {
  std::uint64_t seed = 0;
  int num_instances = 0;
  int num_positive = 0;
  // gwl_test(instance, reference) outcomes split by instance label.
  int positive_possibly_isomorphic = 0;
  int positive_distinguished = 0;
  int negative_possibly_isomorphic = 0;
  int negative_distinguished = 0;
  // Node-level test metrics of each model on the same split.
  Metrics dphgnn_test;
  Metrics hgnn_test;
  // Majority vote of node predictions per test instance.
  double dphgnn_instance_accuracy = 0.0;
  double hgnn_instance_accuracy = 0.0;
};

// Builds the instance pool, labels it with gwl verdicts, then trains DPHGNN
// and the HGNN baseline (model_config.model is overridden) on identical splits.
IsoExperimentReport iso_experiment(const IsoPoolSpec& spec, std::uint64_t seed, const RunConfig& model_config);

std::string iso_report_to_json(const IsoExperimentReport& report);

}  // namespace dphg
