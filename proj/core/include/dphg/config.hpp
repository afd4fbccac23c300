#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dphg/model.hpp"
#include "dphg/optim.hpp"
#include "dphg/synthetic.hpp"

namespace dphg {

// One hyperparameter group per module.
struct ModuleHyper {
  double lr = 0.01;
  double weight_decay = 0.0;
  double dropout = 0.0;
  int attention_heads = 1;
  Index hidden = 64;
  int num_layers = 1;
};

enum class ModelKind { Dphgnn, Hgnn };

struct AblationFlags {
  bool use_taa = true;
  bool use_sib = true;
  bool use_dff = true;

  bool operator==(const AblationFlags&) const = default;
};

struct RunConfig {
  ModuleHyper gnn{0.01, 5e-5, 0.3, 2, 64, 2};
  ModuleHyper taa{0.001, 0.001, 0.5, 2, 32, 1};
  ModuleHyper sib{0.01, 5e-4, 0.4, 1, 128, 1};
  ModuleHyper dff{0.01, 5e-4, 0.5, 1, 64, 2};
  int epochs = 400;
  std::uint64_t seed = 0;
  AblationFlags ablation;
  double lambda = 1.0;
  ModelKind model = ModelKind::Dphgnn;

  // Exactly one data source: a dataset file or a generator spec.
  std::string dataset;
  std::optional<GeneratorSpec> generator;
  std::uint64_t generator_seed = 0;

  std::string cache_dir;  // empty disables the context cache

  // Throws InvalidConfig.
  void validate() const;

  ModelConfig model_config(Index input_dim, int num_classes) const;
  std::array<nn::AdamSettings, 4> adam_settings() const;
};

RunConfig parse_run_config(std::string_view json_text);
std::string dump_run_config(const RunConfig& config);
// Relative dataset / cache paths are resolved against the config's directory.
RunConfig load_run_config(const std::filesystem::path& path);

const char* to_string(ModelKind kind);

}  // namespace dphg
