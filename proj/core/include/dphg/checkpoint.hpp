#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dphg/config.hpp"
#include "dphg/params.hpp"

namespace dphg {

// JSON document:
//   {"format": "dphg-checkpoint", "version": 1, "config": {...RunConfig...},
//    "input_dim": d, "num_classes": C,
//    "params": [{"name": ..., "group": ..., "shape": [rows, cols],
//                "values": [row-major reals]}, ...]}
// Reals are written in shortest round-trip form, so save/load is exact.
struct Checkpoint {
  RunConfig config;
  Index input_dim = 0;
  int num_classes = 0;
  nn::ParamStore params;

  ModelConfig model_config() const { return config.model_config(input_dim, num_classes); }
};

std::string dump_checkpoint(const Checkpoint& ckpt);
Checkpoint parse_checkpoint(std::string_view json_text);
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace dphg
