#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dphg/hypergraph.hpp"

namespace dphg {

// Dataset document:
//   {"num_nodes": n, "hyperedges": [[...], ...], "features": [[...], ...],
//    "labels": [...], "num_classes": C, "train_mask": [...], "val_mask": [...],
//    "test_mask": [...]}
// "num_classes" is optional on input (defaults to max label + 1). Reals are
// written with 17 significant digits so save/load is bit-exact.
LabeledHypergraph parse_dataset(std::string_view json_text);
std::string dump_dataset(const LabeledHypergraph& data);

LabeledHypergraph load_dataset(const std::filesystem::path& path);
void save_dataset(const LabeledHypergraph& data, const std::filesystem::path& path);

// Structure-only documents ({"num_nodes", "hyperedges"}); any dataset file is
// also accepted.
Hypergraph parse_hypergraph(std::string_view json_text);
std::string dump_hypergraph(const Hypergraph& hg);
Hypergraph load_hypergraph(const std::filesystem::path& path);
void save_hypergraph(const Hypergraph& hg, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace dphg
