#include "dphg/checkpoint.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "dphg/dataset_io.hpp"
#include "dphg/error.hpp"
#include "json_specs.hpp"

namespace dphg {

using nlohmann::json;

namespace {

nn::ParamGroup group_from_string(const std::string& s) {
  for (auto g : {nn::ParamGroup::Gnn, nn::ParamGroup::Taa, nn::ParamGroup::Sib, nn::ParamGroup::Dff}) {
    if (s == nn::to_string(g)) return g;
  }
  throw Error(ErrorCode::ParseError, "unknown parameter group \"" + s + "\"");
}

}  // namespace

std::string dump_checkpoint(const Checkpoint& ckpt) {
  json doc;
  doc["format"] = "dphg-checkpoint";
  doc["version"] = 1;
  doc["config"] = detail::run_config_to_json(ckpt.config);
  doc["input_dim"] = ckpt.input_dim;
  doc["num_classes"] = ckpt.num_classes;
  json params = json::array();
  for (const auto& e : ckpt.params.entries()) {
    json values = json::array();
    for (Index r = 0; r < e.value.rows(); ++r) {
      for (Index c = 0; c < e.value.cols(); ++c) {
        if (!std::isfinite(e.value(r, c))) throw Error(ErrorCode::Diverged, "non-finite value in " + e.name);
        values.push_back(e.value(r, c));
      }
    }
    params.push_back({{"name", e.name},
                      {"group", nn::to_string(e.group)},
                      {"shape", {e.value.rows(), e.value.cols()}},
                      {"values", std::move(values)}});
  }
  doc["params"] = std::move(params);
  return doc.dump();
}

Checkpoint parse_checkpoint(std::string_view json_text) {
  try {
    const json doc = json::parse(json_text);
    if (doc.value("format", std::string()) != "dphg-checkpoint") {
      throw Error(ErrorCode::ParseError, "not a checkpoint document");
    }
    Checkpoint ckpt;
    ckpt.config = detail::run_config_from_json(doc.at("config"));
    ckpt.input_dim = doc.at("input_dim").get<Index>();
    ckpt.num_classes = doc.at("num_classes").get<int>();
    for (const auto& p : doc.at("params")) {
      const auto rows = p.at("shape").at(0).get<Index>();
      const auto cols = p.at("shape").at(1).get<Index>();
      const auto& values = p.at("values");
      if (rows < 0 || cols < 0 || static_cast<Index>(values.size()) != rows * cols) {
        throw Error(ErrorCode::ParseError, "parameter shape does not match its value count");
      }
      Matrix m(rows, cols);
      for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) m(r, c) = values[static_cast<std::size_t>(r * cols + c)].get<double>();
      }
      ckpt.params.add(p.at("name").get<std::string>(), std::move(m), group_from_string(p.at("group").get<std::string>()));
    }
    return ckpt;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  write_text_file(path, dump_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) { return parse_checkpoint(read_text_file(path)); }

}  // namespace dphg
