#pragma once

#include <nlohmann/json.hpp>

#include "dphg/config.hpp"
#include "dphg/synthetic.hpp"

namespace dphg::detail {

GeneratorSpec generator_spec_from_json(const nlohmann::json& doc);
nlohmann::json generator_spec_to_json(const GeneratorSpec& spec);

SplitRatios split_from_json(const nlohmann::json& doc, SplitRatios fallback);
nlohmann::json split_to_json(const SplitRatios& split);

RunConfig run_config_from_json(const nlohmann::json& doc);
nlohmann::json run_config_to_json(const RunConfig& config);

}  // namespace dphg::detail
