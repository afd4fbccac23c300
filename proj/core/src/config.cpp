#include "dphg/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "dphg/dataset_io.hpp"
#include "dphg/error.hpp"
#include "json_specs.hpp"

namespace dphg {

using nlohmann::json;

const char* to_string(ModelKind kind) { return kind == ModelKind::Hgnn ? "hgnn" : "dphgnn"; }

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (epochs < 0) fail("epochs must be >= 0");
  for (const auto* g : {&gnn, &taa, &sib, &dff}) {
    if (!(g->lr > 0.0)) fail("learning rates must be positive");
    if (g->weight_decay < 0.0) fail("weight decay must be >= 0");
    if (g->dropout < 0.0 || g->dropout >= 1.0) fail("dropout must lie in [0, 1)");
    if (g->hidden <= 0) fail("hidden widths must be positive");
  }
  if (gnn.hidden % 2 != 0) fail("gnn.hidden must be even");
  if (gnn.num_layers < 1) fail("gnn.num_layers must be >= 1");
  if (taa.attention_heads < 1 || taa.hidden % taa.attention_heads != 0) {
    fail("taa.attention_heads must divide taa.hidden");
  }
  if (taa.num_layers != 1) fail("taa.num_layers must be 1 (attention runs once per forward pass)");
  if (sib.num_layers != 1) fail("sib.num_layers must be 1");
  if (sib.hidden != 2 * gnn.hidden) fail("sib.hidden must equal 2 * gnn.hidden");
  if (dff.hidden != gnn.hidden) fail("dff.hidden must equal gnn.hidden");
  if (dff.num_layers < 1) fail("dff.num_layers must be >= 1");
  if (lambda < 0.0) fail("lambda must be >= 0");
  if (dataset.empty() == !generator.has_value()) fail("set exactly one of \"dataset\" and \"generator\"");
}

ModelConfig RunConfig::model_config(Index input_dim, int num_classes) const {
  ModelConfig m;
  m.input_dim = input_dim;
  m.hidden = gnn.hidden;
  m.taa_hidden = taa.hidden;
  m.num_heads = taa.attention_heads;
  m.num_classes = num_classes;
  m.dff_layers = dff.num_layers - 1;
  m.hgnn_layers = gnn.num_layers;
  m.lambda = lambda;
  m.use_taa = ablation.use_taa;
  m.use_sib = ablation.use_sib;
  m.use_dff = ablation.use_dff;
  m.dropout_gnn = gnn.dropout;
  m.dropout_taa = taa.dropout;
  m.dropout_sib = sib.dropout;
  m.dropout_dff = dff.dropout;
  return m;
}

std::array<nn::AdamSettings, 4> RunConfig::adam_settings() const {
  auto adam = [](const ModuleHyper& g) {
    nn::AdamSettings s;
    s.lr = g.lr;
    s.weight_decay = g.weight_decay;
    return s;
  };
  // Indexed by nn::ParamGroup.
  return {adam(gnn), adam(taa), adam(sib), adam(dff)};
}

namespace detail {

namespace {

template <class T>
void read(const json& doc, const char* key, T& out) {
  if (auto it = doc.find(key); it != doc.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("bad value for \"") + key + "\": " + e.what());
    }
  }
}

void reject_unknown(const json& doc, std::initializer_list<const char*> known, const std::string& where) {
  std::set<std::string> names(known.begin(), known.end());
  for (const auto& item : doc.items()) {
    if (names.count(item.key()) == 0) {
      throw Error(ErrorCode::InvalidConfig, "unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

ModuleHyper module_from_json(const json& doc, ModuleHyper g, const char* name) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, std::string(name) + " must be an object");
  reject_unknown(doc, {"lr", "weight_decay", "dropout", "attention_heads", "hidden", "num_layers"}, name);
  read(doc, "lr", g.lr);
  read(doc, "weight_decay", g.weight_decay);
  read(doc, "dropout", g.dropout);
  read(doc, "attention_heads", g.attention_heads);
  read(doc, "hidden", g.hidden);
  read(doc, "num_layers", g.num_layers);
  return g;
}

json module_to_json(const ModuleHyper& g) {
  return {{"lr", g.lr},         {"weight_decay", g.weight_decay}, {"dropout", g.dropout},
          {"attention_heads", g.attention_heads}, {"hidden", g.hidden}, {"num_layers", g.num_layers}};
}

}  // namespace

RunConfig run_config_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
  reject_unknown(doc,
                 {"gnn", "taa", "sib", "dff", "epochs", "seed", "ablation", "lambda", "model", "dataset", "generator",
                  "generator_seed", "cache_dir"},
                 "config");
  RunConfig c;
  const bool sib_given = doc.contains("sib") && doc["sib"].contains("hidden");
  const bool dff_given = doc.contains("dff") && doc["dff"].contains("hidden");
  if (doc.contains("gnn")) c.gnn = module_from_json(doc["gnn"], c.gnn, "gnn");
  // Dependent widths follow gnn.hidden unless stated explicitly.
  if (!sib_given) c.sib.hidden = 2 * c.gnn.hidden;
  if (!dff_given) c.dff.hidden = c.gnn.hidden;
  if (doc.contains("taa")) c.taa = module_from_json(doc["taa"], c.taa, "taa");
  if (doc.contains("sib")) c.sib = module_from_json(doc["sib"], c.sib, "sib");
  if (doc.contains("dff")) c.dff = module_from_json(doc["dff"], c.dff, "dff");
  read(doc, "epochs", c.epochs);
  read(doc, "seed", c.seed);
  read(doc, "lambda", c.lambda);
  if (auto it = doc.find("ablation"); it != doc.end()) {
    reject_unknown(*it, {"use_taa", "use_sib", "use_dff"}, "ablation");
    read(*it, "use_taa", c.ablation.use_taa);
    read(*it, "use_sib", c.ablation.use_sib);
    read(*it, "use_dff", c.ablation.use_dff);
  }
  std::string model = "dphgnn";
  read(doc, "model", model);
  if (model == "dphgnn") {
    c.model = ModelKind::Dphgnn;
  } else if (model == "hgnn") {
    c.model = ModelKind::Hgnn;
  } else {
    throw Error(ErrorCode::InvalidConfig, "model must be \"dphgnn\" or \"hgnn\"");
  }
  read(doc, "dataset", c.dataset);
  if (auto it = doc.find("generator"); it != doc.end() && !it->is_null()) c.generator = generator_spec_from_json(*it);
  read(doc, "generator_seed", c.generator_seed);
  read(doc, "cache_dir", c.cache_dir);
  return c;
}

json run_config_to_json(const RunConfig& c) {
  json doc;
  doc["gnn"] = module_to_json(c.gnn);
  doc["taa"] = module_to_json(c.taa);
  doc["sib"] = module_to_json(c.sib);
  doc["dff"] = module_to_json(c.dff);
  doc["epochs"] = c.epochs;
  doc["seed"] = c.seed;
  doc["ablation"] = {{"use_taa", c.ablation.use_taa}, {"use_sib", c.ablation.use_sib}, {"use_dff", c.ablation.use_dff}};
  doc["lambda"] = c.lambda;
  doc["model"] = to_string(c.model);
  if (!c.dataset.empty()) doc["dataset"] = c.dataset;
  if (c.generator) doc["generator"] = generator_spec_to_json(*c.generator);
  doc["generator_seed"] = c.generator_seed;
  doc["cache_dir"] = c.cache_dir;
  return doc;
}

}  // namespace detail

RunConfig parse_run_config(std::string_view json_text) {
  try {
    return detail::run_config_from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string dump_run_config(const RunConfig& config) { return detail::run_config_to_json(config).dump(2); }

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig c = parse_run_config(read_text_file(path));
  const auto base = path.parent_path();
  if (!c.dataset.empty() && std::filesystem::path(c.dataset).is_relative()) c.dataset = (base / c.dataset).string();
  if (!c.cache_dir.empty() && std::filesystem::path(c.cache_dir).is_relative()) {
    c.cache_dir = (base / c.cache_dir).string();
  }
  return c;
}

}  // namespace dphg
