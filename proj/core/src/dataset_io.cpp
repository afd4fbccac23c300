#include "dphg/dataset_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dphg/error.hpp"

namespace dphg {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw Error(ErrorCode::ParseError, std::string("missing key \"") + key + "\"");
  return *it;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Hypergraph hypergraph_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "document must be a JSON object");
  const json& n_node = require(doc, "num_nodes");
  const json& edges_node = require(doc, "hyperedges");
  if (!n_node.is_number_integer()) throw Error(ErrorCode::ParseError, "num_nodes must be an integer");
  if (!edges_node.is_array()) throw Error(ErrorCode::ParseError, "hyperedges must be an array");
  std::vector<std::vector<NodeId>> edges;
  edges.reserve(edges_node.size());
  for (const json& e : edges_node) {
    if (!e.is_array()) throw Error(ErrorCode::ParseError, "each hyperedge must be an array");
    std::vector<NodeId> members;
    members.reserve(e.size());
    for (const json& v : e) {
      if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, "node ids must be integers");
      members.push_back(v.get<NodeId>());
    }
    edges.push_back(std::move(members));
  }
  return Hypergraph::build(n_node.get<NodeId>(), std::move(edges));
}

Mask mask_from_json(const json& node, const char* key) {
  if (!node.is_array()) throw Error(ErrorCode::ParseError, std::string(key) + " must be an array");
  Mask mask;
  mask.reserve(node.size());
  for (const json& b : node) {
    if (!b.is_boolean()) throw Error(ErrorCode::ParseError, std::string(key) + " entries must be booleans");
    mask.push_back(b.get<bool>());
  }
  return mask;
}

void append_real(std::string& out, double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::ShapeMismatch, "non-finite feature value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void append_edges(std::string& out, const Hypergraph& hg) {
  out += "\"hyperedges\": [";
  for (Index e = 0; e < hg.num_edges(); ++e) {
    if (e) out += ", ";
    out += '[';
    bool first = true;
    for (NodeId v : hg.edge(e)) {
      if (!first) out += ", ";
      first = false;
      out += std::to_string(v);
    }
    out += ']';
  }
  out += ']';
}

void append_mask(std::string& out, const char* key, const Mask& mask) {
  out += '"';
  out += key;
  out += "\": [";
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (i) out += ", ";
    out += mask[i] ? "true" : "false";
  }
  out += ']';
}

}  // namespace

LabeledHypergraph parse_dataset(std::string_view json_text) {
  const json doc = parse_json(json_text);
  LabeledHypergraph data;
  data.hg = hypergraph_from_json(doc);
  const auto n = static_cast<std::size_t>(data.hg.num_nodes());

  const json& feats = require(doc, "features");
  if (!feats.is_array()) throw Error(ErrorCode::ParseError, "features must be an array of rows");
  if (feats.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "feature rows (" + std::to_string(feats.size()) +
                                              ") differ from num_nodes (" + std::to_string(n) + ")");
  }
  const std::size_t d = n ? feats.front().size() : 0;
  data.features.resize(static_cast<Index>(n), static_cast<Index>(d));
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = feats[r];
    if (!row.is_array() || row.size() != d) {
      throw Error(ErrorCode::ShapeMismatch, "feature rows must all have length " + std::to_string(d));
    }
    for (std::size_t c = 0; c < d; ++c) {
      if (!row[c].is_number()) throw Error(ErrorCode::ParseError, "features must be numbers");
      data.features(static_cast<Index>(r), static_cast<Index>(c)) = row[c].get<double>();
    }
  }

  const json& labels = require(doc, "labels");
  if (!labels.is_array()) throw Error(ErrorCode::ParseError, "labels must be an array");
  int max_label = -1;
  for (const json& y : labels) {
    if (!y.is_number_integer()) throw Error(ErrorCode::ParseError, "labels must be integers");
    const int label = y.get<int>();
    if (label < 0) throw Error(ErrorCode::ParseError, "labels must be nonnegative");
    data.labels.push_back(label);
    max_label = std::max(max_label, label);
  }
  if (auto it = doc.find("num_classes"); it != doc.end()) {
    if (!it->is_number_integer()) throw Error(ErrorCode::ParseError, "num_classes must be an integer");
    data.num_classes = it->get<int>();
  } else {
    data.num_classes = max_label + 1;
  }

  data.train_mask = mask_from_json(require(doc, "train_mask"), "train_mask");
  data.val_mask = mask_from_json(require(doc, "val_mask"), "val_mask");
  data.test_mask = mask_from_json(require(doc, "test_mask"), "test_mask");
  data.validate();
  return data;
}

std::string dump_dataset(const LabeledHypergraph& data) {
  data.validate();
  std::string out = "{\"num_nodes\": " + std::to_string(data.hg.num_nodes()) + ",\n ";
  append_edges(out, data.hg);
  out += ",\n \"features\": [";
  for (Index r = 0; r < data.features.rows(); ++r) {
    if (r) out += ",\n   ";
    out += '[';
    for (Index c = 0; c < data.features.cols(); ++c) {
      if (c) out += ", ";
      append_real(out, data.features(r, c));
    }
    out += ']';
  }
  out += "],\n \"labels\": [";
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(data.labels[i]);
  }
  out += "],\n \"num_classes\": " + std::to_string(data.num_classes) + ",\n ";
  append_mask(out, "train_mask", data.train_mask);
  out += ",\n ";
  append_mask(out, "val_mask", data.val_mask);
  out += ",\n ";
  append_mask(out, "test_mask", data.test_mask);
  out += "}\n";
  return out;
}

Hypergraph parse_hypergraph(std::string_view json_text) {
  return hypergraph_from_json(parse_json(json_text));
}

std::string dump_hypergraph(const Hypergraph& hg) {
  std::string out = "{\"num_nodes\": " + std::to_string(hg.num_nodes()) + ", ";
  append_edges(out, hg);
  out += "}\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to " + path.string());
}

LabeledHypergraph load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_text_file(path));
}

void save_dataset(const LabeledHypergraph& data, const std::filesystem::path& path) {
  write_text_file(path, dump_dataset(data));
}

Hypergraph load_hypergraph(const std::filesystem::path& path) {
  return parse_hypergraph(read_text_file(path));
}

void save_hypergraph(const Hypergraph& hg, const std::filesystem::path& path) {
  write_text_file(path, dump_hypergraph(hg));
}

}  // namespace dphg
