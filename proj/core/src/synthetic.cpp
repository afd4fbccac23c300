#include "dphg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dphg/error.hpp"
#include "json_specs.hpp"

namespace dphg {

namespace {

void check_split(const SplitRatios& s) {
  if (s.train < 0 || s.val < 0 || s.test < 0 || std::abs(s.train + s.val + s.test - 1.0) > 1e-9) {
    throw Error(ErrorCode::InfeasibleSpec, "split ratios must be nonnegative and sum to 1");
  }
}

std::vector<int> balanced_labels(NodeId n, int num_classes, Rng& rng) {
  auto order = rng.permutation(n);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i % num_classes;
  return labels;
}

// Draws `count` distinct ids from [0, n) by partial Fisher-Yates.
std::vector<NodeId> sample_distinct(NodeId n, int count, Rng& rng) {
  std::vector<NodeId> pool(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

LabeledHypergraph labeled_from(Hypergraph hg, std::vector<int> labels, int num_classes,
                               const SplitRatios& split, Rng& rng) {
  LabeledHypergraph data;
  data.features = one_hot_features(hg.num_nodes());
  data.hg = std::move(hg);
  data.labels = std::move(labels);
  data.num_classes = num_classes;
  assign_stratified_split(data, split, rng);
  data.validate();
  return data;
}

}  // namespace

Matrix one_hot_features(NodeId num_nodes) { return Matrix::Identity(num_nodes, num_nodes); }

void assign_stratified_split(LabeledHypergraph& data, const SplitRatios& ratios, Rng& rng) {
  check_split(ratios);
  const auto n = static_cast<std::size_t>(data.hg.num_nodes());
  data.train_mask.assign(n, false);
  data.val_mask.assign(n, false);
  data.test_mask.assign(n, false);
  for (int c = 0; c < data.num_classes; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < n; ++v) {
      if (data.labels[v] == c) members.push_back(v);
    }
    rng.shuffle(members);
    const auto count = static_cast<double>(members.size());
    const auto n_train = static_cast<std::size_t>(std::llround(ratios.train * count));
    const auto n_val = std::min(members.size() - n_train,
                                static_cast<std::size_t>(std::llround(ratios.val * count)));
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i < n_train) {
        data.train_mask[members[i]] = true;
      } else if (i < n_train + n_val) {
        data.val_mask[members[i]] = true;
      } else {
        data.test_mask[members[i]] = true;
      }
    }
  }
}

LabeledHypergraph generate_planted(const PlantedSpec& spec, std::uint64_t seed) {
  if (spec.num_nodes <= 0 || spec.num_classes <= 0) {
    throw Error(ErrorCode::InfeasibleSpec, "planted: need positive node and class counts");
  }
  if (spec.edge_size < 1 || spec.edge_size > spec.num_nodes) {
    throw Error(ErrorCode::InfeasibleSpec, "planted: edge_size must lie in [1, num_nodes]");
  }
  if (spec.p_in <= 0 || spec.p_in > 1 || spec.p_out < 0 || spec.p_out > 1) {
    throw Error(ErrorCode::InfeasibleSpec, "planted: probabilities must satisfy 0 < p_in <= 1, 0 <= p_out <= 1");
  }
  check_split(spec.split);
  Rng rng(seed);
  const NodeId n = spec.num_nodes;
  auto labels = balanced_labels(n, spec.num_classes, rng);
  const int community_size = n / spec.num_classes;
  if (spec.p_out == 0.0 && spec.edge_size > community_size) {
    throw Error(ErrorCode::InfeasibleSpec, "planted: edges cannot fit inside one community");
  }

  const Index m = spec.num_edges > 0 ? spec.num_edges : n;
  const std::size_t max_attempts = 100000 * static_cast<std::size_t>(spec.edge_size);
  std::vector<std::vector<NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  for (Index e = 0; e < m; ++e) {
    const auto anchor = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
    std::vector<NodeId> members{anchor};
    taken[static_cast<std::size_t>(anchor)] = 1;
    std::size_t attempts = 0;
    while (static_cast<int>(members.size()) < spec.edge_size) {
      if (++attempts > max_attempts) throw Error(ErrorCode::InfeasibleSpec, "planted: rejection sampling stalled");
      const auto u = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
      if (taken[static_cast<std::size_t>(u)]) continue;
      const bool same = labels[static_cast<std::size_t>(u)] == labels[static_cast<std::size_t>(anchor)];
      if (rng.bernoulli(same ? spec.p_in : spec.p_out)) {
        members.push_back(u);
        taken[static_cast<std::size_t>(u)] = 1;
      }
    }
    for (NodeId v : members) taken[static_cast<std::size_t>(v)] = 0;
    edges.push_back(std::move(members));
  }
  return labeled_from(Hypergraph::build(n, std::move(edges)), std::move(labels), spec.num_classes,
                      spec.split, rng);
}

LabeledHypergraph generate_corto(const CortoSpec& spec, std::uint64_t seed) {
  if (spec.num_nodes <= 0) throw Error(ErrorCode::InfeasibleSpec, "corto: need nodes");
  if (spec.edge_size < 1 || spec.edge_size > spec.num_nodes) {
    throw Error(ErrorCode::InfeasibleSpec, "corto: k-uniform edges need 1 <= k <= n");
  }
  if (spec.positive_fraction < 0 || spec.positive_fraction > 1 || spec.homophily < 0 ||
      spec.homophily > 1) {
    throw Error(ErrorCode::InfeasibleSpec, "corto: fractions must lie in [0, 1]");
  }
  check_split(spec.split);
  Rng rng(seed);
  const NodeId n = spec.num_nodes;
  const auto num_pos = static_cast<NodeId>(std::llround(spec.positive_fraction * n));
  auto order = rng.permutation(n);
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<NodeId>> by_class(2);
  for (NodeId i = 0; i < n; ++i) {
    const NodeId v = order[static_cast<std::size_t>(i)];
    const int y = i < num_pos ? 1 : 0;
    labels[static_cast<std::size_t>(v)] = y;
    by_class[static_cast<std::size_t>(y)].push_back(v);
  }
  for (auto& members : by_class) std::sort(members.begin(), members.end());

  const Index m = spec.num_edges > 0 ? spec.num_edges : n;
  std::vector<std::vector<NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  for (Index e = 0; e < m; ++e) {
    const auto anchor = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
    const int anchor_class = labels[static_cast<std::size_t>(anchor)];
    std::vector<NodeId> members{anchor};
    taken[static_cast<std::size_t>(anchor)] = 1;
    while (static_cast<int>(members.size()) < spec.edge_size) {
      const int cls = rng.bernoulli(spec.homophily) ? anchor_class : 1 - anchor_class;
      const auto& pool = by_class[static_cast<std::size_t>(cls)];
      // Fall back to the whole node set when the chosen class is exhausted.
      const bool has_free = std::any_of(pool.begin(), pool.end(),
                                        [&](NodeId v) { return !taken[static_cast<std::size_t>(v)]; });
      NodeId u;
      if (has_free) {
        do {
          u = pool[rng.below(pool.size())];
        } while (taken[static_cast<std::size_t>(u)]);
      } else {
        do {
          u = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
        } while (taken[static_cast<std::size_t>(u)]);
      }
      members.push_back(u);
      taken[static_cast<std::size_t>(u)] = 1;
    }
    for (NodeId v : members) taken[static_cast<std::size_t>(v)] = 0;
    edges.push_back(std::move(members));
  }
  return labeled_from(Hypergraph::build(n, std::move(edges)), std::move(labels), 2, spec.split, rng);
}

HypergraphPair generate_iso_pair(const IsoPairSpec& spec, std::uint64_t seed) {
  if (spec.num_nodes <= 0 || spec.num_edges < 0 || spec.min_edge_size < 1 ||
      spec.max_edge_size < spec.min_edge_size || spec.max_edge_size > spec.num_nodes) {
    throw Error(ErrorCode::InfeasibleSpec, "iso_pair: need 1 <= min_edge_size <= max_edge_size <= n");
  }
  Rng rng(seed);
  std::vector<std::vector<NodeId>> edges;
  for (Index e = 0; e < spec.num_edges; ++e) {
    const int size = spec.min_edge_size +
                     static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_edge_size - spec.min_edge_size + 1)));
    edges.push_back(sample_distinct(spec.num_nodes, size, rng));
  }
  HypergraphPair pair;
  pair.a = Hypergraph::build(spec.num_nodes, std::move(edges));
  const auto perm = rng.permutation(spec.num_nodes);
  auto image = pair.a.relabeled(perm).edges();
  rng.shuffle(image);
  pair.b = Hypergraph::build(spec.num_nodes, std::move(image));
  pair.is_isomorphic = true;
  return pair;
}

Hypergraph uniform_rings(std::span<const NodeId> lengths, int edge_size) {
  std::vector<std::vector<NodeId>> edges;
  NodeId offset = 0;
  for (NodeId len : lengths) {
    if (edge_size < 1 || len <= edge_size) {
      throw Error(ErrorCode::InfeasibleSpec, "ring length must exceed the edge size");
    }
    for (NodeId i = 0; i < len; ++i) {
      std::vector<NodeId> members;
      for (int j = 0; j < edge_size; ++j) members.push_back(offset + (i + j) % len);
      edges.push_back(std::move(members));
    }
    offset += len;
  }
  return Hypergraph::build(offset, std::move(edges));
}

Hypergraph uniform_ring(NodeId num_nodes, int edge_size) {
  const NodeId lengths[] = {num_nodes};
  return uniform_rings(lengths, edge_size);
}

namespace {

struct RingFamily {
  Hypergraph split;   // two disjoint rings
  Hypergraph single;  // one ring over all nodes
};

RingFamily ring_family(NodeId n, int k) {
  const NodeId half = n / 2;
  if (k < 2 || half <= k) {
    throw Error(ErrorCode::InfeasibleSpec, "ring pair needs edge_size >= 2 and n/2 > edge_size (n=" +
                                               std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  const NodeId lengths[] = {half, n - half};
  return {uniform_rings(lengths, k), uniform_ring(n, k)};
}

Hypergraph permuted_copy(const Hypergraph& hg, Rng& rng) {
  const auto perm = rng.permutation(hg.num_nodes());
  auto image = hg.relabeled(perm).edges();
  rng.shuffle(image);
  return Hypergraph::build(hg.num_nodes(), std::move(image));
}

}  // namespace

HypergraphPair generate_noniso_pair(const NonIsoPairSpec& spec, std::uint64_t seed) {
  auto family = ring_family(spec.num_nodes, spec.edge_size);
  Rng rng(seed);
  HypergraphPair pair;
  pair.a = permuted_copy(family.split, rng);
  pair.b = permuted_copy(family.single, rng);
  pair.is_isomorphic = false;
  return pair;
}

IsoPool generate_iso_pool(const IsoPoolSpec& spec, std::uint64_t seed) {
  if (spec.num_instances <= 0 || spec.sizes.empty()) {
    throw Error(ErrorCode::InfeasibleSpec, "iso_pool: need instances and sizes");
  }
  if (spec.positive_fraction < 0 || spec.positive_fraction > 1) {
    throw Error(ErrorCode::InfeasibleSpec, "iso_pool: positive_fraction must lie in [0, 1]");
  }
  check_split(spec.split);
  std::vector<RingFamily> families;
  NodeId max_size = 0;
  for (NodeId n : spec.sizes) {
    families.push_back(ring_family(n, spec.edge_size));
    max_size = std::max(max_size, n);
  }

  Rng rng(seed);
  IsoPool pool;
  const auto num_pos = static_cast<int>(std::llround(spec.positive_fraction * spec.num_instances));
  pool.instance_labels.resize(static_cast<std::size_t>(spec.num_instances));
  for (int i = 0; i < spec.num_instances; ++i) pool.instance_labels[static_cast<std::size_t>(i)] = i < num_pos ? 1 : 0;
  rng.shuffle(pool.instance_labels);

  std::vector<std::vector<NodeId>> edges;
  NodeId offset = 0;
  for (int i = 0; i < spec.num_instances; ++i) {
    const auto& fam = families[rng.below(families.size())];
    const bool positive = pool.instance_labels[static_cast<std::size_t>(i)] == 1;
    Hypergraph inst = permuted_copy(positive ? fam.split : fam.single, rng);
    for (const auto& members : inst.edges()) {
      std::vector<NodeId> shifted;
      for (NodeId v : members) shifted.push_back(v + offset);
      edges.push_back(std::move(shifted));
    }
    pool.instance_offsets.push_back(offset);
    offset += inst.num_nodes();
    pool.references.push_back(fam.split);
    pool.instances.push_back(std::move(inst));
  }

  LabeledHypergraph& data = pool.data;
  data.hg = Hypergraph::build(offset, std::move(edges));
  data.num_classes = 2;
  data.features = Matrix::Zero(offset, max_size);
  data.labels.resize(static_cast<std::size_t>(offset));
  for (std::size_t i = 0; i < pool.instances.size(); ++i) {
    const NodeId base = pool.instance_offsets[i];
    for (NodeId v = 0; v < pool.instances[i].num_nodes(); ++v) {
      data.features(base + v, v) = 1.0;
      data.labels[static_cast<std::size_t>(base + v)] = pool.instance_labels[i];
    }
  }

  // Split whole instances so no instance straddles train and test.
  LabeledHypergraph per_instance;
  per_instance.hg = Hypergraph::build(spec.num_instances, {});
  per_instance.labels = pool.instance_labels;
  per_instance.num_classes = 2;
  assign_stratified_split(per_instance, spec.split, rng);
  const auto n = static_cast<std::size_t>(offset);
  data.train_mask.assign(n, false);
  data.val_mask.assign(n, false);
  data.test_mask.assign(n, false);
  for (std::size_t i = 0; i < pool.instances.size(); ++i) {
    const auto base = static_cast<std::size_t>(pool.instance_offsets[i]);
    for (NodeId v = 0; v < pool.instances[i].num_nodes(); ++v) {
      const std::size_t u = base + static_cast<std::size_t>(v);
      data.train_mask[u] = per_instance.train_mask[i];
      data.val_mask[u] = per_instance.val_mask[i];
      data.test_mask[u] = per_instance.test_mask[i];
    }
  }
  data.validate();
  return pool;
}

GeneratedData generate_synthetic(const GeneratorSpec& spec, std::uint64_t seed) {
  return std::visit(
      [seed](const auto& s) -> GeneratedData {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PlantedSpec>) return generate_planted(s, seed);
        else if constexpr (std::is_same_v<T, CortoSpec>) return generate_corto(s, seed);
        else if constexpr (std::is_same_v<T, IsoPairSpec>) return generate_iso_pair(s, seed);
        else if constexpr (std::is_same_v<T, NonIsoPairSpec>) return generate_noniso_pair(s, seed);
        else return generate_iso_pool(s, seed);
      },
      spec);
}

namespace detail {

using nlohmann::json;

namespace {

template <class T>
void read_opt(const json& doc, const char* key, T& out) {
  if (auto it = doc.find(key); it != doc.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("bad value for \"") + key + "\": " + e.what());
    }
  }
}

}  // namespace

SplitRatios split_from_json(const json& doc, SplitRatios fallback) {
  if (auto it = doc.find("split"); it != doc.end()) {
    read_opt(*it, "train", fallback.train);
    read_opt(*it, "val", fallback.val);
    read_opt(*it, "test", fallback.test);
  }
  return fallback;
}

json split_to_json(const SplitRatios& s) { return {{"train", s.train}, {"val", s.val}, {"test", s.test}}; }

GeneratorSpec generator_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "generator spec must be an object");
  std::string kind;
  read_opt(doc, "kind", kind);
  if (kind == "planted") {
    PlantedSpec s;
    read_opt(doc, "num_nodes", s.num_nodes);
    read_opt(doc, "num_classes", s.num_classes);
    read_opt(doc, "p_in", s.p_in);
    read_opt(doc, "p_out", s.p_out);
    read_opt(doc, "edge_size", s.edge_size);
    read_opt(doc, "num_edges", s.num_edges);
    s.split = split_from_json(doc, s.split);
    return s;
  }
  if (kind == "corto") {
    CortoSpec s;
    read_opt(doc, "num_nodes", s.num_nodes);
    read_opt(doc, "edge_size", s.edge_size);
    read_opt(doc, "num_edges", s.num_edges);
    read_opt(doc, "positive_fraction", s.positive_fraction);
    read_opt(doc, "homophily", s.homophily);
    s.split = split_from_json(doc, s.split);
    return s;
  }
  if (kind == "iso_pair") {
    IsoPairSpec s;
    read_opt(doc, "num_nodes", s.num_nodes);
    read_opt(doc, "num_edges", s.num_edges);
    read_opt(doc, "min_edge_size", s.min_edge_size);
    read_opt(doc, "max_edge_size", s.max_edge_size);
    return s;
  }
  if (kind == "noniso_pair") {
    NonIsoPairSpec s;
    read_opt(doc, "num_nodes", s.num_nodes);
    read_opt(doc, "edge_size", s.edge_size);
    return s;
  }
  if (kind == "iso_pool") {
    IsoPoolSpec s;
    read_opt(doc, "num_instances", s.num_instances);
    read_opt(doc, "sizes", s.sizes);
    read_opt(doc, "edge_size", s.edge_size);
    read_opt(doc, "positive_fraction", s.positive_fraction);
    s.split = split_from_json(doc, s.split);
    return s;
  }
  throw Error(ErrorCode::ParseError, "unknown generator kind \"" + kind + "\"");
}

json generator_spec_to_json(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PlantedSpec>) {
          return {{"kind", "planted"}, {"num_nodes", s.num_nodes}, {"num_classes", s.num_classes},
                  {"p_in", s.p_in}, {"p_out", s.p_out}, {"edge_size", s.edge_size},
                  {"num_edges", s.num_edges}, {"split", split_to_json(s.split)}};
        } else if constexpr (std::is_same_v<T, CortoSpec>) {
          return {{"kind", "corto"}, {"num_nodes", s.num_nodes}, {"edge_size", s.edge_size},
                  {"num_edges", s.num_edges}, {"positive_fraction", s.positive_fraction},
                  {"homophily", s.homophily}, {"split", split_to_json(s.split)}};
        } else if constexpr (std::is_same_v<T, IsoPairSpec>) {
          return {{"kind", "iso_pair"}, {"num_nodes", s.num_nodes}, {"num_edges", s.num_edges},
                  {"min_edge_size", s.min_edge_size}, {"max_edge_size", s.max_edge_size}};
        } else if constexpr (std::is_same_v<T, NonIsoPairSpec>) {
          return {{"kind", "noniso_pair"}, {"num_nodes", s.num_nodes}, {"edge_size", s.edge_size}};
        } else {
          return {{"kind", "iso_pool"}, {"num_instances", s.num_instances}, {"sizes", s.sizes},
                  {"edge_size", s.edge_size}, {"positive_fraction", s.positive_fraction},
                  {"split", split_to_json(s.split)}};
        }
      },
      spec);
}

}  // namespace detail

GeneratorSpec parse_generator_spec(std::string_view json_text) {
  try {
    return detail::generator_spec_from_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace dphg
