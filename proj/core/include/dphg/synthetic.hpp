#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "dphg/hypergraph.hpp"
#include "dphg/rng.hpp"

namespace dphg {

struct SplitRatios {
  double train = 0.5;
  double val = 0.25;
  double test = 0.25;
};

// Planted-partition classification hypergraph. Each hyperedge grows from a
// uniformly drawn anchor: candidates are accepted with probability p_in when
// they share the anchor's community and p_out otherwise.
struct PlantedSpec {
  NodeId num_nodes = 200;
  int num_classes = 2;
  double p_in = 0.3;
  double p_out = 0.02;
  int edge_size = 3;
  Index num_edges = 0;  // 0 selects num_nodes
  SplitRatios split;
};

// k-uniform, class-imbalanced hypergraph shaped after order-transaction data.
// The positive class holds round(positive_fraction * n) nodes.
struct CortoSpec {
  NodeId num_nodes = 400;
  int edge_size = 4;
  Index num_edges = 0;  // 0 selects num_nodes
  double positive_fraction = 6568.0 / (6568.0 + 26827.0);
  double homophily = 0.8;
  SplitRatios split;
};

// Random hypergraph together with a node-permuted (and edge-shuffled) copy.
struct IsoPairSpec {
  NodeId num_nodes = 8;
  Index num_edges = 8;
  int min_edge_size = 2;
  int max_edge_size = 4;
};

// Two k-uniform, k-regular hypergraphs with identical (n, m, degree
// histograms): a pair of disjoint rings versus one ring over all n nodes. With
// edge_size = 2 this is the "two triangles vs 6-cycle" family.
struct NonIsoPairSpec {
  NodeId num_nodes = 6;
  int edge_size = 2;
};

// Pool of small instances for pair classification. Instance i is a permuted
// copy of either the reference (split rings, label 1) or its 1-GWL-equivalent
// non-isomorphic partner (single ring, label 0) at a size drawn from `sizes`.
// All instances are laid out as one disjoint-union hypergraph; features are
// one-hot local indices within each instance.
struct IsoPoolSpec {
  int num_instances = 200;
  std::vector<NodeId> sizes = {6, 8, 9, 10};
  int edge_size = 2;
  double positive_fraction = 0.5;
  SplitRatios split;
};

using GeneratorSpec = std::variant<PlantedSpec, CortoSpec, IsoPairSpec, NonIsoPairSpec, IsoPoolSpec>;

struct HypergraphPair {
  Hypergraph a;
  Hypergraph b;
  bool is_isomorphic = false;
};

struct IsoPool {
  LabeledHypergraph data;
  std::vector<Hypergraph> instances;
  std::vector<int> instance_labels;
  std::vector<NodeId> instance_offsets;  // first node id of each instance
  std::vector<Hypergraph> references;    // reference hypergraph per instance
};

using GeneratedData = std::variant<LabeledHypergraph, HypergraphPair, IsoPool>;

// Pure function of (spec, seed). Throws InfeasibleSpec for impossible specs.
GeneratedData generate_synthetic(const GeneratorSpec& spec, std::uint64_t seed);

LabeledHypergraph generate_planted(const PlantedSpec& spec, std::uint64_t seed);
LabeledHypergraph generate_corto(const CortoSpec& spec, std::uint64_t seed);
HypergraphPair generate_iso_pair(const IsoPairSpec& spec, std::uint64_t seed);
HypergraphPair generate_noniso_pair(const NonIsoPairSpec& spec, std::uint64_t seed);
IsoPool generate_iso_pool(const IsoPoolSpec& spec, std::uint64_t seed);

// Ring of n nodes whose edges are the k consecutive windows
// {i, i+1, ..., i+k-1} mod n. Rotation by one is an automorphism.
Hypergraph uniform_ring(NodeId num_nodes, int edge_size);

// Disjoint rings with the given lengths, nodes numbered ring by ring.
Hypergraph uniform_rings(std::span<const NodeId> lengths, int edge_size);

Matrix one_hot_features(NodeId num_nodes);

// Stratified split by class label: within each class, a seeded shuffle assigns
// round(train*count) nodes to train, round(val*count) to val, the rest to test.
void assign_stratified_split(LabeledHypergraph& data, const SplitRatios& ratios, Rng& rng);

// JSON generator document, e.g. {"kind": "planted", "num_nodes": 200, ...}.
// Kinds: planted, corto, iso_pair, noniso_pair, iso_pool.
GeneratorSpec parse_generator_spec(std::string_view json_text);

}  // namespace dphg
