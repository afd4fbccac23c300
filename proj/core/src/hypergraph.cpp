#include "dphg/hypergraph.hpp"

#include <algorithm>
#include <string>

#include "dphg/error.hpp"

namespace dphg {

Hypergraph Hypergraph::build(NodeId num_nodes, std::vector<std::vector<NodeId>> edges) {
  if (num_nodes < 0) throw Error(ErrorCode::NodeIdOutOfRange, "negative node count");
  Hypergraph hg;
  hg.num_nodes_ = num_nodes;
  hg.node_degrees_.assign(static_cast<std::size_t>(num_nodes), 0);
  hg.incident_.resize(static_cast<std::size_t>(num_nodes));
  hg.edge_degrees_.reserve(edges.size());

  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& members = edges[e];
    if (members.empty()) {
      throw Error(ErrorCode::EmptyEdge, "hyperedge " + std::to_string(e) + " is empty");
    }
    for (NodeId v : members) {
      if (v < 0 || v >= num_nodes) {
        throw Error(ErrorCode::NodeIdOutOfRange, "hyperedge " + std::to_string(e) +
                                                     " references node " + std::to_string(v));
      }
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw Error(ErrorCode::DuplicateMemberInEdge,
                  "hyperedge " + std::to_string(e) + " repeats a member");
    }
    for (NodeId v : members) {
      ++hg.node_degrees_[static_cast<std::size_t>(v)];
      hg.incident_[static_cast<std::size_t>(v)].push_back(static_cast<Index>(e));
    }
    hg.edge_degrees_.push_back(static_cast<int>(members.size()));
    hg.num_incidences_ += static_cast<Index>(members.size());
  }
  hg.edges_ = std::move(edges);
  return hg;
}

SparseMatrix Hypergraph::incidence() const {
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(static_cast<std::size_t>(num_incidences_));
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (NodeId v : edges_[e]) entries.push_back({v, static_cast<Index>(e), 1.0});
  }
  return SparseMatrix::from_entries(num_nodes_, num_edges(), entries);
}

Hypergraph Hypergraph::relabeled(std::span<const NodeId> perm) const {
  if (static_cast<NodeId>(perm.size()) != num_nodes_) {
    throw Error(ErrorCode::ShapeMismatch, "permutation length differs from node count");
  }
  std::vector<std::vector<NodeId>> mapped;
  mapped.reserve(edges_.size());
  for (const auto& members : edges_) {
    std::vector<NodeId> image;
    image.reserve(members.size());
    for (NodeId v : members) image.push_back(perm[static_cast<std::size_t>(v)]);
    mapped.push_back(std::move(image));
  }
  return build(num_nodes_, std::move(mapped));
}

bool Hypergraph::has_isolated_nodes() const {
  return std::find(node_degrees_.begin(), node_degrees_.end(), 0) != node_degrees_.end();
}

Hypergraph Hypergraph::with_isolated_self_loops() const {
  if (!has_isolated_nodes()) return *this;
  auto edges = edges_;
  for (NodeId v = 0; v < num_nodes_; ++v) {
    if (node_degrees_[static_cast<std::size_t>(v)] == 0) edges.push_back({v});
  }
  return build(num_nodes_, std::move(edges));
}

DensityStats density_stats(const Hypergraph& hg) {
  if (hg.num_edges() == 0) throw Error(ErrorCode::NoEdges, "density of an edgeless hypergraph");
  DensityStats s;
  s.mu = 2.0 * static_cast<double>(hg.num_edges()) / static_cast<double>(hg.num_nodes());
  s.mean_edge_size =
      static_cast<double>(hg.num_incidences()) / static_cast<double>(hg.num_edges());
  return s;
}

Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
  auto edges = a.edges();
  for (const auto& members : b.edges()) {
    std::vector<NodeId> shifted;
    shifted.reserve(members.size());
    for (NodeId v : members) shifted.push_back(v + a.num_nodes());
    edges.push_back(std::move(shifted));
  }
  return Hypergraph::build(a.num_nodes() + b.num_nodes(), std::move(edges));
}

std::vector<std::vector<NodeId>> canonical_edges(const Hypergraph& hg) {
  auto edges = hg.edges();
  std::sort(edges.begin(), edges.end());
  return edges;
}

void LabeledHypergraph::validate() const {
  const auto n = static_cast<std::size_t>(hg.num_nodes());
  if (static_cast<std::size_t>(features.rows()) != n) {
    throw Error(ErrorCode::ShapeMismatch, "feature rows (" + std::to_string(features.rows()) +
                                              ") differ from node count (" + std::to_string(n) +
                                              ")");
  }
  if (labels.size() != n || train_mask.size() != n || val_mask.size() != n ||
      test_mask.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "labels and masks must have one entry per node");
  }
  if (num_classes <= 0 && n > 0) throw Error(ErrorCode::ParseError, "num_classes must be positive");
  for (std::size_t v = 0; v < n; ++v) {
    if (labels[v] < 0 || labels[v] >= num_classes) {
      throw Error(ErrorCode::ParseError, "label of node " + std::to_string(v) + " is " +
                                             std::to_string(labels[v]) + ", outside [0, " +
                                             std::to_string(num_classes) + ")");
    }
    const int owners = int(train_mask[v]) + int(val_mask[v]) + int(test_mask[v]);
    if (owners > 1) {
      throw Error(ErrorCode::MaskOverlap, "node " + std::to_string(v) + " is in several splits");
    }
  }
}

}  // namespace dphg
