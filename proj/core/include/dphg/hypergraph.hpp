#pragma once

#include <span>
#include <vector>

#include "dphg/sparse.hpp"
#include "dphg/types.hpp"

namespace dphg {

// Immutable undirected hypergraph. Every hyperedge is a nonempty set of
// hypernode ids in [0, n), stored with members sorted ascending. Degree vectors
// and per-node incidence lists are computed once at construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Validates and builds. Throws EmptyEdge, NodeIdOutOfRange or
  // DuplicateMemberInEdge.
  static Hypergraph build(NodeId num_nodes, std::vector<std::vector<NodeId>> edges);

  NodeId num_nodes() const { return num_nodes_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  Index num_incidences() const { return num_incidences_; }

  std::span<const NodeId> edge(Index e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<std::vector<NodeId>>& edges() const { return edges_; }

  // Ids of the hyperedges containing v, ascending.
  std::span<const Index> incident_edges(NodeId v) const {
    return incident_[static_cast<std::size_t>(v)];
  }

  const std::vector<int>& node_degrees() const { return node_degrees_; }
  const std::vector<int>& edge_degrees() const { return edge_degrees_; }

  // H[v, e] = 1 iff v is a member of e.
  SparseMatrix incidence() const;

  // Image under the node relabeling v -> perm[v]. Edge order is preserved.
  Hypergraph relabeled(std::span<const NodeId> perm) const;

  // Adds a singleton hyperedge {v} for every node of degree zero.
  Hypergraph with_isolated_self_loops() const;

  bool has_isolated_nodes() const;

  bool operator==(const Hypergraph& other) const {
    return num_nodes_ == other.num_nodes_ && edges_ == other.edges_;
  }

 private:
  NodeId num_nodes_ = 0;
  Index num_incidences_ = 0;
  std::vector<std::vector<NodeId>> edges_;
  std::vector<std::vector<Index>> incident_;
  std::vector<int> node_degrees_;
  std::vector<int> edge_degrees_;
};

inline Hypergraph build_hypergraph(NodeId num_nodes, std::vector<std::vector<NodeId>> edges) {
  return Hypergraph::build(num_nodes, std::move(edges));
}

inline SparseMatrix incidence(const Hypergraph& hg) { return hg.incidence(); }

// mu = 2|E| / |V| (average hyperedge density) and M = mean hyperedge size.
struct DensityStats {
  double mu = 0.0;
  double mean_edge_size = 0.0;
};

DensityStats density_stats(const Hypergraph& hg);

// Disjoint union; nodes of `b` are shifted by a.num_nodes().
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b);

// Edge multiset in canonical (sorted) order, for structural comparisons.
std::vector<std::vector<NodeId>> canonical_edges(const Hypergraph& hg);

struct LabeledHypergraph {
  Hypergraph hg;
  Matrix features;
  std::vector<int> labels;
  int num_classes = 0;
  Mask train_mask;
  Mask val_mask;
  Mask test_mask;

  // Throws ShapeMismatch, ParseError (label out of range) or MaskOverlap.
  void validate() const;

  Index feature_dim() const { return features.cols(); }
};

}  // namespace dphg
