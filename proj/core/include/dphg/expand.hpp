#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dphg/hypergraph.hpp"
#include "dphg/sparse.hpp"

namespace dphg {

// Undirected weighted graph: symmetric adjacency with zero diagonal.
struct Graph {
  Index num_vertices = 0;
  SparseMatrix adjacency;
  Vector degrees;  // weighted row sums of the adjacency

  struct WeightedEdge {
    Index u;
    Index v;
    double weight;
  };

  // Accumulates weights of repeated pairs. Self-pairs are rejected.
  static Graph from_edges(Index num_vertices, std::span<const WeightedEdge> edges);

  // Pairs (u, v) with u < v and their weights, in row-major order.
  std::vector<WeightedEdge> edge_list() const;

  // Neighbors of v, ascending.
  std::vector<Index> neighbors(Index v) const;
};

// Star expansion over n + m vertices: rows [0, n) are the original hypernodes,
// row n + e is the supernode of hyperedge e.
struct StarGraph {
  Graph graph;
  Index num_nodes = 0;
  Index num_supernodes = 0;

  Index supernode_of(Index edge) const { return num_nodes + edge; }
};

// u != v adjacent iff some hyperedge contains both. Unweighted.
Graph clique_expand(const Hypergraph& hg);

StarGraph star_expand(const Hypergraph& hg);

// One representative pair per hyperedge: the member pair with the largest
// feature distance, ties broken towards the lexicographically smallest pair.
// Weight 1/(2|e|-3), accumulated across hyperedges; singleton edges add nothing.
Graph hypergcn_expand(const Hypergraph& hg, const Matrix& features);

enum class RowTarget { NodeRows, SupernodeRows };

std::vector<Index> row_selector(RowTarget target, const StarGraph& star);

// Keeps the rows of a star-aligned (n + m) x d matrix that belong to `target`,
// in order. Throws ShapeMismatch for a misaligned matrix.
Matrix row_mask(const Matrix& m, RowTarget target, const StarGraph& star);

}  // namespace dphg
