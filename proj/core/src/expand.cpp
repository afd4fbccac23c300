#include "dphg/expand.hpp"

#include <algorithm>

#include "dphg/error.hpp"

namespace dphg {

Graph Graph::from_edges(Index num_vertices, std::span<const WeightedEdge> edges) {
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(2 * edges.size());
  for (const auto& e : edges) {
    if (e.u == e.v) throw Error(ErrorCode::ShapeMismatch, "graphs carry no self-loops");
    entries.push_back({e.u, e.v, e.weight});
    entries.push_back({e.v, e.u, e.weight});
  }
  Graph g;
  g.num_vertices = num_vertices;
  g.adjacency = SparseMatrix::from_entries(num_vertices, num_vertices, entries);
  g.degrees = g.adjacency.row_sums();
  return g;
}

std::vector<Graph::WeightedEdge> Graph::edge_list() const {
  std::vector<WeightedEdge> out;
  for (Index u = 0; u < num_vertices; ++u) {
    adjacency.for_each_in_row(u, [&](Index v, double w) {
      if (u < v) out.push_back({u, v, w});
    });
  }
  return out;
}

std::vector<Index> Graph::neighbors(Index v) const {
  std::vector<Index> out;
  adjacency.for_each_in_row(v, [&](Index u, double) { out.push_back(u); });
  return out;
}

Graph clique_expand(const Hypergraph& hg) {
  std::vector<SparseMatrix::Entry> entries;
  for (const auto& members : hg.edges()) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (i != j) entries.push_back({members[i], members[j], 1.0});
      }
    }
  }
  // Pairs shared by several hyperedges are summed here, then reset to 1.
  SparseMatrix summed = SparseMatrix::from_entries(hg.num_nodes(), hg.num_nodes(), entries);
  auto unit = summed.entries();
  for (auto& e : unit) e.value = 1.0;
  Graph g;
  g.num_vertices = hg.num_nodes();
  g.adjacency = SparseMatrix::from_entries(g.num_vertices, g.num_vertices, unit);
  g.degrees = g.adjacency.row_sums();
  return g;
}

StarGraph star_expand(const Hypergraph& hg) {
  const Index n = hg.num_nodes();
  const Index m = hg.num_edges();
  std::vector<Graph::WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(hg.num_incidences()));
  for (Index e = 0; e < m; ++e) {
    for (NodeId v : hg.edge(e)) edges.push_back({v, n + e, 1.0});
  }
  StarGraph star;
  star.num_nodes = n;
  star.num_supernodes = m;
  star.graph = Graph::from_edges(n + m, edges);
  return star;
}

Graph hypergcn_expand(const Hypergraph& hg, const Matrix& features) {
  if (features.rows() != hg.num_nodes()) {
    throw Error(ErrorCode::ShapeMismatch, "hypergcn_expand: feature rows must equal node count");
  }
  std::vector<Graph::WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(hg.num_edges()));
  for (const auto& members : hg.edges()) {
    const std::size_t k = members.size();
    if (k < 2) continue;
    // Members are sorted, so scanning i < j in order and keeping strict
    // improvements yields the lexicographically smallest maximizer.
    NodeId best_i = members[0];
    NodeId best_j = members[1];
    double best = -1.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const double dist = (features.row(members[i]) - features.row(members[j])).squaredNorm();
        if (dist > best) {
          best = dist;
          best_i = members[i];
          best_j = members[j];
        }
      }
    }
    const double weight = 1.0 / (2.0 * static_cast<double>(k) - 3.0);
    edges.push_back({best_i, best_j, weight});
  }
  return Graph::from_edges(hg.num_nodes(), edges);
}

std::vector<Index> row_selector(RowTarget target, const StarGraph& star) {
  std::vector<Index> rows;
  if (target == RowTarget::NodeRows) {
    rows.resize(static_cast<std::size_t>(star.num_nodes));
    for (Index i = 0; i < star.num_nodes; ++i) rows[static_cast<std::size_t>(i)] = i;
  } else {
    rows.resize(static_cast<std::size_t>(star.num_supernodes));
    for (Index e = 0; e < star.num_supernodes; ++e) rows[static_cast<std::size_t>(e)] = star.supernode_of(e);
  }
  return rows;
}

Matrix row_mask(const Matrix& m, RowTarget target, const StarGraph& star) {
  if (m.rows() != star.num_nodes + star.num_supernodes) {
    throw Error(ErrorCode::ShapeMismatch, "row_mask: matrix must have n + m rows");
  }
  const auto rows = row_selector(target, star);
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

}  // namespace dphg
