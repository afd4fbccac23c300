#pragma once

// Brute-force reference constructions for tests. Everything here is written
// with plain loops over std::vector so that it shares no code path with the
// sparse implementations under test.

#include <cstdint>
#include <functional>
#include <vector>

#include "dphg/hypergraph.hpp"
#include "dphg/rng.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;
using EdgeList = std::vector<std::vector<dphg::NodeId>>;

Dense zeros(std::size_t rows, std::size_t cols);
Dense identity(std::size_t n);
Dense multiply(const Dense& a, const Dense& b);
Dense transpose(const Dense& a);
Dense add(const Dense& a, const Dense& b);
Dense subtract(const Dense& a, const Dense& b);
Dense from_matrix(const dphg::Matrix& m);
double max_abs_diff(const Dense& a, const Dense& b);
double max_abs_diff(const dphg::Matrix& a, const Dense& b);

Dense incidence(int n, const EdgeList& edges);

// Straight evaluations of the matrix-product definitions.
Dense laplacian_hgnn(int n, const EdgeList& edges);
Dense laplacian_sym(int n, const EdgeList& edges);
Dense laplacian_rw(int n, const EdgeList& edges);
Dense random_walk(int n, const EdgeList& edges);  // Dv^-1 H De^-1 H^T

// Adjacency by scanning every node pair against every edge.
Dense clique_adjacency(int n, const EdgeList& edges);
Dense star_adjacency(int n, const EdgeList& edges);
// All member pairs ranked by (-distance, i, j); weight 1/(2|e|-3).
Dense hypergcn_adjacency(int n, const EdgeList& edges, const dphg::Matrix& x);
Dense graph_laplacian(const Dense& adjacency);

// Calls f(n, edges) for every hypergraph on n nodes (n in [1, max_nodes]) whose
// edge set has at most max_edges distinct nonempty edges.
void for_each_hypergraph(int max_nodes, int max_edges, const std::function<void(int, const EdgeList&)>& f);

dphg::Hypergraph random_hypergraph(dphg::Rng& rng, int n, int m, int max_edge_size, bool cover_all_nodes);
dphg::Matrix random_matrix(dphg::Rng& rng, dphg::Index rows, dphg::Index cols, double scale = 1.0);

// out.row(perm[i]) = in.row(i)
dphg::Matrix permute_rows(const dphg::Matrix& in, const std::vector<dphg::NodeId>& perm);
std::vector<int> permute_values(const std::vector<int>& in, const std::vector<dphg::NodeId>& perm);

}  // namespace oracle
