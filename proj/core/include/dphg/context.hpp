#pragma once

#include <cstdint>
#include <filesystem>

#include "dphg/expand.hpp"
#include "dphg/hypergraph.hpp"
#include "dphg/spectral.hpp"
#include "dphg/taa.hpp"

namespace dphg {

// Every structure a forward pass needs, derived once per dataset. Ops recorded
// on a tape keep pointers into this object, so it must stay put while a tape
// built from it is alive.
// FNV-1a over the hyperedge lists and the raw feature bits.
std::uint64_t content_hash(const Hypergraph& hg, const Matrix& features);

class HypergraphContext {
 public:
  // Nodes of degree zero receive a singleton hyperedge before anything is
  // derived. `features` only feeds the HyperGCN expansion.
  static HypergraphContext build(const Hypergraph& hg, const Matrix& features);

  // Same result; the three graph expansions are read from / written to
  // `cache_dir` under a content hash of (hypergraph, features).
  static HypergraphContext build_cached(const Hypergraph& hg, const Matrix& features,
                                        const std::filesystem::path& cache_dir, bool* cache_hit = nullptr);

  Index num_nodes() const { return hg.num_nodes(); }
  Index num_edges() const { return hg.num_edges(); }

  Hypergraph hg;
  std::uint64_t content_hash = 0;

  SparseMatrix incidence;  // n x m
  SibOperators sib;        // sib.hgnn doubles as the HGNN convolution operator

  Graph clique;
  StarGraph star;
  Graph hyper;

  SparseMatrix prop_clique;     // I + D^{-1} A_c
  SparseMatrix prop_star_lift;  // (I + D^{-1} A_*) [I ; De^{-1} H^T], (n + m) x n
  SparseMatrix prop_hyp;        // symmetric normalization with self-loops

  SparseMatrix lap_clique;
  SparseMatrix lap_star_nodes;  // node rows of L_*, n x (n + m)
  SparseMatrix lap_hyp;

  AttentionNeighborhoods attention;

  SparseMatrix fuse_nodes;  // H^T Dv^{-1/2}, m x n
  SparseMatrix fuse_star;   // De^{-1} (supernode rows of A_*), m x (n + m)
  SparseMatrix expand;      // H De^{-1}, n x m

 private:
  static HypergraphContext assemble(Hypergraph hg, std::uint64_t hash, Graph clique, StarGraph star, Graph hyper);
};

}  // namespace dphg
