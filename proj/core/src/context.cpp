#include "dphg/context.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "dphg/error.hpp"

namespace dphg {

namespace {

constexpr char kCacheMagic[8] = {'D', 'P', 'H', 'G', 'C', 'T', 'X', '1'};

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  }
  template <class T>
  void value(T v) {
    bytes(&v, sizeof v);
  }
};

void write_graph(std::ofstream& out, const Graph& g) {
  const auto entries = g.adjacency.entries();
  const std::int64_t header[2] = {static_cast<std::int64_t>(g.num_vertices), static_cast<std::int64_t>(entries.size())};
  out.write(reinterpret_cast<const char*>(header), sizeof header);
  for (const auto& e : entries) {
    const std::int64_t rc[2] = {static_cast<std::int64_t>(e.row), static_cast<std::int64_t>(e.col)};
    out.write(reinterpret_cast<const char*>(rc), sizeof rc);
    out.write(reinterpret_cast<const char*>(&e.value), sizeof e.value);
  }
}

bool read_graph(std::ifstream& in, Index expected_vertices, Graph& g) {
  std::int64_t header[2];
  if (!in.read(reinterpret_cast<char*>(header), sizeof header)) return false;
  if (header[0] != expected_vertices || header[1] < 0) return false;
  std::vector<SparseMatrix::Entry> entries(static_cast<std::size_t>(header[1]));
  for (auto& e : entries) {
    std::int64_t rc[2];
    if (!in.read(reinterpret_cast<char*>(rc), sizeof rc)) return false;
    if (!in.read(reinterpret_cast<char*>(&e.value), sizeof e.value)) return false;
    if (rc[0] < 0 || rc[0] >= header[0] || rc[1] < 0 || rc[1] >= header[0]) return false;
    e.row = rc[0];
    e.col = rc[1];
  }
  g.num_vertices = header[0];
  g.adjacency = SparseMatrix::from_entries(g.num_vertices, g.num_vertices, entries);
  g.degrees = g.adjacency.row_sums();
  return true;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, std::uint64_t hash) {
  char name[40];
  std::snprintf(name, sizeof name, "ctx-%016llx.bin", static_cast<unsigned long long>(hash));
  return dir / name;
}

}  // namespace

std::uint64_t content_hash(const Hypergraph& hg, const Matrix& features) {
  Fnv1a f;
  f.value(static_cast<std::int64_t>(hg.num_nodes()));
  f.value(static_cast<std::int64_t>(hg.num_edges()));
  for (const auto& edge : hg.edges()) {
    f.value(static_cast<std::int64_t>(edge.size()));
    for (NodeId v : edge) f.value(v);
  }
  f.value(static_cast<std::int64_t>(features.rows()));
  f.value(static_cast<std::int64_t>(features.cols()));
  for (Index r = 0; r < features.rows(); ++r) {
    for (Index c = 0; c < features.cols(); ++c) f.value(features(r, c));
  }
  return f.h;
}

HypergraphContext HypergraphContext::build(const Hypergraph& input, const Matrix& features) {
  if (features.rows() != input.num_nodes()) {
    throw Error(ErrorCode::ShapeMismatch, "context: feature rows must equal node count");
  }
  Hypergraph hg = input.has_isolated_nodes() ? input.with_isolated_self_loops() : input;
  const std::uint64_t hash = dphg::content_hash(hg, features);
  Graph clique = clique_expand(hg);
  StarGraph star = star_expand(hg);
  Graph hyper = hypergcn_expand(hg, features);
  return assemble(std::move(hg), hash, std::move(clique), std::move(star), std::move(hyper));
}

HypergraphContext HypergraphContext::build_cached(const Hypergraph& input, const Matrix& features,
                                                  const std::filesystem::path& cache_dir, bool* cache_hit) {
  if (features.rows() != input.num_nodes()) {
    throw Error(ErrorCode::ShapeMismatch, "context: feature rows must equal node count");
  }
  Hypergraph hg = input.has_isolated_nodes() ? input.with_isolated_self_loops() : input;
  const std::uint64_t hash = dphg::content_hash(hg, features);
  const auto path = cache_file(cache_dir, hash);
  const Index n = hg.num_nodes();

  std::ifstream in(path, std::ios::binary);
  if (in) {
    char magic[8];
    Graph clique, star_graph, hyper;
    if (in.read(magic, sizeof magic) && std::memcmp(magic, kCacheMagic, sizeof magic) == 0 &&
        read_graph(in, n, clique) && read_graph(in, n + hg.num_edges(), star_graph) && read_graph(in, n, hyper)) {
      if (cache_hit != nullptr) *cache_hit = true;
      StarGraph star;
      star.graph = std::move(star_graph);
      star.num_nodes = n;
      star.num_supernodes = hg.num_edges();
      return assemble(std::move(hg), hash, std::move(clique), std::move(star), std::move(hyper));
    }
  }
  if (cache_hit != nullptr) *cache_hit = false;

  Graph clique = clique_expand(hg);
  StarGraph star = star_expand(hg);
  Graph hyper = hypergcn_expand(hg, features);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write cache file " + path.string());
  out.write(kCacheMagic, sizeof kCacheMagic);
  write_graph(out, clique);
  write_graph(out, star.graph);
  write_graph(out, hyper);
  return assemble(std::move(hg), hash, std::move(clique), std::move(star), std::move(hyper));
}

HypergraphContext HypergraphContext::assemble(Hypergraph hg, std::uint64_t hash, Graph clique, StarGraph star,
                                              Graph hyper) {
  HypergraphContext ctx;
  ctx.hg = std::move(hg);
  ctx.content_hash = hash;
  ctx.clique = std::move(clique);
  ctx.star = std::move(star);
  ctx.hyper = std::move(hyper);

  const Index n = ctx.hg.num_nodes();
  const Index m = ctx.hg.num_edges();
  ctx.incidence = ctx.hg.incidence();
  ctx.sib = SibOperators::build(ctx.hg);

  Vector de_inv(m);
  for (Index e = 0; e < m; ++e) de_inv[e] = 1.0 / static_cast<double>(ctx.hg.edge_degrees()[static_cast<std::size_t>(e)]);
  Vector dv_inv_sqrt(n);
  for (Index v = 0; v < n; ++v) {
    dv_inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(ctx.hg.node_degrees()[static_cast<std::size_t>(v)]));
  }
  const SparseMatrix ht = ctx.incidence.transpose();

  // Supernodes start from the mean of their members.
  std::vector<SparseMatrix::Entry> lift;
  for (Index v = 0; v < n; ++v) lift.push_back({v, v, 1.0});
  for (const auto& e : ht.scale_rows(de_inv).entries()) lift.push_back({n + e.row, e.col, e.value});
  const SparseMatrix star_lift = SparseMatrix::from_entries(n + m, n, lift);

  ctx.prop_clique = propagation_operator(ctx.clique, UpdateVariant::ResidualRW);
  ctx.prop_star_lift = propagation_operator(ctx.star.graph, UpdateVariant::ResidualRW) * star_lift;
  ctx.prop_hyp = propagation_operator(ctx.hyper, UpdateVariant::SymNorm);

  ctx.lap_clique = graph_laplacian(ctx.clique);
  const auto node_rows = row_selector(RowTarget::NodeRows, ctx.star);
  ctx.lap_star_nodes = graph_laplacian(ctx.star.graph).select_rows(node_rows);
  ctx.lap_hyp = graph_laplacian(ctx.hyper);

  ctx.attention = AttentionNeighborhoods::from_graph(ctx.clique);

  ctx.fuse_nodes = ht.scale_cols(dv_inv_sqrt);
  const auto super_rows = row_selector(RowTarget::SupernodeRows, ctx.star);
  ctx.fuse_star = ctx.star.graph.adjacency.select_rows(super_rows).scale_rows(de_inv);
  ctx.expand = ctx.incidence.scale_cols(de_inv);
  return ctx;
}

}  // namespace dphg
