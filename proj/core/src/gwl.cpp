#include "dphg/gwl.hpp"

#include <algorithm>
#include <utility>

#include "dphg/error.hpp"

namespace dphg {

namespace {

using Signature = std::pair<int, std::vector<std::vector<int>>>;

std::map<int, int> histogram_of(const std::vector<int>& colors, std::size_t begin, std::size_t end) {
  std::map<int, int> h;
  for (std::size_t i = begin; i < end; ++i) ++h[colors[i]];
  return h;
}

}  // namespace

ColoringState ColoringState::uniform(NodeId num_nodes) {
  ColoringState s;
  s.colors.assign(static_cast<std::size_t>(num_nodes), 0);
  return s;
}

int ColoringState::num_colors() const {
  std::vector<int> c = colors;
  std::sort(c.begin(), c.end());
  return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
}

std::map<int, int> ColoringState::histogram() const { return histogram_of(colors, 0, colors.size()); }

ColoringState color_refine_step(const Hypergraph& hg, const ColoringState& state) {
  const auto n = static_cast<std::size_t>(hg.num_nodes());
  if (state.colors.size() != n) throw Error(ErrorCode::ShapeMismatch, "coloring length must equal node count");

  std::vector<std::vector<int>> edge_colors(hg.edges().size());
  for (std::size_t e = 0; e < edge_colors.size(); ++e) {
    for (NodeId u : hg.edges()[e]) edge_colors[e].push_back(state.colors[static_cast<std::size_t>(u)]);
    std::sort(edge_colors[e].begin(), edge_colors[e].end());
  }
  std::vector<Signature> signatures(n);
  for (std::size_t v = 0; v < n; ++v) {
    signatures[v].first = state.colors[v];
    for (Index e : hg.incident_edges(static_cast<NodeId>(v))) {
      signatures[v].second.push_back(edge_colors[static_cast<std::size_t>(e)]);
    }
    std::sort(signatures[v].second.begin(), signatures[v].second.end());
  }
  std::vector<Signature> distinct = signatures;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  ColoringState next;
  next.round = state.round + 1;
  next.colors.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    next.colors[v] =
        static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), signatures[v]) - distinct.begin());
  }
  return next;
}

ColoringState color_refine(const Hypergraph& hg, int max_rounds) {
  ColoringState state = ColoringState::uniform(hg.num_nodes());
  const int limit = max_rounds < 0 ? static_cast<int>(hg.num_nodes()) : max_rounds;
  int classes = state.num_colors();
  while (state.round < limit) {
    ColoringState next = color_refine_step(hg, state);
    const int next_classes = next.num_colors();
    const bool stable = next_classes == classes;
    state = std::move(next);
    classes = next_classes;
    if (stable) break;
  }
  return state;
}

const char* to_string(GwlOutcome outcome) {
  return outcome == GwlOutcome::Distinguished ? "Distinguished" : "PossiblyIsomorphic";
}

GwlVerdict gwl_test(const Hypergraph& a, const Hypergraph& b, int max_rounds) {
  GwlVerdict verdict;
  if (a.num_nodes() != b.num_nodes()) {
    verdict.outcome = GwlOutcome::Distinguished;
    return verdict;
  }
  const Hypergraph joint = disjoint_union(a, b);
  const auto split = static_cast<std::size_t>(a.num_nodes());
  const std::size_t total = static_cast<std::size_t>(joint.num_nodes());
  const int limit = max_rounds < 0 ? static_cast<int>(joint.num_nodes()) : max_rounds;

  ColoringState state = ColoringState::uniform(joint.num_nodes());
  int classes = state.num_colors();
  while (state.round < limit) {
    state = color_refine_step(joint, state);
    verdict.rounds_used = state.round;
    if (histogram_of(state.colors, 0, split) != histogram_of(state.colors, split, total)) {
      verdict.outcome = GwlOutcome::Distinguished;
      return verdict;
    }
    const int next_classes = state.num_colors();
    if (next_classes == classes) break;
    classes = next_classes;
  }
  verdict.outcome = GwlOutcome::PossiblyIsomorphic;
  return verdict;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Hypergraph& a, const Hypergraph& b) : a_(a), b_(b) {
    const auto n = static_cast<std::size_t>(a.num_nodes());
    map_.assign(n, -1);
    used_.assign(n, false);
    target_edges_ = canonical_edges(b);
    // Map high-degree nodes first; they constrain the search most.
    order_.resize(n);
    for (std::size_t i = 0; i < n; ++i) order_[i] = static_cast<NodeId>(i);
    std::stable_sort(order_.begin(), order_.end(), [&](NodeId x, NodeId y) {
      return a.node_degrees()[static_cast<std::size_t>(x)] > a.node_degrees()[static_cast<std::size_t>(y)];
    });
  }

  bool run() { return extend(0); }

 private:
  bool extend(std::size_t depth) {
    if (depth == order_.size()) return images_match();
    const NodeId v = order_[depth];
    const int deg = a_.node_degrees()[static_cast<std::size_t>(v)];
    for (NodeId t = 0; t < b_.num_nodes(); ++t) {
      if (used_[static_cast<std::size_t>(t)] || b_.node_degrees()[static_cast<std::size_t>(t)] != deg) continue;
      map_[static_cast<std::size_t>(v)] = t;
      used_[static_cast<std::size_t>(t)] = true;
      if (partial_ok(v) && extend(depth + 1)) return true;
      used_[static_cast<std::size_t>(t)] = false;
      map_[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }

  std::vector<NodeId> image(std::span<const NodeId> edge) const {
    std::vector<NodeId> out;
    for (NodeId u : edge) out.push_back(map_[static_cast<std::size_t>(u)]);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Every fully mapped edge through v must land on some edge of b.
  bool partial_ok(NodeId v) const {
    for (Index e : a_.incident_edges(v)) {
      const auto edge = a_.edge(e);
      const bool complete = std::all_of(edge.begin(), edge.end(), [&](NodeId u) { return map_[static_cast<std::size_t>(u)] >= 0; });
      if (complete && !std::binary_search(target_edges_.begin(), target_edges_.end(), image(edge))) return false;
    }
    return true;
  }

  bool images_match() const {
    std::vector<std::vector<NodeId>> mapped;
    for (const auto& edge : a_.edges()) mapped.push_back(image(edge));
    std::sort(mapped.begin(), mapped.end());
    return mapped == target_edges_;
  }

  const Hypergraph& a_;
  const Hypergraph& b_;
  std::vector<NodeId> map_;
  std::vector<bool> used_;
  std::vector<NodeId> order_;
  std::vector<std::vector<NodeId>> target_edges_;
};

}  // namespace

bool brute_force_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.num_nodes() > 10 || b.num_nodes() > 10) {
    throw Error(ErrorCode::TooLarge, "brute-force isomorphism is limited to 10 nodes");
  }
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) return false;
  auto da = a.node_degrees();
  auto db = b.node_degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  auto ea = a.edge_degrees();
  auto eb = b.edge_degrees();
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  if (ea != eb) return false;
  return IsoSearch(a, b).run();
}

}  // namespace dphg
