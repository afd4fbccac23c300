#include <algorithm>

#include <benchmark/benchmark.h>

#include "dphg/context.hpp"
#include "dphg/gwl.hpp"
#include "dphg/model.hpp"
#include "dphg/ops.hpp"
#include "dphg/spectral.hpp"
#include "dphg/synthetic.hpp"

using namespace dphg;

namespace {

// n nodes, m edges of size 3..5. The first edges cover every node once so
// the structure never has isolated nodes, whatever m is.
Hypergraph covering_hypergraph(NodeId n, Index m, Rng& rng) {
  std::vector<std::vector<NodeId>> edges;
  const auto order = rng.permutation(n);
  for (NodeId i = 0; i < n; i += 4) {
    std::vector<NodeId> e;
    for (NodeId j = i; j < std::min(n, i + 4); ++j) e.push_back(order[static_cast<std::size_t>(j)]);
    edges.push_back(std::move(e));
  }
  while (static_cast<Index>(edges.size()) < m) {
    const int k = 3 + static_cast<int>(rng.below(3));
    std::vector<NodeId> e;
    while (static_cast<int>(e.size()) < k) {
      const auto v = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
      if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
    }
    edges.push_back(std::move(e));
  }
  return build_hypergraph(n, std::move(edges));
}

Matrix random_features(Index rows, Index cols, Rng& rng) {
  Matrix x(rows, cols);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform(-1.0, 1.0);
  return x;
}

void BM_LaplacianHgnn(benchmark::State& state) {
  Rng rng(1);
  const Hypergraph hg = covering_hypergraph(static_cast<NodeId>(state.range(0)), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian_hgnn(hg));
}
BENCHMARK(BM_LaplacianHgnn)->Arg(100)->Arg(400)->Arg(1600);

void BM_ContextBuild(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<NodeId>(state.range(0));
  const Hypergraph hg = covering_hypergraph(n, n, rng);
  const Matrix x = random_features(n, 16, rng);
  for (auto _ : state) benchmark::DoNotOptimize(HypergraphContext::build(hg, x));
}
BENCHMARK(BM_ContextBuild)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_DphgnnForward(benchmark::State& state) {
  Rng rng(3);
  const Hypergraph hg = covering_hypergraph(400, state.range(0), rng);
  const Matrix x = random_features(400, 32, rng);
  const HypergraphContext ctx = HypergraphContext::build(hg, x);
  ModelConfig cfg;
  cfg.input_dim = 32;
  const auto params = init_dphgnn_params(cfg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dphgnn_forward(ctx, x, params, cfg));
  state.counters["edges"] = static_cast<double>(state.range(0));
}
BENCHMARK(BM_DphgnnForward)->Arg(100)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_DffLayer(benchmark::State& state) {
  Rng rng(4);
  const Hypergraph hg = covering_hypergraph(400, state.range(0), rng);
  const HypergraphContext ctx = HypergraphContext::build(hg, random_features(400, 8, rng));
  const Matrix xs = random_features(400, 64, rng);
  const Matrix xg = random_features(400 + ctx.num_edges(), 64, rng);
  const Matrix theta = random_features(64, 64, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dff_forward(ctx, xs, xg, theta));
}
BENCHMARK(BM_DffLayer)->Arg(100)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMicrosecond);

void BM_TrainStep(benchmark::State& state) {
  Rng rng(5);
  const Hypergraph hg = covering_hypergraph(400, 400, rng);
  const Matrix x = random_features(400, 32, rng);
  const HypergraphContext ctx = HypergraphContext::build(hg, x);
  ModelConfig cfg;
  cfg.input_dim = 32;
  const auto params = init_dphgnn_params(cfg, rng);
  std::vector<int> labels(400);
  for (auto& l : labels) l = static_cast<int>(rng.below(2));
  const Mask mask(400, true);
  Rng drop(6);
  for (auto _ : state) {
    nn::Tape tape;
    nn::ParamBinding p(tape, params);
    const auto v = nn::dphgnn_forward(ctx, tape.constant(x), p, cfg, {true, &drop});
    tape.backward(nn::cross_entropy(v.logits, labels, mask));
    benchmark::DoNotOptimize(p.gradients());
  }
}
BENCHMARK(BM_TrainStep)->Unit(benchmark::kMillisecond);

void BM_ColorRefine(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<NodeId>(state.range(0));
  const Hypergraph hg = covering_hypergraph(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(color_refine(hg));
}
BENCHMARK(BM_ColorRefine)->Arg(100)->Arg(1000);

void BM_BruteForceIsomorphism(benchmark::State& state) {
  const auto pair = generate_noniso_pair(NonIsoPairSpec{10, 2}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_isomorphic(pair.a, pair.b));
}
BENCHMARK(BM_BruteForceIsomorphism)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
