#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "dphg/gwl.hpp"
#include "dphg/synthetic.hpp"
#include "expect_error.hpp"

using namespace dphg;

namespace {

void expect_partition(const LabeledHypergraph& d) {
  for (std::size_t v = 0; v < d.labels.size(); ++v) {
    const int count = d.train_mask[v] + d.val_mask[v] + d.test_mask[v];
    EXPECT_EQ(count, 1) << "node " << v;
  }
}

}  // namespace

TEST(Synthetic, PlantedIsDeterministicPerSeed) {
  const PlantedSpec spec;
  const auto a = generate_planted(spec, 5);
  const auto b = generate_planted(spec, 5);
  const auto c = generate_planted(spec, 6);
  EXPECT_EQ(a.hg, b.hg);
  EXPECT_EQ(a.features, b.features);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_FALSE(a.hg == c.hg);
}

TEST(Synthetic, PlantedShape) {
  PlantedSpec spec;
  spec.num_nodes = 120;
  spec.num_classes = 3;
  spec.num_edges = 90;
  const auto d = generate_planted(spec, 1);
  EXPECT_NO_THROW(d.validate());
  EXPECT_EQ(d.hg.num_nodes(), 120);
  EXPECT_EQ(d.hg.num_edges(), 90);
  EXPECT_EQ(d.num_classes, 3);
  for (int s : d.hg.edge_degrees()) EXPECT_EQ(s, spec.edge_size);
  expect_partition(d);
}

TEST(Synthetic, PlantedEdgesAreMostlyHomophilous) {
  PlantedSpec spec;
  spec.p_out = 0.0;
  const auto d = generate_planted(spec, 2);
  for (const auto& e : d.hg.edges()) {
    for (NodeId v : e) EXPECT_EQ(d.labels[static_cast<std::size_t>(v)], d.labels[static_cast<std::size_t>(e[0])]);
  }
}

TEST(Synthetic, StratifiedSplitPerClass) {
  PlantedSpec spec;
  spec.num_nodes = 200;
  spec.split = {0.5, 0.25, 0.25};
  const auto d = generate_planted(spec, 3);
  for (int c = 0; c < d.num_classes; ++c) {
    int total = 0, train = 0;
    for (std::size_t v = 0; v < d.labels.size(); ++v) {
      if (d.labels[v] != c) continue;
      ++total;
      train += d.train_mask[v];
    }
    EXPECT_NEAR(train, 0.5 * total, 1.0);
  }
}

TEST(Synthetic, CortoIsUniformAndImbalanced) {
  CortoSpec spec;
  spec.num_nodes = 300;
  const auto d = generate_corto(spec, 4);
  EXPECT_NO_THROW(d.validate());
  for (int s : d.hg.edge_degrees()) EXPECT_EQ(s, spec.edge_size);
  const long pos = std::count(d.labels.begin(), d.labels.end(), 1);
  EXPECT_EQ(pos, std::lround(spec.positive_fraction * 300));
}

TEST(Synthetic, IsoPairIsIsomorphic) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pair = generate_iso_pair(IsoPairSpec{}, seed);
    EXPECT_TRUE(pair.is_isomorphic);
    EXPECT_TRUE(brute_force_isomorphic(pair.a, pair.b)) << "seed " << seed;
  }
}

TEST(Synthetic, NonIsoPairFoolsRefinement) {
  const auto pair = generate_noniso_pair(NonIsoPairSpec{}, 0);
  EXPECT_FALSE(pair.is_isomorphic);
  EXPECT_FALSE(brute_force_isomorphic(pair.a, pair.b));
  EXPECT_EQ(gwl_test(pair.a, pair.b).outcome, GwlOutcome::PossiblyIsomorphic);
  EXPECT_EQ(pair.a.num_edges(), pair.b.num_edges());
}

TEST(Synthetic, IsoPoolLayout) {
  IsoPoolSpec spec;
  spec.num_instances = 20;
  const IsoPool pool = generate_iso_pool(spec, 9);
  EXPECT_NO_THROW(pool.data.validate());
  ASSERT_EQ(pool.instances.size(), 20u);
  NodeId total = 0;
  for (std::size_t i = 0; i < pool.instances.size(); ++i) {
    EXPECT_EQ(pool.instance_offsets[i], total);
    const NodeId n = pool.instances[i].num_nodes();
    for (NodeId v = 0; v < n; ++v) {
      EXPECT_EQ(pool.data.labels[static_cast<std::size_t>(total + v)], pool.instance_labels[i]);
    }
    EXPECT_EQ(brute_force_isomorphic(pool.instances[i], pool.references[i]), pool.instance_labels[i] == 1);
    total += n;
  }
  EXPECT_EQ(pool.data.hg.num_nodes(), total);
  EXPECT_EQ(std::count(pool.instance_labels.begin(), pool.instance_labels.end(), 1), 10);
}

TEST(Synthetic, RingsAndOneHot) {
  const Hypergraph ring = uniform_ring(5, 3);
  EXPECT_EQ(ring.num_edges(), 5);
  for (int d : ring.node_degrees()) EXPECT_EQ(d, 3);
  EXPECT_EQ(one_hot_features(3), Matrix::Identity(3, 3));
}

TEST(Synthetic, InfeasibleSpecs) {
  PlantedSpec planted;
  planted.edge_size = 500;
  EXPECT_DPHG_ERROR(generate_planted(planted, 0), ErrorCode::InfeasibleSpec);
  planted = PlantedSpec{};
  planted.split = {0.5, 0.5, 0.5};
  EXPECT_DPHG_ERROR(generate_planted(planted, 0), ErrorCode::InfeasibleSpec);
  EXPECT_DPHG_ERROR(generate_noniso_pair(NonIsoPairSpec{.num_nodes = 8, .edge_size = 4}, 0),
                    ErrorCode::InfeasibleSpec);
  IsoPoolSpec pool;
  pool.sizes.clear();
  EXPECT_DPHG_ERROR(generate_iso_pool(pool, 0), ErrorCode::InfeasibleSpec);
}

TEST(Synthetic, GeneratorSpecParsing) {
  const auto spec = parse_generator_spec(R"({"kind": "planted", "num_nodes": 50, "p_out": 0.1})");
  ASSERT_TRUE(std::holds_alternative<PlantedSpec>(spec));
  EXPECT_EQ(std::get<PlantedSpec>(spec).num_nodes, 50);
  EXPECT_DOUBLE_EQ(std::get<PlantedSpec>(spec).p_out, 0.1);
  EXPECT_DPHG_ERROR(parse_generator_spec(R"({"kind": "nope"})"), ErrorCode::ParseError);
  EXPECT_DPHG_ERROR(parse_generator_spec(R"({"kind": "planted", "num_nodes": "x"})"), ErrorCode::ParseError);
  const auto pool = parse_generator_spec(R"({"kind": "iso_pool", "sizes": [6, 8]})");
  EXPECT_EQ(std::get<IsoPoolSpec>(pool).sizes, (std::vector<NodeId>{6, 8}));
}
