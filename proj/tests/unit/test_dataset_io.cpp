#include <gtest/gtest.h>

#include <filesystem>

#include "dphg/dataset_io.hpp"
#include "dphg/synthetic.hpp"
#include "expect_error.hpp"

using namespace dphg;

namespace {

LabeledHypergraph tiny() {
  LabeledHypergraph d;
  d.hg = build_hypergraph(3, {{0, 1}, {1, 2}});
  d.features = (Matrix(3, 2) << 0.1, 1.0 / 3.0, -2.5, 1e-300, 7.0, 0.0).finished();
  d.labels = {0, 1, 1};
  d.num_classes = 2;
  d.train_mask = {true, false, false};
  d.val_mask = {false, true, false};
  d.test_mask = {false, false, true};
  return d;
}

}  // namespace

TEST(DatasetIo, RoundTripIsBitExact) {
  const LabeledHypergraph d = tiny();
  const LabeledHypergraph back = parse_dataset(dump_dataset(d));
  EXPECT_EQ(back.hg, d.hg);
  EXPECT_EQ(back.features, d.features);
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_EQ(back.num_classes, d.num_classes);
  EXPECT_EQ(back.train_mask, d.train_mask);
  EXPECT_EQ(back.val_mask, d.val_mask);
  EXPECT_EQ(back.test_mask, d.test_mask);
}

TEST(DatasetIo, GeneratedDatasetRoundTripsThroughFile) {
  const LabeledHypergraph d = generate_planted(PlantedSpec{.num_nodes = 40}, 3);
  const auto path = std::filesystem::temp_directory_path() / "dphg_dataset_io_test.json";
  save_dataset(d, path);
  const LabeledHypergraph back = load_dataset(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.hg, d.hg);
  EXPECT_EQ(back.features, d.features);
  EXPECT_EQ(back.labels, d.labels);
}

TEST(DatasetIo, NumClassesDefaultsToMaxLabelPlusOne) {
  const auto d = parse_dataset(R"({"num_nodes": 2, "hyperedges": [[0, 1]], "features": [[1], [2]],
    "labels": [0, 4], "train_mask": [true, false], "val_mask": [false, false], "test_mask": [false, true]})");
  EXPECT_EQ(d.num_classes, 5);
}

TEST(DatasetIo, Errors) {
  EXPECT_DPHG_ERROR(parse_dataset("{"), ErrorCode::ParseError);
  EXPECT_DPHG_ERROR(parse_dataset(R"({"num_nodes": 2})"), ErrorCode::ParseError);
  EXPECT_DPHG_ERROR(parse_hypergraph(R"({"num_nodes": 2, "hyperedges": [[0, 2]]})"),
                    ErrorCode::NodeIdOutOfRange);
  EXPECT_DPHG_ERROR(parse_hypergraph(R"({"num_nodes": 2, "hyperedges": [[]]})"), ErrorCode::EmptyEdge);
  EXPECT_DPHG_ERROR(parse_hypergraph(R"({"num_nodes": 2, "hyperedges": [["a"]]})"), ErrorCode::ParseError);
  EXPECT_DPHG_ERROR(parse_dataset(R"({"num_nodes": 2, "hyperedges": [[0, 1]], "features": [[1], [2]],
    "labels": [0, 1], "train_mask": [true, false], "val_mask": [true, false], "test_mask": [false, true]})"),
                    ErrorCode::MaskOverlap);
  EXPECT_DPHG_ERROR(load_dataset("/nonexistent/dphg.json"), ErrorCode::Io);
}

TEST(DatasetIo, HypergraphDocuments) {
  const Hypergraph hg = build_hypergraph(4, {{0, 3}, {1, 2, 3}});
  EXPECT_EQ(parse_hypergraph(dump_hypergraph(hg)), hg);
  // A full dataset document is also a valid structure document.
  EXPECT_EQ(parse_hypergraph(dump_dataset(tiny())), tiny().hg);
}
