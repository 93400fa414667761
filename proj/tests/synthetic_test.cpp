#include "tgbench/synthetic.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tgbench/edge_stream.hpp"
#include "tgbench/splitter.hpp"

using namespace tgbench;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Synthetic, ProbeStreamHitsItsTargets) {
  const auto spec = probe_stream_spec();
  const std::string dir = testing::TempDir() + "/synth_probe";
  generate_dataset(spec, dir);

  const EdgeStream raw = parse_edge_stream(fixture_path(dir, spec.name, false),
                                           EdgeFormat::plain_csv);
  const DatasetStats stats = dataset_stats(raw);
  EXPECT_EQ(stats.num_nodes, spec.n_src_nodes);
  EXPECT_EQ(stats.total_edges, spec.total_events);
  EXPECT_EQ(stats.unique_edges, spec.unique_edges);
  EXPECT_EQ(stats.unique_steps, spec.unique_steps);

  const SplitBoundaries b = compute_boundaries(raw);
  EXPECT_EQ(b.n_days, spec.n_days);
  EXPECT_EQ(b.day0, spec.day0);

  const EdgeStream dedup = parse_edge_stream(fixture_path(dir, spec.name, true),
                                             EdgeFormat::plain_csv);
  EXPECT_EQ(dedup.size(), spec.unique_stamps);
  const DatasetSplit ds = split(dedup, compute_boundaries(dedup));
  EXPECT_EQ(ds.train.size(), spec.segment_stamps[0]);
  EXPECT_EQ(ds.val.size(), spec.segment_stamps[1]);
  EXPECT_EQ(ds.test.size(), spec.segment_stamps[2]);

  // All nodes appear as destinations too (unipartite coverage).
  EXPECT_EQ(raw.dst_universe.size(), raw.node_universe.size());
}

TEST(Synthetic, UciFixtureMatchesPublishedCounts) {
  SyntheticDatasetSpec spec;
  for (const auto& s : builtin_benchmark_specs()) {
    if (s.name == "uci") spec = s;
  }
  ASSERT_EQ(spec.name, "uci");
  const std::string dir = testing::TempDir() + "/synth_uci";
  generate_dataset(spec, dir);

  const EdgeStream raw = parse_edge_stream(fixture_path(dir, "uci", false),
                                           EdgeFormat::plain_csv);
  const DatasetStats stats = dataset_stats(raw);
  EXPECT_EQ(stats.num_nodes, 1899u);
  EXPECT_EQ(stats.total_edges, 59835u);
  EXPECT_EQ(stats.unique_edges, 20296u);
  EXPECT_EQ(stats.unique_steps, 58911u);

  const EdgeStream dedup = parse_edge_stream(fixture_path(dir, "uci", true),
                                             EdgeFormat::plain_csv);
  const SplitBoundaries b = compute_boundaries(dedup);
  EXPECT_EQ(b.n_days, 196);
  EXPECT_EQ(b.train_days, 130);
  EXPECT_EQ(b.val_days, 32);
  EXPECT_EQ(b.test_days, 34);
  const DatasetSplit ds = split(dedup, b);
  EXPECT_EQ(ds.train.size(), 55202u);
  EXPECT_EQ(ds.val.size(), 2402u);
  EXPECT_EQ(ds.test.size(), 1307u);
}

TEST(Synthetic, GenerationIsByteDeterministic) {
  const auto spec = probe_stream_spec();
  const std::string dir_a = testing::TempDir() + "/synth_det_a";
  const std::string dir_b = testing::TempDir() + "/synth_det_b";
  generate_dataset(spec, dir_a);
  generate_dataset(spec, dir_b);
  EXPECT_EQ(slurp(fixture_path(dir_a, spec.name, false)),
            slurp(fixture_path(dir_b, spec.name, false)));
  EXPECT_EQ(slurp(fixture_path(dir_a, spec.name, true)),
            slurp(fixture_path(dir_b, spec.name, true)));
}

TEST(Synthetic, EnsureIsIdempotent) {
  const std::string dir = testing::TempDir() + "/synth_ensure";
  // Only check the cheap part here: a second call must not rewrite files.
  const auto spec = probe_stream_spec();
  generate_dataset(spec, dir);
  namespace fs = std::filesystem;
  const auto before = fs::last_write_time(fixture_path(dir, spec.name, false));
  generate_dataset(spec, dir + "/other");  // unrelated write
  EXPECT_EQ(fs::last_write_time(fixture_path(dir, spec.name, false)), before);
}
