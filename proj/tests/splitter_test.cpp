#include "tgbench/splitter.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "test_util.hpp"

using namespace tgbench;
using tgbench::testutil::make_stream;

namespace {

// n_events spread over [0, n_days) with at least one event on the first and
// last day.
EdgeStream spanning_stream(std::mt19937_64& gen, std::size_t n_events, int n_days,
                           NodeId n_nodes = 50, Timestamp day0 = 0) {
  std::vector<tgbench::testutil::Row> rows;
  rows.push_back({0, 1, day0 * kSecondsPerDay + 5});
  rows.push_back({1, 2, (day0 + n_days) * kSecondsPerDay - 5});
  for (std::size_t i = 2; i < n_events; ++i) {
    const NodeId s = static_cast<NodeId>(gen() % n_nodes);
    NodeId d = static_cast<NodeId>(gen() % n_nodes);
    if (d == s) d = (d + 1) % n_nodes;
    const Timestamp t = day0 * kSecondsPerDay +
                        static_cast<Timestamp>(gen() % static_cast<std::uint64_t>(
                                                         n_days * kSecondsPerDay));
    rows.push_back({s, d, t});
  }
  return make_stream(rows);
}

}  // namespace

TEST(Boundaries, ThirtyDaysSplitsTwentyFiveFive) {
  std::mt19937_64 gen(1);
  const EdgeStream s = spanning_stream(gen, 400, 30);
  const SplitBoundaries b = compute_boundaries(s);
  EXPECT_EQ(b.n_days, 30);
  EXPECT_EQ(b.train_days, 20);
  EXPECT_EQ(b.val_days, 5);
  EXPECT_EQ(b.test_days, 5);
  EXPECT_EQ(b.val_span_seconds(), 5 * kSecondsPerDay);
}

TEST(Boundaries, ElevenHundredNinetyFiveDayRule) {
  // floor(2*1095/3)=730, floor(1095/6)=182, remainder 183
  std::mt19937_64 gen(2);
  const EdgeStream s = spanning_stream(gen, 2000, 1095);
  const SplitBoundaries b = compute_boundaries(s);
  EXPECT_EQ(b.train_days, 730);
  EXPECT_EQ(b.val_days, 182);
  EXPECT_EQ(b.test_days, 183);
}

TEST(Boundaries, DayAligned) {
  std::mt19937_64 gen(3);
  const EdgeStream s = spanning_stream(gen, 300, 13, 20, /*day0=*/7777);
  const SplitBoundaries b = compute_boundaries(s);
  EXPECT_EQ(b.train_end_t % kSecondsPerDay, 0);
  EXPECT_EQ(b.val_end_t % kSecondsPerDay, 0);
  EXPECT_EQ(b.day0, 7777);
}

TEST(Boundaries, ShortSpanIsAnError) {
  std::mt19937_64 gen(4);
  const EdgeStream s = spanning_stream(gen, 40, 5);
  EXPECT_THROW(compute_boundaries(s), std::invalid_argument);
}

TEST(Split, ConservesCountsAndRespectsBoundaries) {
  std::mt19937_64 gen(5);
  const EdgeStream s = spanning_stream(gen, 1000, 18);
  const SplitBoundaries b = compute_boundaries(s);
  const DatasetSplit ds = split(s, b);
  EXPECT_EQ(ds.train.size() + ds.val.size() + ds.test.size(), s.size());
  for (const auto& e : ds.train.events) EXPECT_LT(e.t_orig, b.train_end_t);
  for (const auto& e : ds.val.events) {
    EXPECT_GE(e.t_orig, b.train_end_t);
    EXPECT_LT(e.t_orig, b.val_end_t);
  }
  for (const auto& e : ds.test.events) EXPECT_GE(e.t_orig, b.val_end_t);
}

TEST(Split, EmptySegmentIsAnError) {
  // Stream inside a single day, boundaries forced past it.
  const EdgeStream s = make_stream({{1, 2, 100}, {2, 3, 200}});
  SplitBoundaries b;
  b.day0 = 0;
  b.n_days = 9;
  b.train_days = 6;
  b.val_days = 1;
  b.test_days = 2;
  b.train_end_t = 6 * kSecondsPerDay;
  b.val_end_t = 7 * kSecondsPerDay;
  EXPECT_THROW(split(s, b), std::invalid_argument);
}

TEST(Split, CountsIdenticalAcrossGranularities) {
  std::mt19937_64 gen(6);
  const EdgeStream s = spanning_stream(gen, 1500, 12);
  const SplitBoundaries b = compute_boundaries(s);
  const DatasetSplit base = split(s, b);
  for (Granularity g : {Granularity::minute, Granularity::hour, Granularity::day}) {
    const DatasetSplit ds = split(coarsen(s, g), b);
    EXPECT_EQ(ds.train.size(), base.train.size());
    EXPECT_EQ(ds.val.size(), base.val.size());
    EXPECT_EQ(ds.test.size(), base.test.size());
  }
}

TEST(ChronoSplit, TenDistinctEventsSplitEightOneOne) {
  std::vector<tgbench::testutil::Row> rows;
  for (NodeId i = 0; i < 10; ++i) rows.push_back({i, i + 1, static_cast<Timestamp>(i * 100)});
  const ChronoSplit cs = chronological_split(make_stream(rows));
  EXPECT_EQ(cs.train.size(), 8u);
  EXPECT_EQ(cs.val.size(), 1u);
  EXPECT_EQ(cs.test.size(), 1u);
  EXPECT_NO_THROW(cs.require_nonempty());
}

TEST(ChronoSplit, IdenticalTimestampsStayTogether) {
  std::vector<tgbench::testutil::Row> rows;
  for (NodeId i = 0; i < 10; ++i) rows.push_back({i, i + 1, 500});
  const ChronoSplit cs = chronological_split(make_stream(rows));
  EXPECT_EQ(cs.train.size(), 10u);
  EXPECT_TRUE(cs.val_empty());
  EXPECT_TRUE(cs.test_empty());
  EXPECT_THROW(cs.require_nonempty(), std::invalid_argument);
}

TEST(ChronoSplit, CoarseBucketsMoveTheBoundaryForward) {
  // Distinct seconds but one shared minute bucket: everything lands in train.
  std::vector<tgbench::testutil::Row> rows;
  for (NodeId i = 0; i < 10; ++i) rows.push_back({i, i + 1, static_cast<Timestamp>(i)});
  const ChronoSplit cs = chronological_split(coarsen(make_stream(rows), Granularity::minute));
  EXPECT_EQ(cs.train.size(), 10u);
  EXPECT_TRUE(cs.val_empty());
}

TEST(ChronoSplit, EmptyStreamIsAnError) {
  EdgeStream s;
  EXPECT_THROW(chronological_split(s), std::invalid_argument);
}

TEST(Leakage, PassesAcrossGranularities) {
  std::mt19937_64 gen(7);
  const EdgeStream s = spanning_stream(gen, 900, 10);
  const SplitBoundaries b = compute_boundaries(s);
  const DatasetSplit d1 = split(s, b);
  const DatasetSplit d2 = split(coarsen(s, Granularity::hour), b);
  const DatasetSplit d3 = split(coarsen(s, Granularity::day), b);
  const LeakageReport report = verify_no_leakage({&d1, &d2, &d3});
  EXPECT_TRUE(report.passed) << report.detail;
}

TEST(Leakage, SingleSplitPassesVacuously) {
  std::mt19937_64 gen(8);
  const EdgeStream s = spanning_stream(gen, 200, 8);
  const DatasetSplit d = split(s, compute_boundaries(s));
  EXPECT_TRUE(verify_no_leakage({&d}).passed);
}

TEST(Leakage, MovedEventIsNamed) {
  std::mt19937_64 gen(9);
  const EdgeStream s = spanning_stream(gen, 400, 9);
  DatasetSplit d = split(s, compute_boundaries(s));
  const Event moved = d.test.events.front();
  d.test.events.erase(d.test.events.begin());
  d.train.events.push_back(moved);

  const LeakageReport report = verify_no_leakage({&d});
  EXPECT_FALSE(report.passed);
  std::ostringstream expected;
  expected << "src=" << moved.src << ", dst=" << moved.dst << ", t=" << moved.t_orig;
  EXPECT_NE(report.detail.find(expected.str()), std::string::npos) << report.detail;
}

TEST(Leakage, CountMismatchAcrossSplitsFails) {
  std::mt19937_64 gen(10);
  const EdgeStream s = spanning_stream(gen, 400, 9);
  const SplitBoundaries b = compute_boundaries(s);
  const DatasetSplit d1 = split(s, b);
  DatasetSplit d2 = split(s, b);
  d2.val.events.pop_back();
  const LeakageReport report = verify_no_leakage({&d1, &d2});
  EXPECT_FALSE(report.passed);
  EXPECT_NE(report.detail.find("counts"), std::string::npos);
}

TEST(Manifest, WritesCsvAndJson) {
  std::mt19937_64 gen(11);
  const EdgeStream s = spanning_stream(gen, 300, 12);
  const DatasetSplit d = split(s, compute_boundaries(s));
  const std::string csv = testing::TempDir() + "/manifest.csv";
  const std::string json = testing::TempDir() + "/manifest.json";
  write_split_manifest(d, csv, json);

  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "split,day_start,day_end,n_events");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);

  std::ifstream jin(json);
  std::stringstream buf;
  buf << jin.rdbuf();
  EXPECT_NE(buf.str().find("train_end_t"), std::string::npos);
}

TEST(Manifest, DeterministicBytes) {
  std::mt19937_64 gen(12);
  const EdgeStream s = spanning_stream(gen, 300, 12);
  const DatasetSplit d = split(s, compute_boundaries(s));
  const std::string a = testing::TempDir() + "/m_a.csv";
  const std::string b = testing::TempDir() + "/m_b.csv";
  write_split_manifest(d, a, testing::TempDir() + "/m_a.json");
  write_split_manifest(d, b, testing::TempDir() + "/m_b.json");
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}
