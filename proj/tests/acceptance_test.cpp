// Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
// Golden numbers are checked against the deterministic synthetic benchmark
// fixtures generated into <build>/fixtures on first use.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tgbench/edge_stream.hpp"
#include "tgbench/harness.hpp"
#include "tgbench/metrics.hpp"
#include "tgbench/neg_sampling.hpp"
#include "tgbench/splitter.hpp"
#include "tgbench/synthetic.hpp"

using namespace tgbench;

namespace {

struct ReferenceDataset {
  const char* name;
  EdgeFormat format;
  std::size_t nodes, total, unique, steps;
  int days[3];
  std::size_t edges[3];
};

// Structural constants of the seven benchmark datasets: node/edge/timestamp
// counts and the day-anchored 2/3-1/6-1/6 split sizes of the deduplicated
// streams.
const ReferenceDataset kReference[] = {
    {"wikipedia", EdgeFormat::jodie_csv, 9227, 157474, 18257, 152757,
     {20, 5, 5}, {99701, 26697, 26359}},
    {"reddit", EdgeFormat::jodie_csv, 10984, 672447, 78516, 588918,
     {20, 5, 5}, {432543, 110004, 126518}},
    {"mooc", EdgeFormat::jodie_csv, 7144, 411749, 178443, 345600,
     {20, 5, 5}, {216364, 65815, 63421}},
    {"lastfm", EdgeFormat::jodie_csv, 1980, 1293103, 154993, 1283614,
     {1216, 304, 305}, {916312, 340736, 26566}},
    {"enron", EdgeFormat::plain_csv, 184, 125235, 3125, 22632,
     {730, 182, 183}, {6224, 6357, 10051}},
    {"socialevo", EdgeFormat::plain_csv, 74, 2099519, 4486, 565932,
     {160, 40, 40}, {268758, 136849, 160325}},
    {"uci", EdgeFormat::plain_csv, 1899, 59835, 20296, 58911,
     {130, 32, 34}, {55202, 2402, 1307}},
};

class Fixtures {
 public:
  static Fixtures& get() {
    static Fixtures instance;
    return instance;
  }

  const std::string& dir() const { return dir_; }

  const ReferenceDataset& reference(const std::string& name) const {
    for (const auto& p : kReference) {
      if (name == p.name) return p;
    }
    throw std::invalid_argument("unknown dataset: " + name);
  }

  const EdgeStream& raw(const std::string& name) {
    auto it = raw_.find(name);
    if (it == raw_.end()) {
      it = raw_.emplace(name, parse_edge_stream(fixture_path(dir_, name, false),
                                                reference(name).format))
               .first;
    }
    return it->second;
  }

  EdgeStream dedup(const std::string& name) {  // uncached; used once
    return parse_edge_stream(fixture_path(dir_, name, true), reference(name).format);
  }

  DatasetRunner& runner(const std::string& name) {
    auto it = runners_.find(name);
    if (it == runners_.end()) {
      it = runners_.emplace(name, std::make_unique<DatasetRunner>(name, raw(name))).first;
    }
    return *it->second;
  }

  EdgeStream probe_raw() {
    const auto spec = probe_stream_spec();
    return parse_edge_stream(fixture_path(dir_, spec.name, false), EdgeFormat::plain_csv);
  }

 private:
  Fixtures() : dir_(std::string(TGBENCH_BINARY_DIR) + "/fixtures") {
    ensure_benchmark_fixtures(dir_);
  }

  std::string dir_;
  std::map<std::string, EdgeStream> raw_;
  std::map<std::string, std::unique_ptr<DatasetRunner>> runners_;
};

void report(int criterion, const std::string& what) {
  std::printf("[criterion %d] %s: %s\n", criterion, what.c_str(),
              ::testing::Test::HasFailure() ? "FAIL" : "PASS");
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Acceptance, C01_DayAnchoredSplitGolden) {
  auto& fx = Fixtures::get();
  const auto start = std::chrono::steady_clock::now();
  for (const auto& p : kReference) {
    const EdgeStream stream = fx.dedup(p.name);
    const SplitBoundaries b = compute_boundaries(stream);
    EXPECT_EQ(b.train_days, p.days[0]) << p.name;
    EXPECT_EQ(b.val_days, p.days[1]) << p.name;
    EXPECT_EQ(b.test_days, p.days[2]) << p.name;
    const DatasetSplit ds = split(stream, b);
    EXPECT_EQ(ds.train.size(), p.edges[0]) << p.name;
    EXPECT_EQ(ds.val.size(), p.edges[1]) << p.name;
    EXPECT_EQ(ds.test.size(), p.edges[2]) << p.name;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 30.0);
  std::printf("  split golden runtime: %.1fs (budget 30s)\n", secs);
  report(1, "day-anchored split reproduces the reference day and edge counts");
}

TEST(Acceptance, C02_DatasetStatisticsGolden) {
  auto& fx = Fixtures::get();
  for (const auto& p : kReference) {
    const DatasetStats stats = dataset_stats(fx.raw(p.name));
    EXPECT_EQ(stats.num_nodes, p.nodes) << p.name;
    EXPECT_EQ(stats.total_edges, p.total) << p.name;
    EXPECT_EQ(stats.unique_edges, p.unique) << p.name;
    EXPECT_EQ(stats.unique_steps, p.steps) << p.name;
  }
  const double socialevo_dup = dataset_stats(fx.raw("socialevo")).duplication_ratio;
  const double lastfm_dup = dataset_stats(fx.raw("lastfm")).duplication_ratio;
  EXPECT_GT(socialevo_dup, 0.85);
  EXPECT_GT(lastfm_dup, 0.85);
  EXPECT_NEAR(socialevo_dup, 1.0 - 4486.0 / 2099519.0, 1e-12);
  std::printf("  duplication ratios: socialevo %.4f, lastfm %.4f\n", socialevo_dup,
              lastfm_dup);
  report(2, "dataset statistics reproduce the reference statistics");
}

TEST(Acceptance, C03_EdgeBankInfRandomOperatingPoint) {
  auto& runner = Fixtures::get().runner("wikipedia");
  for (Granularity g :
       {Granularity::second, Granularity::minute, Granularity::hour, Granularity::day}) {
    const CellSpec cell{"edgebank_inf", g, g, Strategy::random};
    const EvalCell res = runner.run_cell(cell, /*master_seed=*/0, /*runs=*/3);
    ASSERT_TRUE(res.defined());
    EXPECT_NEAR(res.auroc_mean, 0.911, 0.02) << label(g);
    EXPECT_NEAR(res.ap_mean, 0.908, 0.02) << label(g);
    std::printf("  edgebank_inf wikipedia random @%s: auroc %.4f (std %.4f), ap %.4f\n",
                label(g), res.auroc_mean, res.auroc_std, res.ap_mean);
  }
  report(3, "edgebank_inf on wikipedia under random sampling holds 0.911/0.908 +-0.02 at "
            "every test granularity");
}

TEST(Acceptance, C04_EdgeBankTwOperatingPoints) {
  auto& runner = Fixtures::get().runner("wikipedia");
  const struct {
    Strategy strategy;
    double target, tol;
  } cases[] = {{Strategy::random, 0.888, 0.02},
               {Strategy::historical, 0.754, 0.02},
               {Strategy::inductive, 0.417, 0.03}};
  for (const auto& c : cases) {
    const CellSpec cell{"edgebank_tw", Granularity::second, Granularity::second, c.strategy};
    const EvalCell res = runner.run_cell(cell, 0, 3);
    ASSERT_TRUE(res.defined());
    EXPECT_NEAR(res.auroc_mean, c.target, c.tol) << label(c.strategy);
    std::printf("  edgebank_tw wikipedia %s: auroc %.4f (target %.3f +-%.2f)\n",
                label(c.strategy), res.auroc_mean, c.target, c.tol);
  }
  report(4, "edgebank_tw on wikipedia hits the reference random/historical/inductive "
            "operating points");
}

TEST(Acceptance, C05_WindowBeatsInfiniteUnderHistoricalSampling) {
  auto& fx = Fixtures::get();
  int tw_wins = 0;
  std::vector<std::vector<double>> metric(2, std::vector<double>(std::size(kReference)));
  for (std::size_t d = 0; d < std::size(kReference); ++d) {
    auto& runner = fx.runner(kReference[d].name);
    const CellSpec inf_cell{"edgebank_inf", Granularity::day, Granularity::day,
                            Strategy::historical};
    const CellSpec tw_cell{"edgebank_tw", Granularity::day, Granularity::day,
                           Strategy::historical};
    const EvalCell inf_res = runner.run_cell(inf_cell, 0, 3);
    const EvalCell tw_res = runner.run_cell(tw_cell, 0, 3);
    ASSERT_TRUE(inf_res.defined() && tw_res.defined());
    metric[0][d] = tw_res.auroc_mean;
    metric[1][d] = inf_res.auroc_mean;
    if (tw_res.auroc_mean > inf_res.auroc_mean) ++tw_wins;
    std::printf("  %-10s historical@day: tw %.4f vs inf %.4f\n", kReference[d].name,
                tw_res.auroc_mean, inf_res.auroc_mean);
  }
  EXPECT_GE(tw_wins, 6);
  const RankTable table = average_rank({"edgebank_tw", "edgebank_inf"}, metric);
  EXPECT_LT(table.mean_rank[0], table.mean_rank[1]);
  std::printf("  historical@day mean ranks: tw %.2f, inf %.2f (tw wins on %d/7)\n",
              table.mean_rank[0], table.mean_rank[1], tw_wins);
  report(5, "time-window beats infinite memory under historical sampling on >=6 of 7 "
            "datasets and in the rank table");
}

TEST(Acceptance, C06_MetricOracleEquivalence) {
  std::mt19937_64 gen(20240229);
  double max_auroc_diff = 0.0, max_ap_diff = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = testutil::random_metric_instance(gen);
    const double da = std::abs(auroc(v) - testutil::auroc_oracle(v));
    const double dp = std::abs(average_precision(v) - testutil::ap_oracle(v));
    max_auroc_diff = std::max(max_auroc_diff, da);
    max_ap_diff = std::max(max_ap_diff, dp);
    EXPECT_LT(da, 1e-12);
    EXPECT_LT(dp, 1e-12);
  }
  std::printf("  max |diff| over 1000 instances: auroc %.2e, ap %.2e\n", max_auroc_diff,
              max_ap_diff);
  report(6, "auroc and average precision match brute-force oracles to 1e-12");
}

TEST(Acceptance, C07_GranularityInvarianceWithPinnedNegatives) {
  auto& fx = Fixtures::get();

  auto check_stream = [&](const std::string& name, EdgeStream stream) {
    DatasetRunner runner(name, std::move(stream));
    CellOptions keep;
    keep.keep_samples = true;
    keep.keep_negatives = true;
    const CellSpec base_cell{"edgebank_inf", Granularity::second, Granularity::second,
                             Strategy::random};
    const RunOutcome base = runner.run_once(base_cell, 0, 0, keep);
    ASSERT_FALSE(base.samples.empty());

    for (Granularity g : {Granularity::minute, Granularity::hour, Granularity::day}) {
      CellOptions replay;
      replay.keep_samples = true;
      replay.replay_negatives = &base.negatives;
      const CellSpec cell{"edgebank_inf", Granularity::second, g, Strategy::random};
      const RunOutcome out = runner.run_once(cell, 0, 0, replay);
      ASSERT_EQ(out.samples.size(), base.samples.size()) << name << " @" << label(g);
      for (std::size_t i = 0; i < base.samples.size(); ++i) {
        ASSERT_EQ(out.samples[i].score, base.samples[i].score)
            << name << " @" << label(g) << " sample " << i;
        ASSERT_EQ(out.samples[i].positive, base.samples[i].positive);
      }
    }
  };

  check_stream("probe10k", fx.probe_raw());
  check_stream("wikipedia", fx.raw("wikipedia"));
  report(7, "edgebank_inf per-sample scores are bit-identical across test granularities "
            "with pinned negatives");
}

TEST(Acceptance, C08_LeakageChecks) {
  auto& fx = Fixtures::get();
  for (const auto& p : kReference) {
    const EdgeStream& raw = fx.raw(p.name);
    const SplitBoundaries b = compute_boundaries(raw);
    std::vector<DatasetSplit> splits;
    for (Granularity g : {Granularity::second, Granularity::minute, Granularity::hour,
                          Granularity::day}) {
      splits.push_back(split(coarsen(raw, g), b));
    }
    std::vector<const DatasetSplit*> views;
    for (const auto& s : splits) views.push_back(&s);
    const LeakageReport rep = verify_no_leakage(views);
    EXPECT_TRUE(rep.passed) << p.name << ": " << rep.detail;
  }

  // A mutated split must fail and name the offending event.
  DatasetSplit tampered = split(fx.raw("wikipedia"), compute_boundaries(fx.raw("wikipedia")));
  const Event moved = tampered.test.events.front();
  tampered.test.events.erase(tampered.test.events.begin());
  tampered.train.events.push_back(moved);
  const LeakageReport bad = verify_no_leakage({&tampered});
  EXPECT_FALSE(bad.passed);
  std::ostringstream expected;
  expected << "src=" << moved.src << ", dst=" << moved.dst << ", t=" << moved.t_orig;
  EXPECT_NE(bad.detail.find(expected.str()), std::string::npos) << bad.detail;
  std::printf("  tampered split report: %s\n", bad.detail.c_str());
  report(8, "no-leakage verification passes on all datasets and pinpoints an injected "
            "violation");
}

TEST(Acceptance, C09_MatrixDeterminism) {
  auto& fx = Fixtures::get();
  const std::string dir = std::string(TGBENCH_BINARY_DIR) + "/acceptance_c9";
  std::filesystem::create_directories(dir);

  auto run_into = [&](const std::string& out) {
    ExperimentConfig cfg;
    cfg.datasets.push_back(
        {"wikipedia", fixture_path(fx.dir(), "wikipedia", false), EdgeFormat::jodie_csv});
    cfg.datasets.push_back({"uci", fixture_path(fx.dir(), "uci", false),
                            EdgeFormat::plain_csv});
    cfg.granularities = {Granularity::second, Granularity::day};
    cfg.strategies = {Strategy::random, Strategy::historical};
    cfg.methods = {"edgebank_inf", "edgebank_tw"};
    cfg.runs = 2;
    cfg.master_seed = 123;
    cfg.jobs = 2;
    cfg.output_dir = out;
    const MatrixResults results = run_matrix(cfg);
    EXPECT_EQ(results.failed_cells, 0);
    emit_reports(results, cfg);
  };

  run_into(dir + "/run1");
  run_into(dir + "/run2");
  EXPECT_EQ(slurp(dir + "/run1/results.csv"), slurp(dir + "/run2/results.csv"));
  EXPECT_NE(slurp(dir + "/run1/results.csv"), "");
  EXPECT_EQ(slurp(dir + "/run1/ranks.csv"), slurp(dir + "/run2/ranks.csv"));
  report(9, "repeated matrix executions produce byte-identical results.csv and ranks.csv");
}

TEST(Acceptance, C10_ChronologicalSplitGolden) {
  auto& fx = Fixtures::get();
  const EdgeStream& raw = fx.raw("wikipedia");

  const ChronoSplit at_second = chronological_split(raw);
  EXPECT_EQ(at_second.train.size(), 110232u);
  EXPECT_EQ(at_second.val.size(), 23621u);
  EXPECT_EQ(at_second.test.size(), 23621u);

  const ChronoSplit at_month = chronological_split(coarsen(raw, Granularity::month));
  EXPECT_EQ(at_month.train.size(), 153823u);
  EXPECT_TRUE(at_month.val_empty());
  EXPECT_EQ(at_month.val.size(), 0u);
  EXPECT_EQ(at_month.test.size(), 3651u);
  EXPECT_THROW(at_month.require_nonempty(), std::invalid_argument);
  std::printf("  chrono split: second %zu/%zu/%zu, month %zu/%zu/%zu (empty val reported)\n",
              at_second.train.size(), at_second.val.size(), at_second.test.size(),
              at_month.train.size(), at_month.val.size(), at_month.test.size());
  report(10, "event-count chronological split reproduces the reference counts and reports "
             "the empty-val condition at month granularity");
}
