#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tgbench/edge_stream.hpp"
#include "tgbench/metrics.hpp"
#include "tgbench/neg_sampling.hpp"
#include "tgbench/predictor.hpp"
#include "tgbench/splitter.hpp"

namespace tgbench {

struct DatasetEntry {
  std::string name;
  std::string path;
  EdgeFormat format = EdgeFormat::plain_csv;
};

struct ExperimentConfig {
  std::vector<DatasetEntry> datasets;
  std::vector<Granularity> granularities;  // core granularities only
  std::vector<Strategy> strategies;
  std::vector<std::string> methods;  // edgebank_inf | edgebank_tw | external:<cmd>
  int runs = 3;
  std::uint64_t master_seed = 0;
  int batch_size = 200;
  int negatives_per_positive = 1;
  Segment segment = Segment::test;
  std::string output_dir = "out";
  int jobs = 1;
  bool dump_negatives = false;

  void validate() const;  // throws std::invalid_argument on a bad config
};

ExperimentConfig load_config(const std::string& json_path);

std::unique_ptr<Predictor> make_predictor(const std::string& method);

// Parses an edge list, round-tripping through the binary cache directory
// named by TGBENCH_CACHE_DIR when that variable is set.
EdgeStream load_dataset(const std::string& path, EdgeFormat format);

struct CellSpec {
  std::string method;
  Granularity train_g = Granularity::second;
  Granularity test_g = Granularity::second;
  Strategy strategy = Strategy::random;
};

struct RunOutcome {
  bool defined = false;
  double auroc = 0.0;
  double ap = 0.0;
  std::uint64_t n_pos = 0;
  std::uint64_t n_neg = 0;
  std::uint64_t negatives_total = 0;
  std::uint64_t negatives_fallback = 0;
  std::vector<ScoredSample> samples;      // populated iff keep_samples
  std::vector<NegativeRecord> negatives;  // populated iff keep_negatives
};

struct CellOptions {
  bool keep_samples = false;
  bool keep_negatives = false;
  const std::vector<NegativeRecord>* replay_negatives = nullptr;
};

struct EvalCell {
  double auroc_mean = 0.0, auroc_std = 0.0;
  double ap_mean = 0.0, ap_std = 0.0;
  std::uint64_t n_pos = 0, n_neg = 0;
  double fallback_fraction = 0.0;
  int runs = 0;
  int undefined_runs = 0;

  bool defined() const { return runs > 0 && undefined_runs == 0; }
};

// Evaluation driver for one dataset. Boundaries are computed once from the
// raw stream; every granularity's split shares them, which is asserted when
// each split is built.
class DatasetRunner {
 public:
  DatasetRunner(std::string name, EdgeStream raw, int batch_size = 200,
                int negatives_per_positive = 1, Segment segment = Segment::test);

  const std::string& name() const { return name_; }
  const EdgeStream& raw() const { return raw_; }
  const SplitBoundaries& boundaries() const { return boundaries_; }
  Segment segment() const { return segment_; }

  // Lazily built and cached; guarded by a mutex so parallel cells can share.
  const DatasetSplit& split_at(Granularity g);
  const NegativePools& pools_at(Granularity g);
  void prebuild(const std::vector<Granularity>& granularities);

  // One evaluation run: coarsen, split at shared boundaries, warm up the
  // predictor, stream the evaluation segment in (t_bucketed, seq) batches,
  // sample negatives, score, record, then update.
  RunOutcome run_once(const CellSpec& cell, std::uint64_t master_seed, int run_idx,
                      const CellOptions& opts = {});

  // Aggregates `runs` runs into one cell (mean and population std).
  EvalCell run_cell(const CellSpec& cell, std::uint64_t master_seed, int runs);

 private:
  std::string name_;
  EdgeStream raw_;
  SplitBoundaries boundaries_;
  int batch_size_;
  int negatives_per_positive_;
  Segment segment_;
  std::mutex mu_;
  std::map<Granularity, DatasetSplit> splits_;
  std::map<Granularity, NegativePools> pools_;
};

struct CellResult {
  std::string dataset;
  CellSpec cell;
  EvalCell eval;
  bool failed = false;
  std::string error;
};

struct RankColumn {
  Granularity granularity = Granularity::second;
  Strategy strategy = Strategy::random;
  RankTable table;
  bool complete = false;
};

struct MatrixResults {
  std::vector<CellResult> cells;
  std::vector<RankColumn> ranks;
  int failed_cells = 0;
};

// Executes the full grid (datasets x methods x train_g x test_g x strategies
// x runs), deterministically for a fixed config and master seed. Per-cell
// failures are recorded and the grid continues.
MatrixResults run_matrix(const ExperimentConfig& cfg);

// Report files: results.csv, matrix.csv, ranks.csv and a readable summary.
// The output directory is validated eagerly by run_matrix before any
// computation starts.
void emit_reports(const MatrixResults& results, const ExperimentConfig& cfg);

void write_results_csv(const std::vector<CellResult>& cells, const std::string& path);
std::vector<CellResult> read_results_csv(const std::string& path);

// Rank tables over matched-granularity (diagonal) cells, one column per
// (granularity, strategy) present in the results.
std::vector<RankColumn> ranks_from_results(const std::vector<CellResult>& cells);
void write_ranks_csv(const std::vector<RankColumn>& ranks, const std::string& path);

}  // namespace tgbench
