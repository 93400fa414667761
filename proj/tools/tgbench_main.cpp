// Command-line front end: ingest, stats, split, eval, matrix, rank and
// fixture generation. See README.md for usage examples.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tgbench/edge_stream.hpp"
#include "tgbench/harness.hpp"
#include "tgbench/neg_sampling.hpp"
#include "tgbench/splitter.hpp"
#include "tgbench/synthetic.hpp"

using namespace tgbench;

namespace {

constexpr char kResultsHeader[] =
    "method,dataset,train_gran,test_gran,strategy,auroc,auroc_std,ap,ap_std,"
    "n_pos,n_neg,fallback_frac";

void print_stats_row(const std::string& name, const DatasetStats& s) {
  std::printf("dataset,num_nodes,total_edges,unique_edges,unique_steps,duration_seconds,"
              "duplication_ratio\n");
  std::printf("%s,%zu,%zu,%zu,%zu,%lld,%.6f\n", name.c_str(), s.num_nodes, s.total_edges,
              s.unique_edges, s.unique_steps, static_cast<long long>(s.duration_seconds),
              s.duplication_ratio);
}

std::string basename_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  std::string base = pos == std::string::npos ? path : path.substr(pos + 1);
  const auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic link prediction benchmark across time granularities"};
  app.require_subcommand(1);

  std::string path, format = "plain_csv", name;
  std::string mode = "day", granularity = "second";
  std::string out_csv, out_json;

  auto* ingest = app.add_subcommand("ingest", "Parse an edge list (and warm the cache)");
  ingest->add_option("path", path, "edge list csv")->required();
  ingest->add_option("--format", format, "plain_csv | jodie_csv");

  auto* stats = app.add_subcommand("stats", "Dataset statistics as one CSV row");
  stats->add_option("path", path)->required();
  stats->add_option("--format", format, "plain_csv | jodie_csv");
  stats->add_option("--granularity", granularity, "bucket width for unique steps");
  stats->add_option("--name", name, "dataset label (default: file stem)");

  auto* split_cmd = app.add_subcommand("split", "Day-anchored or chronological split");
  split_cmd->add_option("path", path)->required();
  split_cmd->add_option("--format", format);
  split_cmd->add_option("--mode", mode, "day | chrono");
  split_cmd->add_option("--granularity", granularity,
                        "chrono mode bucket width (second..year)");
  split_cmd->add_option("--out-csv", out_csv, "write the split manifest CSV here");
  split_cmd->add_option("--out-json", out_json, "write the boundary summary JSON here");

  std::string method = "edgebank_inf", train_gran = "second", test_gran = "second";
  std::string strategy = "random", segment = "test";
  std::string dump_negatives, replay_negatives, out_file;
  int runs = 3, batch_size = 200, npp = 1;
  std::uint64_t master_seed = 0;

  auto* eval = app.add_subcommand("eval", "Evaluate one (method, granularity, strategy) cell");
  eval->add_option("path", path)->required();
  eval->add_option("--format", format);
  eval->add_option("--name", name, "dataset label used in seed derivation");
  eval->add_option("--method", method, "edgebank_inf | edgebank_tw | external:<cmd>");
  eval->add_option("--train-gran", train_gran);
  eval->add_option("--test-gran", test_gran);
  eval->add_option("--strategy", strategy, "random | historical | inductive");
  eval->add_option("--segment", segment, "test | val");
  eval->add_option("--runs", runs);
  eval->add_option("--seed", master_seed);
  eval->add_option("--batch-size", batch_size);
  eval->add_option("--negatives-per-positive", npp);
  eval->add_option("--dump-negatives", dump_negatives,
                   "write the run-0 negatives to this audit file");
  eval->add_option("--replay-negatives", replay_negatives,
                   "read pinned negatives instead of sampling (single run)");
  eval->add_option("--out", out_file, "write the result row to this CSV");

  std::string config_path;
  auto* matrix = app.add_subcommand("matrix", "Run the full experiment grid from a config");
  matrix->add_option("--config", config_path, "JSON experiment config")->required();

  std::string rank_input, rank_output;
  auto* rank = app.add_subcommand("rank", "Aggregate method ranks from a results CSV");
  rank->add_option("--input", rank_input, "results.csv")->required();
  rank->add_option("--out", rank_output, "write ranks CSV here (default: stdout)");

  std::string fixtures_dir = "fixtures";
  auto* gen = app.add_subcommand("gen-fixtures",
                                 "Generate the synthetic benchmark dataset family");
  gen->add_option("--out-dir", fixtures_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const EdgeStream s = load_dataset(path, format_from_label(format));
      std::printf("events=%zu nodes=%zu dst_nodes=%zu t=[%lld, %lld]\n", s.size(),
                  s.node_universe.size(), s.dst_universe.size(),
                  static_cast<long long>(s.min_t_orig()),
                  static_cast<long long>(s.max_t_orig()));
      return 0;
    }

    if (*stats) {
      EdgeStream s = load_dataset(path, format_from_label(format));
      const Granularity g = granularity_from_label(granularity);
      if (g != Granularity::second) s = coarsen(s, g);
      print_stats_row(name.empty() ? basename_of(path) : name, dataset_stats(s));
      return 0;
    }

    if (*split_cmd) {
      EdgeStream s = load_dataset(path, format_from_label(format));
      if (mode == "day") {
        const SplitBoundaries b = compute_boundaries(s);
        const DatasetSplit ds = split(s, b);
        std::printf("days: train=%d val=%d test=%d (day0=%lld)\n", b.train_days, b.val_days,
                    b.test_days, static_cast<long long>(b.day0));
        std::printf("events: train=%zu val=%zu test=%zu\n", ds.train.size(), ds.val.size(),
                    ds.test.size());
        if (!out_csv.empty() || !out_json.empty()) {
          write_split_manifest(ds, out_csv.empty() ? "split_manifest.csv" : out_csv,
                               out_json.empty() ? "split_summary.json" : out_json);
        }
        return 0;
      }
      if (mode == "chrono") {
        const Granularity g = granularity_from_label(granularity);
        if (g != Granularity::second) s = coarsen(s, g);
        const ChronoSplit cs = chronological_split(s);
        std::printf("events: train=%zu val=%zu test=%zu\n", cs.train.size(), cs.val.size(),
                    cs.test.size());
        if (cs.val_empty())
          std::printf("warning: empty val split at %s granularity\n", label(g));
        if (cs.test_empty())
          std::printf("warning: empty test split at %s granularity\n", label(g));
        return 0;
      }
      throw std::invalid_argument("unknown split mode: " + mode);
    }

    if (*eval) {
      const std::string dataset = name.empty() ? basename_of(path) : name;
      EdgeStream raw = load_dataset(path, format_from_label(format));
      DatasetRunner runner(dataset, std::move(raw), batch_size, npp,
                           segment_from_label(segment));
      const CellSpec cell{method, granularity_from_label(train_gran),
                          granularity_from_label(test_gran), strategy_from_label(strategy)};

      if (!replay_negatives.empty()) {
        const auto records = read_negative_dump(replay_negatives);
        CellOptions opts;
        opts.replay_negatives = &records;
        const RunOutcome out = runner.run_once(cell, master_seed, 0, opts);
        std::printf("%s\n", kResultsHeader);
        std::printf("%s,%s,%s,%s,%s,%.6f,0.000000,%.6f,0.000000,%llu,%llu,%.6f\n",
                    method.c_str(), dataset.c_str(), label(cell.train_g), label(cell.test_g),
                    label(cell.strategy), out.auroc, out.ap,
                    static_cast<unsigned long long>(out.n_pos),
                    static_cast<unsigned long long>(out.n_neg),
                    out.negatives_total == 0
                        ? 0.0
                        : static_cast<double>(out.negatives_fallback) /
                              static_cast<double>(out.negatives_total));
        return 0;
      }

      if (!dump_negatives.empty()) {
        CellOptions opts;
        opts.keep_negatives = true;
        const RunOutcome out = runner.run_once(cell, master_seed, 0, opts);
        write_negative_dump(out.negatives, dump_negatives);
        std::printf("wrote %zu negative draws to %s\n", out.negatives.size(),
                    dump_negatives.c_str());
      }

      const EvalCell res = runner.run_cell(cell, master_seed, runs);
      std::printf("%s\n", kResultsHeader);
      if (res.defined()) {
        std::printf("%s,%s,%s,%s,%s,%.6f,%.6f,%.6f,%.6f,%llu,%llu,%.6f\n", method.c_str(),
                    dataset.c_str(), label(cell.train_g), label(cell.test_g),
                    label(cell.strategy), res.auroc_mean, res.auroc_std, res.ap_mean,
                    res.ap_std, static_cast<unsigned long long>(res.n_pos),
                    static_cast<unsigned long long>(res.n_neg), res.fallback_fraction);
      } else {
        std::printf("%s,%s,%s,%s,%s,,,,,%llu,%llu,%.6f  (undefined metrics)\n",
                    method.c_str(), dataset.c_str(), label(cell.train_g), label(cell.test_g),
                    label(cell.strategy), static_cast<unsigned long long>(res.n_pos),
                    static_cast<unsigned long long>(res.n_neg), res.fallback_fraction);
      }
      if (!out_file.empty()) {
        CellResult row;
        row.dataset = dataset;
        row.cell = cell;
        row.eval = res;
        write_results_csv({row}, out_file);
      }
      return 0;
    }

    if (*matrix) {
      const ExperimentConfig cfg = load_config(config_path);
      const MatrixResults results = run_matrix(cfg);
      emit_reports(results, cfg);
      std::printf("%zu cells, %d failed; reports in %s\n", results.cells.size(),
                  results.failed_cells, cfg.output_dir.c_str());
      return results.failed_cells == 0 ? 0 : 1;
    }

    if (*rank) {
      const auto cells = read_results_csv(rank_input);
      const auto ranks = ranks_from_results(cells);
      const std::string out = rank_output.empty() ? "/dev/stdout" : rank_output;
      write_ranks_csv(ranks, out);
      return 0;
    }

    if (*gen) {
      ensure_benchmark_fixtures(fixtures_dir);
      for (const auto& spec : builtin_benchmark_specs())
        std::printf("%s\n", fixture_path(fixtures_dir, spec.name, false).c_str());
      std::printf("%s\n", fixture_path(fixtures_dir, probe_stream_spec().name, false).c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
