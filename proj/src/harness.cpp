#include "tgbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "tgbench/edgebank.hpp"
#include "tgbench/subprocess_predictor.hpp"

namespace tgbench {

namespace fs = std::filesystem;
using nlohmann::json;

void ExperimentConfig::validate() const {
  if (datasets.empty()) throw std::invalid_argument("config: no datasets");
  if (granularities.empty()) throw std::invalid_argument("config: no granularities");
  if (strategies.empty()) throw std::invalid_argument("config: no strategies");
  if (methods.empty()) throw std::invalid_argument("config: no methods");
  if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("config: batch_size must be >= 1");
  if (negatives_per_positive < 1)
    throw std::invalid_argument("config: negatives_per_positive must be >= 1");
  if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  for (Granularity g : granularities) {
    if (!is_core_granularity(g))
      throw std::invalid_argument(std::string("config: granularity '") + label(g) +
                                  "' is not part of the evaluation protocol");
  }
  for (const auto& m : methods) make_predictor(m);  // rejects unknown methods
}

ExperimentConfig load_config(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open config: " + json_path);
  json j;
  in >> j;

  ExperimentConfig cfg;
  for (const auto& d : j.at("datasets")) {
    DatasetEntry e;
    e.name = d.at("name").get<std::string>();
    e.path = d.at("path").get<std::string>();
    e.format = format_from_label(d.value("format", "plain_csv"));
    cfg.datasets.push_back(std::move(e));
  }
  for (const auto& g : j.at("granularities"))
    cfg.granularities.push_back(granularity_from_label(g.get<std::string>()));
  for (const auto& s : j.at("strategies"))
    cfg.strategies.push_back(strategy_from_label(s.get<std::string>()));
  for (const auto& m : j.at("methods")) cfg.methods.push_back(m.get<std::string>());
  cfg.runs = j.value("runs", 3);
  cfg.master_seed = j.value("master_seed", 0ull);
  cfg.batch_size = j.value("batch_size", 200);
  cfg.negatives_per_positive = j.value("negatives_per_positive", 1);
  cfg.segment = segment_from_label(j.value("segment", "test"));
  cfg.output_dir = j.value("output_dir", "out");
  cfg.jobs = j.value("jobs", 1);
  cfg.dump_negatives = j.value("dump_negatives", false);
  cfg.validate();
  return cfg;
}

std::unique_ptr<Predictor> make_predictor(const std::string& method) {
  if (method == "edgebank_inf")
    return std::make_unique<EdgeBankPredictor>(EdgeBankVariant::infinite_memory);
  if (method == "edgebank_tw")
    return std::make_unique<EdgeBankPredictor>(EdgeBankVariant::time_window);
  if (method.rfind("external:", 0) == 0) {
    const std::string cmd = method.substr(9);
    if (cmd.empty()) throw std::invalid_argument("external method needs a command");
    return std::make_unique<SubprocessPredictor>(cmd);
  }
  throw std::invalid_argument("unknown method: " + method);
}

EdgeStream load_dataset(const std::string& path, EdgeFormat format) {
  const char* cache_dir = std::getenv("TGBENCH_CACHE_DIR");
  if (cache_dir && *cache_dir) {
    fs::create_directories(cache_dir);
    const std::string cache_path =
        (fs::path(cache_dir) / (fs::path(path).filename().string() + ".tgbc")).string();
    EdgeStream cached;
    if (load_stream_cache(cache_path, path, cached)) return cached;
    EdgeStream parsed = parse_edge_stream(path, format);
    save_stream_cache(cache_path, path, parsed);
    return parsed;
  }
  return parse_edge_stream(path, format);
}

DatasetRunner::DatasetRunner(std::string name, EdgeStream raw, int batch_size,
                             int negatives_per_positive, Segment segment)
    : name_(std::move(name)),
      raw_(std::move(raw)),
      batch_size_(batch_size),
      negatives_per_positive_(negatives_per_positive),
      segment_(segment) {
  boundaries_ = compute_boundaries(raw_);
}

const DatasetSplit& DatasetRunner::split_at(Granularity g) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = splits_.find(g);
  if (it != splits_.end()) return it->second;

  EdgeStream coarse = coarsen(raw_, g);
  const SplitBoundaries check = compute_boundaries(coarse);
  if (check.train_end_t != boundaries_.train_end_t || check.val_end_t != boundaries_.val_end_t)
    throw std::logic_error(name_ + ": split boundaries drifted across granularities");
  return splits_.emplace(g, split(coarse, boundaries_)).first->second;
}

const NegativePools& DatasetRunner::pools_at(Granularity g) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pools_.find(g);
    if (it != pools_.end()) return it->second;
  }
  const DatasetSplit& s = split_at(g);
  std::lock_guard<std::mutex> lock(mu_);
  return pools_.emplace(g, build_pools(s, segment_)).first->second;
}

void DatasetRunner::prebuild(const std::vector<Granularity>& granularities) {
  for (Granularity g : granularities) {
    split_at(g);
    pools_at(g);
  }
}

RunOutcome DatasetRunner::run_once(const CellSpec& cell, std::uint64_t master_seed,
                                   int run_idx, const CellOptions& opts) {
  const DatasetSplit& train_split = split_at(cell.train_g);
  const DatasetSplit& eval_split = split_at(cell.test_g);

  // Warmup: everything the model may have seen before the evaluation
  // segment, at the training granularity.
  EdgeStream warmup;
  warmup.granularity = cell.train_g;
  warmup.events = train_split.train.events;
  if (segment_ == Segment::test) {
    warmup.events.insert(warmup.events.end(), train_split.val.events.begin(),
                         train_split.val.events.end());
  }

  auto predictor = make_predictor(cell.method);
  predictor->init(warmup, cell.train_g, boundaries_.val_span_seconds());

  const EdgeStream& eval_stream =
      segment_ == Segment::test ? eval_split.test : eval_split.val;
  const NegativePools& pools = pools_at(cell.test_g);

  SamplerConfig scfg;
  scfg.strategy = cell.strategy;
  scfg.negatives_per_positive = negatives_per_positive_;
  scfg.batch_size = batch_size_;
  scfg.seed = derive_seed(master_seed, name_, cell.train_g, cell.test_g, cell.strategy, run_idx);
  BatchNegativeSampler sampler(scfg, pools);

  RunOutcome outcome;
  std::vector<ScoredSample> samples;
  samples.reserve(eval_stream.size() * 2);
  std::size_t replay_cursor = 0;
  Timestamp last_now = std::numeric_limits<Timestamp>::min();

  const auto& events = eval_stream.events;
  const std::size_t batch = static_cast<std::size_t>(batch_size_);
  std::uint32_t batch_idx = 0;
  for (std::size_t begin = 0; begin < events.size(); begin += batch, ++batch_idx) {
    const std::size_t end = std::min(begin + batch, events.size());
    const std::span<const Event> positives(events.data() + begin, end - begin);

    std::vector<NegativeDraw> negatives;
    if (opts.replay_negatives) {
      const auto& rec = *opts.replay_negatives;
      const std::size_t want =
          positives.size() * static_cast<std::size_t>(negatives_per_positive_);
      for (std::size_t k = 0; k < want; ++k, ++replay_cursor) {
        if (replay_cursor >= rec.size() || rec[replay_cursor].batch_idx != batch_idx)
          throw std::invalid_argument("negative replay is misaligned with the batch stream");
        negatives.push_back(
            NegativeDraw{rec[replay_cursor].src, rec[replay_cursor].dst,
                         rec[replay_cursor].fallback});
      }
    } else {
      negatives = sampler.sample(positives);
    }

    std::vector<std::pair<NodeId, NodeId>> candidates;
    candidates.reserve(positives.size() + negatives.size());
    for (const auto& e : positives) candidates.emplace_back(e.src, e.dst);
    for (const auto& n : negatives) candidates.emplace_back(n.src, n.dst);

    const Timestamp now = positives.back().t_bucketed;
    if (now < last_now)
      throw std::logic_error(name_ + ": batch stream is not chronologically ordered");
    last_now = now;

    const std::vector<double> scores = predictor->score_batch(candidates, now);
    if (scores.size() != candidates.size())
      throw std::runtime_error(cell.method + " returned a short score vector");

    for (std::size_t i = 0; i < positives.size(); ++i)
      samples.push_back(ScoredSample{scores[i], true});
    for (std::size_t i = 0; i < negatives.size(); ++i)
      samples.push_back(ScoredSample{scores[positives.size() + i], false});

    outcome.n_pos += positives.size();
    outcome.n_neg += negatives.size();
    outcome.negatives_total += negatives.size();
    for (const auto& n : negatives) outcome.negatives_fallback += n.fallback ? 1 : 0;

    if (opts.keep_negatives) {
      for (const auto& n : negatives)
        outcome.negatives.push_back(NegativeRecord{batch_idx, n.src, n.dst, cell.strategy,
                                                   n.fallback});
    }

    predictor->update(positives);  // scoring always precedes updating
  }

  try {
    outcome.auroc = auroc(samples);
    outcome.ap = average_precision(samples);
    outcome.defined = true;
  } catch (const std::invalid_argument&) {
    outcome.defined = false;
  }
  if (opts.keep_samples) outcome.samples = std::move(samples);
  return outcome;
}

EvalCell DatasetRunner::run_cell(const CellSpec& cell, std::uint64_t master_seed, int runs) {
  EvalCell out;
  std::vector<double> aurocs, aps, fallbacks;
  for (int r = 0; r < runs; ++r) {
    const RunOutcome run = run_once(cell, master_seed, r);
    ++out.runs;
    if (!run.defined) {
      ++out.undefined_runs;
      continue;
    }
    aurocs.push_back(run.auroc);
    aps.push_back(run.ap);
    fallbacks.push_back(run.negatives_total == 0
                            ? 0.0
                            : static_cast<double>(run.negatives_fallback) /
                                  static_cast<double>(run.negatives_total));
    out.n_pos = run.n_pos;
    out.n_neg = run.n_neg;
  }

  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  auto pop_std = [&](const std::vector<double>& v, double m) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
  };

  out.auroc_mean = mean(aurocs);
  out.auroc_std = pop_std(aurocs, out.auroc_mean);
  out.ap_mean = mean(aps);
  out.ap_std = pop_std(aps, out.ap_mean);
  out.fallback_fraction = mean(fallbacks);
  return out;
}

namespace {

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void check_output_dir(const std::string& dir) {
  fs::create_directories(dir);
  const std::string probe = (fs::path(dir) / ".write_probe").string();
  std::ofstream out(probe, std::ios::trunc);
  if (!out) throw std::runtime_error("output directory is not writable: " + dir);
  out.close();
  fs::remove(probe);
}

}  // namespace

namespace {

std::string negative_dump_path(const ExperimentConfig& cfg, const CellResult& c) {
  return (fs::path(cfg.output_dir) / "negatives" /
          (c.dataset + "_" + c.cell.method + "_" + label(c.cell.train_g) + "_" +
           label(c.cell.test_g) + "_" + label(c.cell.strategy) + ".csv"))
      .string();
}

}  // namespace

MatrixResults run_matrix(const ExperimentConfig& cfg) {
  cfg.validate();
  check_output_dir(cfg.output_dir);  // fail before any computation
  if (cfg.dump_negatives) fs::create_directories(fs::path(cfg.output_dir) / "negatives");

  MatrixResults results;

  for (const auto& entry : cfg.datasets) {
    EdgeStream raw = load_dataset(entry.path, entry.format);
    DatasetRunner runner(entry.name, std::move(raw), cfg.batch_size,
                         cfg.negatives_per_positive, cfg.segment);
    runner.prebuild(cfg.granularities);

    std::vector<CellResult> cells;
    for (const auto& method : cfg.methods) {
      for (Granularity train_g : cfg.granularities) {
        for (Granularity test_g : cfg.granularities) {
          for (Strategy strategy : cfg.strategies) {
            CellResult c;
            c.dataset = entry.name;
            c.cell = CellSpec{method, train_g, test_g, strategy};
            cells.push_back(std::move(c));
          }
        }
      }
    }

    const int jobs = std::min<int>(cfg.jobs, static_cast<int>(cells.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        CellResult& c = cells[i];
        try {
          c.eval = runner.run_cell(c.cell, cfg.master_seed, cfg.runs);
          if (cfg.dump_negatives) {
            CellOptions opts;
            opts.keep_negatives = true;
            const RunOutcome run0 = runner.run_once(c.cell, cfg.master_seed, 0, opts);
            write_negative_dump(run0.negatives, negative_dump_path(cfg, c));
          }
        } catch (const std::exception& e) {
          c.failed = true;
          c.error = e.what();
        }
      }
    };
    if (jobs <= 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }

    for (auto& c : cells) {
      if (c.failed) ++results.failed_cells;
      results.cells.push_back(std::move(c));
    }
  }

  results.ranks = ranks_from_results(results.cells);
  return results;
}

std::vector<RankColumn> ranks_from_results(const std::vector<CellResult>& cells) {
  // Preserve first-appearance order of methods, datasets and column keys.
  std::vector<std::string> methods, datasets;
  std::vector<std::pair<Granularity, Strategy>> columns;
  auto remember = [](auto& vec, const auto& v) {
    if (std::find(vec.begin(), vec.end(), v) == vec.end()) vec.push_back(v);
  };
  for (const auto& c : cells) {
    remember(methods, c.cell.method);
    remember(datasets, c.dataset);
    if (c.cell.train_g == c.cell.test_g)
      remember(columns, std::make_pair(c.cell.test_g, c.cell.strategy));
  }

  std::vector<RankColumn> out;
  for (const auto& [g, s] : columns) {
    RankColumn col;
    col.granularity = g;
    col.strategy = s;
    col.complete = true;

    std::vector<std::vector<double>> metric(methods.size(),
                                            std::vector<double>(datasets.size(), NAN));
    for (const auto& c : cells) {
      if (c.cell.train_g != g || c.cell.test_g != g || c.cell.strategy != s) continue;
      if (c.failed || !c.eval.defined()) continue;
      const auto mi = std::find(methods.begin(), methods.end(), c.cell.method) - methods.begin();
      const auto di = std::find(datasets.begin(), datasets.end(), c.dataset) - datasets.begin();
      metric[static_cast<std::size_t>(mi)][static_cast<std::size_t>(di)] = c.eval.auroc_mean;
    }
    try {
      col.table = average_rank(methods, metric);
    } catch (const std::invalid_argument&) {
      col.complete = false;
      col.table.methods = methods;
      col.table.mean_rank.assign(methods.size(), NAN);
    }
    out.push_back(std::move(col));
  }
  return out;
}

void write_results_csv(const std::vector<CellResult>& cells, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write results: " + path);
  out << "method,dataset,train_gran,test_gran,strategy,auroc,auroc_std,ap,ap_std,"
         "n_pos,n_neg,fallback_frac\n";
  for (const auto& c : cells) {
    if (c.failed) continue;
    out << c.cell.method << ',' << c.dataset << ',' << label(c.cell.train_g) << ','
        << label(c.cell.test_g) << ',' << label(c.cell.strategy) << ',';
    if (c.eval.defined()) {
      out << fmt6(c.eval.auroc_mean) << ',' << fmt6(c.eval.auroc_std) << ','
          << fmt6(c.eval.ap_mean) << ',' << fmt6(c.eval.ap_std) << ',';
    } else {
      out << ",,,,";  // undefined metrics are reported as such, never zeroed
    }
    out << c.eval.n_pos << ',' << c.eval.n_neg << ',' << fmt6(c.eval.fallback_fraction)
        << '\n';
  }
}

std::vector<CellResult> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results: " + path);
  std::vector<CellResult> cells;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 12) throw ParseError(line_no, "malformed results row");
    CellResult c;
    c.cell.method = fields[0];
    c.dataset = fields[1];
    c.cell.train_g = granularity_from_label(fields[2]);
    c.cell.test_g = granularity_from_label(fields[3]);
    c.cell.strategy = strategy_from_label(fields[4]);
    if (!fields[5].empty()) {
      c.eval.auroc_mean = std::stod(fields[5]);
      c.eval.auroc_std = std::stod(fields[6]);
      c.eval.ap_mean = std::stod(fields[7]);
      c.eval.ap_std = std::stod(fields[8]);
      c.eval.runs = 1;
    } else {
      c.eval.runs = 1;
      c.eval.undefined_runs = 1;
    }
    c.eval.n_pos = std::stoull(fields[9]);
    c.eval.n_neg = std::stoull(fields[10]);
    c.eval.fallback_fraction = std::stod(fields[11]);
    cells.push_back(std::move(c));
  }
  return cells;
}

void write_ranks_csv(const std::vector<RankColumn>& ranks, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write ranks: " + path);
  if (ranks.empty()) {
    out << "method\n";
    return;
  }
  out << "method";
  for (const auto& col : ranks)
    out << ',' << label(col.granularity) << '_' << label(col.strategy);
  out << '\n';
  const auto& methods = ranks.front().table.methods;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    out << methods[m];
    for (const auto& col : ranks) {
      out << ',';
      if (col.complete) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", col.table.mean_rank[m]);
        out << buf;
      }
    }
    out << '\n';
  }
}

void emit_reports(const MatrixResults& results, const ExperimentConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  write_results_csv(results.cells, (dir / "results.csv").string());
  write_ranks_csv(results.ranks, (dir / "ranks.csv").string());

  {
    std::ofstream out(dir / "matrix.csv", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write matrix.csv");
    out << "dataset,method,strategy,train_gran,test_gran,auroc,ap\n";
    for (const auto& c : results.cells) {
      if (c.failed || !c.eval.defined()) continue;
      out << c.dataset << ',' << c.cell.method << ',' << label(c.cell.strategy) << ','
          << label(c.cell.train_g) << ',' << label(c.cell.test_g) << ','
          << fmt6(c.eval.auroc_mean) << ',' << fmt6(c.eval.ap_mean) << '\n';
    }
  }

  {
    std::ofstream out(dir / "summary.txt", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write summary.txt");
    out << "cells: " << results.cells.size() << " (" << results.failed_cells << " failed)\n";
    out << "runs per cell: " << cfg.runs << ", batch size: " << cfg.batch_size
        << ", master seed: " << cfg.master_seed << ", segment: " << label(cfg.segment)
        << "\n\n";
    for (const auto& c : results.cells) {
      if (!c.failed) continue;
      out << "FAILED " << c.dataset << '/' << c.cell.method << '/' << label(c.cell.train_g)
          << "->" << label(c.cell.test_g) << '/' << label(c.cell.strategy) << ": " << c.error
          << '\n';
    }
    for (const auto& col : results.ranks) {
      out << "rank [" << label(col.granularity) << ", " << label(col.strategy) << "]";
      if (!col.complete) {
        out << " (incomplete)\n";
        continue;
      }
      out << ":";
      for (std::size_t m = 0; m < col.table.methods.size(); ++m) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", col.table.mean_rank[m]);
        out << ' ' << col.table.methods[m] << '=' << buf;
      }
      out << '\n';
    }
  }
}

}  // namespace tgbench
