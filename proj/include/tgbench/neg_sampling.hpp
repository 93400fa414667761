#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tgbench/rng.hpp"
#include "tgbench/splitter.hpp"
#include "tgbench/types.hpp"

namespace tgbench {

enum class Strategy { random, historical, inductive };

Strategy strategy_from_label(const std::string& name);
const char* label(Strategy s);

enum class Segment { val, test };

Segment segment_from_label(const std::string& name);
const char* label(Segment s);

struct SamplerConfig {
  Strategy strategy = Strategy::random;
  int negatives_per_positive = 1;
  std::uint64_t seed = 0;
  int batch_size = 200;
};

// Candidate pools for one evaluation segment. historical holds the distinct
// edges observed strictly before the segment; inductive holds the distinct
// segment edges absent from historical. The two are disjoint by construction.
struct NegativePools {
  std::vector<EdgeKey> historical;  // sorted
  std::vector<EdgeKey> inductive;   // sorted
  std::vector<NodeId> node_universe;  // dataset-level (union over segments)
  std::vector<NodeId> dst_universe;
};

NegativePools build_pools(const DatasetSplit& split, Segment segment);

struct NegativeDraw {
  NodeId src = 0;
  NodeId dst = 0;
  bool fallback = false;  // filled by the random strategy because the pool ran short
};

// Draws negatives_per_positive x |positives| candidate edges per batch.
// Random draws pick src from node_universe and dst from dst_universe
// uniformly; pool strategies draw without replacement from their pool. Every
// draw excludes the current batch's positive pairs. A pool smaller than the
// request (after exclusion) is topped up by random draws, and that shortfall
// is accounted as fallback.
class BatchNegativeSampler {
 public:
  BatchNegativeSampler(const SamplerConfig& cfg, const NegativePools& pools);

  std::vector<NegativeDraw> sample(std::span<const Event> positives);

  std::uint64_t total_draws() const { return total_; }
  std::uint64_t fallback_draws() const { return fallback_; }
  double fallback_fraction() const {
    return total_ == 0 ? 0.0 : static_cast<double>(fallback_) / static_cast<double>(total_);
  }

 private:
  NegativeDraw draw_random(const std::vector<EdgeKey>& banned_sorted, bool as_fallback);

  SamplerConfig cfg_;
  const NegativePools* pools_;
  Rng rng_;
  std::uint64_t total_ = 0;
  std::uint64_t fallback_ = 0;
};

// Per-run seed: one master seed fans out to independent, reproducible
// sequences per (dataset, train granularity, test granularity, strategy,
// run index).
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view dataset,
                          Granularity train_g, Granularity test_g, Strategy strategy,
                          int run_index);

// Audit dump of sampled negatives: `batch_idx,src,dst,strategy,fallback`.
struct NegativeRecord {
  std::uint32_t batch_idx = 0;
  NodeId src = 0;
  NodeId dst = 0;
  Strategy strategy = Strategy::random;
  bool fallback = false;
};

void write_negative_dump(const std::vector<NegativeRecord>& records, const std::string& path);
std::vector<NegativeRecord> read_negative_dump(const std::string& path);

}  // namespace tgbench
