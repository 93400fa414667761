#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tgbench/types.hpp"

namespace tgbench {

// Deterministic synthetic edge-stream family. Each spec pins the structural
// statistics of one benchmark dataset exactly (node count, total/unique
// edges, distinct timestamps, per-segment timestamp counts under the
// day-aligned split) and shapes the recurrence structure (novelty, recency,
// dormancy) that memorization baselines respond to.
//
// Two files are written per dataset: `<name>.csv` with the full multiset and
// `<name>.dedup.csv` keeping the first event per distinct raw timestamp
// value. The dedup variant is what the split golden numbers refer to.
struct SyntheticDatasetSpec {
  std::string name;
  bool bipartite = false;
  std::uint32_t n_src_nodes = 0;  // users, or all nodes when unipartite
  std::uint32_t n_dst_nodes = 0;  // items; 0 when unipartite
  std::int64_t day0 = 19000;      // epoch day of the first event
  int n_days = 0;

  std::uint64_t total_events = 0;
  std::uint64_t unique_edges = 0;
  std::uint64_t unique_steps = 0;   // distinct integer seconds
  std::uint64_t unique_stamps = 0;  // distinct raw timestamp values
  std::array<std::uint64_t, 3> segment_stamps{};  // train/val/test distinct stamps
  std::array<std::uint64_t, 3> segment_extras{};  // duplicate rows; all-zero = auto

  // Recurrence structure.
  std::uint32_t val_new_edges = 0;
  std::uint32_t test_new_edges = 0;
  std::uint32_t train_core = 0;   // edges recurring through train
  std::uint32_t val_carry = 0;    // core edges still active in val
  std::uint32_t test_carry = 0;   // val-active edges still active in test
  std::uint32_t test_stale_events = 0;      // one-shot touches of long-dormant edges
  std::uint32_t test_new_recur_events = 0;  // post-debut recurrences of test-new edges
  double test_frontload = 0.3;  // fraction of test rows containing all test-new debuts
  double zipf_alpha = 0.8;
  std::uint64_t seed = 1;

  bool jodie_format = false;
  bool fractional = false;  // sub-second stamps (unique_stamps > unique_steps)
  std::vector<std::uint64_t> test_day_stamps;  // optional per-day override
  std::vector<std::uint64_t> test_day_extras;  // optional per-day override
  // Row indices r where rows r and r+1 must carry distinct stamps (keeps
  // event-ordinal split boundaries off duplicate timestamps).
  std::vector<std::size_t> guard_rows;
};

// The seven benchmark dataset specs, in canonical order.
const std::vector<SyntheticDatasetSpec>& builtin_benchmark_specs();

// A small stream (10k events) for granularity-invariance property checks.
SyntheticDatasetSpec probe_stream_spec();

std::string fixture_path(const std::string& dir, const std::string& name, bool dedup);

void generate_dataset(const SyntheticDatasetSpec& spec, const std::string& out_dir);

// Generates every builtin fixture (plus the probe stream) that is missing
// from `dir`. Returns the directory for convenience.
std::string ensure_benchmark_fixtures(const std::string& dir);

}  // namespace tgbench
