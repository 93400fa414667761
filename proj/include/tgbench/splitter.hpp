#pragma once

#include <string>
#include <vector>

#include "tgbench/edge_stream.hpp"
#include "tgbench/types.hpp"

namespace tgbench {

// Day-aligned chronological boundaries, shared across every granularity of
// the same raw data. Buckets and boundaries are anchored at the Unix epoch.
struct SplitBoundaries {
  std::int64_t day0 = 0;  // epoch day index of the first event
  int n_days = 0;
  int train_days = 0;  // floor(2n/3)
  int val_days = 0;    // floor(n/6)
  int test_days = 0;   // remainder
  Timestamp train_end_t = 0;  // exclusive, multiple of 86400
  Timestamp val_end_t = 0;    // exclusive, multiple of 86400

  Timestamp val_span_seconds() const { return val_end_t - train_end_t; }
};

// Throws std::invalid_argument when the stream is empty or spans fewer than
// 6 calendar days.
SplitBoundaries compute_boundaries(const EdgeStream& stream);

struct DatasetSplit {
  EdgeStream train;
  EdgeStream val;
  EdgeStream test;
  SplitBoundaries boundaries;
};

// Partitions by t_orig against the day-aligned boundaries, so the cut is
// bit-identical across granularities. Throws when any segment is empty.
DatasetSplit split(const EdgeStream& stream, const SplitBoundaries& boundaries);

// Event-count chronological split (0.7 / 0.15 / 0.15) used to reproduce the
// preliminary-investigation tables. Events sharing a t_bucketed value always
// land in the same segment: each boundary moves forward to the next distinct
// bucket. Empty val/test segments are reported, not thrown, so callers can
// surface the degenerate-granularity condition.
struct ChronoSplit {
  EdgeStream train;
  EdgeStream val;
  EdgeStream test;

  bool val_empty() const { return val.empty(); }
  bool test_empty() const { return test.empty(); }
  // Throws std::invalid_argument when any segment is empty.
  void require_nonempty() const;
};

ChronoSplit chronological_split(const EdgeStream& stream);

struct LeakageReport {
  bool passed = true;
  std::string detail;
};

// Cross-checks splits of the same raw data (typically one per granularity):
// identical boundary timestamps, identical per-segment counts, and every
// event inside its segment's time range. The first violation is reported
// with the offending event.
LeakageReport verify_no_leakage(const std::vector<const DatasetSplit*>& splits);

// Manifest files consumed by the harness: a CSV with one row per segment and
// a JSON summary with the boundary timestamps.
void write_split_manifest(const DatasetSplit& split, const std::string& csv_path,
                          const std::string& json_path);

}  // namespace tgbench
