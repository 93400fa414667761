#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "tgbench/types.hpp"

namespace tgbench {

enum class EdgeFormat { plain_csv, jodie_csv };

EdgeFormat format_from_label(const std::string& name);
const char* label(EdgeFormat format);

struct DatasetStats {
  std::size_t num_nodes = 0;
  std::size_t total_edges = 0;
  std::size_t unique_edges = 0;   // distinct (src, dst) pairs
  std::size_t unique_steps = 0;   // distinct t_bucketed values
  Timestamp duration_seconds = 0;
  double duplication_ratio = 0.0;
};

// Time-ordered multiset of events. Immutable by convention once finalized;
// safe to share read-only across evaluation workers.
struct EdgeStream {
  std::vector<Event> events;  // sorted by (t_bucketed, seq)
  Granularity granularity = Granularity::second;
  std::vector<NodeId> node_universe;  // sorted, all ids appearing as src or dst
  std::vector<NodeId> dst_universe;   // sorted, all ids appearing as dst

  bool empty() const { return events.empty(); }
  std::size_t size() const { return events.size(); }
  Timestamp min_t_orig() const;
  Timestamp max_t_orig() const;

  // Sorts events by (t_bucketed, seq) and rebuilds both universes.
  void finalize();
};

// Parses a CSV edge list into a second-granularity stream (t_bucketed ==
// t_orig), with seq assigned in file order. plain_csv rows are `src,dst,t`;
// jodie_csv rows are `user,item,timestamp,label,feat...` with label and
// features ignored and item ids offset past the largest user id so the two
// populations stay disjoint. A leading header row is auto-detected.
// Fractional timestamps are truncated toward zero.
EdgeStream parse_edge_stream(const std::string& path, EdgeFormat format);

// Rewrites every t_bucketed to the epoch-anchored bucket of width g and
// re-sorts by (t_bucketed, seq). Event count and seq values are unchanged.
// Throws std::invalid_argument when g is finer than the stream's granularity.
EdgeStream coarsen(const EdgeStream& stream, Granularity g);

// Multiset of all (src, dst) with t_bucketed <= t; multiplicities preserved.
std::unordered_map<EdgeKey, std::uint64_t> cumulative_edges(const EdgeStream& stream,
                                                            Timestamp t);

// Throws std::invalid_argument on an empty stream. unique_steps is computed
// on t_bucketed at the stream's granularity.
DatasetStats dataset_stats(const EdgeStream& stream);

// Binary cache of a parsed stream, keyed to the source file's size and
// mtime. load returns false when missing or stale.
void save_stream_cache(const std::string& cache_path, const std::string& source_path,
                       const EdgeStream& stream);
bool load_stream_cache(const std::string& cache_path, const std::string& source_path,
                       EdgeStream& out);

}  // namespace tgbench
