#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tgbench {

using NodeId = std::uint32_t;
using Timestamp = std::int64_t;  // whole seconds since the Unix epoch
using EdgeKey = std::uint64_t;   // packed (src, dst) pair

constexpr Timestamp kSecondsPerDay = 86400;

inline EdgeKey edge_key(NodeId src, NodeId dst) {
  return (static_cast<EdgeKey>(src) << 32) | static_cast<EdgeKey>(dst);
}

inline NodeId key_src(EdgeKey k) { return static_cast<NodeId>(k >> 32); }
inline NodeId key_dst(EdgeKey k) { return static_cast<NodeId>(k & 0xffffffffu); }

// One directed timestamped interaction. `seq` is the ingestion ordinal and is
// never reassigned; coarsening only rewrites `t_bucketed`.
struct Event {
  NodeId src = 0;
  NodeId dst = 0;
  Timestamp t_orig = 0;
  Timestamp t_bucketed = 0;
  std::uint64_t seq = 0;

  EdgeKey key() const { return edge_key(src, dst); }
};

// The four core granularities drive the evaluation protocol. `month` and
// `year` exist only for the chronological-split investigation mode and are
// rejected by experiment configs.
enum class Granularity : int {
  second = 0,
  minute = 1,
  hour = 2,
  day = 3,
  month = 4,
  year = 5,
};

constexpr Timestamp width_seconds(Granularity g) {
  switch (g) {
    case Granularity::second: return 1;
    case Granularity::minute: return 60;
    case Granularity::hour: return 3600;
    case Granularity::day: return kSecondsPerDay;
    case Granularity::month: return 30 * kSecondsPerDay;
    case Granularity::year: return 365 * kSecondsPerDay;
  }
  return 1;
}

constexpr bool is_core_granularity(Granularity g) {
  return g == Granularity::second || g == Granularity::minute ||
         g == Granularity::hour || g == Granularity::day;
}

const char* label(Granularity g);
const char* short_label(Granularity g);  // s / m / h / d
Granularity granularity_from_label(const std::string& name);

// Epoch-anchored bucket start: floor(t / width) * width, exact for negative
// timestamps as well.
constexpr Timestamp bucket_start(Timestamp t, Timestamp width) {
  Timestamp q = t / width;
  if (t % width != 0 && t < 0) --q;
  return q * width;
}

struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(std::size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

}  // namespace tgbench
