#include "tgbench/edge_stream.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

namespace tgbench {

const char* label(Granularity g) {
  switch (g) {
    case Granularity::second: return "second";
    case Granularity::minute: return "minute";
    case Granularity::hour: return "hour";
    case Granularity::day: return "day";
    case Granularity::month: return "month";
    case Granularity::year: return "year";
  }
  return "?";
}

const char* short_label(Granularity g) {
  switch (g) {
    case Granularity::second: return "s";
    case Granularity::minute: return "m";
    case Granularity::hour: return "h";
    case Granularity::day: return "d";
    case Granularity::month: return "mo";
    case Granularity::year: return "y";
  }
  return "?";
}

Granularity granularity_from_label(const std::string& name) {
  if (name == "second" || name == "s") return Granularity::second;
  if (name == "minute" || name == "m") return Granularity::minute;
  if (name == "hour" || name == "h") return Granularity::hour;
  if (name == "day" || name == "d") return Granularity::day;
  if (name == "month" || name == "mo") return Granularity::month;
  if (name == "year" || name == "y") return Granularity::year;
  throw std::invalid_argument("unknown granularity: " + name);
}

EdgeFormat format_from_label(const std::string& name) {
  if (name == "plain" || name == "plain_csv") return EdgeFormat::plain_csv;
  if (name == "jodie" || name == "jodie_csv") return EdgeFormat::jodie_csv;
  throw std::invalid_argument("unknown edge format: " + name);
}

const char* label(EdgeFormat format) {
  return format == EdgeFormat::plain_csv ? "plain_csv" : "jodie_csv";
}

Timestamp EdgeStream::min_t_orig() const {
  Timestamp m = std::numeric_limits<Timestamp>::max();
  for (const auto& e : events) m = std::min(m, e.t_orig);
  return m;
}

Timestamp EdgeStream::max_t_orig() const {
  Timestamp m = std::numeric_limits<Timestamp>::min();
  for (const auto& e : events) m = std::max(m, e.t_orig);
  return m;
}

void EdgeStream::finalize() {
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.t_bucketed != b.t_bucketed) return a.t_bucketed < b.t_bucketed;
    return a.seq < b.seq;
  });
  node_universe.clear();
  dst_universe.clear();
  node_universe.reserve(events.size() / 4 + 1);
  dst_universe.reserve(events.size() / 4 + 1);
  for (const auto& e : events) {
    node_universe.push_back(e.src);
    node_universe.push_back(e.dst);
    dst_universe.push_back(e.dst);
  }
  auto dedupe = [](std::vector<NodeId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    v.shrink_to_fit();
  };
  dedupe(node_universe);
  dedupe(dst_universe);
}

namespace {

void trim(std::string_view& s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
}

// Splits the first `max_fields` comma-separated fields; extra fields are left
// unparsed (jodie feature columns).
std::size_t split_fields(std::string_view line, std::string_view* out,
                         std::size_t max_fields) {
  std::size_t n = 0;
  while (n < max_fields) {
    const std::size_t comma = line.find(',');
    out[n] = line.substr(0, comma);
    trim(out[n]);
    ++n;
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return n;
}

bool parse_double_full(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool looks_numeric(std::string_view s) {
  double d;
  return parse_double_full(s, d);
}

NodeId parse_node_id(std::string_view s, std::size_t line_no, const char* what) {
  std::uint64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line_no, std::string("malformed ") + what + " '" + std::string(s) + "'");
  if (v > std::numeric_limits<NodeId>::max())
    throw ParseError(line_no, std::string(what) + " out of range");
  return static_cast<NodeId>(v);
}

Timestamp parse_timestamp(std::string_view s, std::size_t line_no) {
  if (s.find('.') == std::string_view::npos) {
    Timestamp t = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, t);
    if (ec != std::errc() || ptr != last || t < 0)
      throw ParseError(line_no, "malformed timestamp '" + std::string(s) + "'");
    return t;
  }
  double d = 0.0;
  if (!parse_double_full(s, d) || !std::isfinite(d) || d < 0.0 ||
      d >= 9.2e18)  // must fit a signed 64-bit second count
    throw ParseError(line_no, "malformed timestamp '" + std::string(s) + "'");
  return static_cast<Timestamp>(d);  // truncate toward zero
}

}  // namespace

EdgeStream parse_edge_stream(const std::string& path, EdgeFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);

  EdgeStream stream;
  stream.granularity = Granularity::second;

  std::string line;
  std::size_t line_no = 0;
  std::uint64_t seq = 0;
  NodeId max_user = 0;  // jodie: users and items live in separate id spaces
  std::string_view f[3];

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    trim(view);
    if (view.empty()) continue;

    const std::size_t n_fields = split_fields(view, f, 3);

    if (line_no == 1 && !looks_numeric(f[0])) {
      // Header heuristic: a header has non-numeric companions too; a data row
      // with a malformed id does not.
      const bool other_non_numeric =
          (n_fields > 1 && !looks_numeric(f[1])) || (n_fields > 2 && !looks_numeric(f[2]));
      if (other_non_numeric) continue;
    }

    if (n_fields < 3) throw ParseError(line_no, "expected at least 3 fields");

    Event e;
    e.src = parse_node_id(f[0], line_no, format == EdgeFormat::jodie_csv ? "user id" : "src id");
    e.dst = parse_node_id(f[1], line_no, format == EdgeFormat::jodie_csv ? "item id" : "dst id");
    e.t_orig = parse_timestamp(f[2], line_no);
    e.t_bucketed = e.t_orig;
    e.seq = seq++;
    if (format == EdgeFormat::jodie_csv) max_user = std::max(max_user, e.src);
    stream.events.push_back(e);
  }

  if (stream.events.empty()) throw std::invalid_argument("empty edge stream: " + path);

  if (format == EdgeFormat::jodie_csv) {
    const std::uint64_t offset = static_cast<std::uint64_t>(max_user) + 1;
    for (auto& e : stream.events) {
      const std::uint64_t shifted = offset + e.dst;
      if (shifted > std::numeric_limits<NodeId>::max())
        throw std::runtime_error("item id overflow after bipartite offset in " + path);
      e.dst = static_cast<NodeId>(shifted);
    }
  }

  stream.finalize();
  return stream;
}

EdgeStream coarsen(const EdgeStream& stream, Granularity g) {
  if (width_seconds(g) < width_seconds(stream.granularity))
    throw std::invalid_argument(std::string("cannot coarsen ") + label(stream.granularity) +
                                " stream to finer granularity " + label(g));
  EdgeStream out;
  out.granularity = g;
  out.events = stream.events;
  const Timestamp w = width_seconds(g);
  for (auto& e : out.events) e.t_bucketed = bucket_start(e.t_orig, w);
  std::sort(out.events.begin(), out.events.end(), [](const Event& a, const Event& b) {
    if (a.t_bucketed != b.t_bucketed) return a.t_bucketed < b.t_bucketed;
    return a.seq < b.seq;
  });
  out.node_universe = stream.node_universe;
  out.dst_universe = stream.dst_universe;
  return out;
}

std::unordered_map<EdgeKey, std::uint64_t> cumulative_edges(const EdgeStream& stream,
                                                            Timestamp t) {
  const auto end = std::partition_point(
      stream.events.begin(), stream.events.end(),
      [t](const Event& e) { return e.t_bucketed <= t; });
  std::unordered_map<EdgeKey, std::uint64_t> multiset;
  multiset.reserve(static_cast<std::size_t>(end - stream.events.begin()));
  for (auto it = stream.events.begin(); it != end; ++it) ++multiset[it->key()];
  return multiset;
}

DatasetStats dataset_stats(const EdgeStream& stream) {
  if (stream.empty()) throw std::invalid_argument("dataset_stats: empty stream");

  DatasetStats stats;
  stats.num_nodes = stream.node_universe.size();
  stats.total_edges = stream.size();

  std::unordered_set<EdgeKey> edges;
  edges.reserve(stream.size());
  std::unordered_set<Timestamp> steps;
  steps.reserve(stream.size());
  Timestamp t_min = std::numeric_limits<Timestamp>::max();
  Timestamp t_max = std::numeric_limits<Timestamp>::min();
  for (const auto& e : stream.events) {
    edges.insert(e.key());
    steps.insert(e.t_bucketed);
    t_min = std::min(t_min, e.t_orig);
    t_max = std::max(t_max, e.t_orig);
  }
  stats.unique_edges = edges.size();
  stats.unique_steps = steps.size();
  stats.duration_seconds = t_max - t_min;
  stats.duplication_ratio =
      1.0 - static_cast<double>(stats.unique_edges) / static_cast<double>(stats.total_edges);
  return stats;
}

namespace {

constexpr char kCacheMagic[8] = {'T', 'G', 'B', 'C', '0', '1', '\n', '\0'};

struct CacheHeader {
  char magic[8];
  std::uint64_t source_size;
  std::int64_t source_mtime;
  std::int32_t granularity;
  std::int32_t reserved;
  std::uint64_t n_events;
  std::uint64_t n_nodes;
  std::uint64_t n_dsts;
};

bool source_signature(const std::string& path, std::uint64_t& size, std::int64_t& mtime) {
  std::error_code ec;
  const auto sz = std::filesystem::file_size(path, ec);
  if (ec) return false;
  const auto tp = std::filesystem::last_write_time(path, ec);
  if (ec) return false;
  size = sz;
  mtime = static_cast<std::int64_t>(tp.time_since_epoch().count());
  return true;
}

}  // namespace

void save_stream_cache(const std::string& cache_path, const std::string& source_path,
                       const EdgeStream& stream) {
  CacheHeader h{};
  std::memcpy(h.magic, kCacheMagic, sizeof(h.magic));
  if (!source_signature(source_path, h.source_size, h.source_mtime))
    throw std::runtime_error("cannot stat source file: " + source_path);
  h.granularity = static_cast<std::int32_t>(stream.granularity);
  h.n_events = stream.events.size();
  h.n_nodes = stream.node_universe.size();
  h.n_dsts = stream.dst_universe.size();

  std::ofstream out(cache_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write stream cache: " + cache_path);
  out.write(reinterpret_cast<const char*>(&h), sizeof(h));
  out.write(reinterpret_cast<const char*>(stream.events.data()),
            static_cast<std::streamsize>(stream.events.size() * sizeof(Event)));
  out.write(reinterpret_cast<const char*>(stream.node_universe.data()),
            static_cast<std::streamsize>(stream.node_universe.size() * sizeof(NodeId)));
  out.write(reinterpret_cast<const char*>(stream.dst_universe.data()),
            static_cast<std::streamsize>(stream.dst_universe.size() * sizeof(NodeId)));
  if (!out) throw std::runtime_error("short write to stream cache: " + cache_path);
}

bool load_stream_cache(const std::string& cache_path, const std::string& source_path,
                       EdgeStream& out) {
  std::ifstream in(cache_path, std::ios::binary);
  if (!in) return false;
  CacheHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (!in || std::memcmp(h.magic, kCacheMagic, sizeof(h.magic)) != 0) return false;
  std::uint64_t size;
  std::int64_t mtime;
  if (!source_signature(source_path, size, mtime)) return false;
  if (size != h.source_size || mtime != h.source_mtime) return false;

  out.granularity = static_cast<Granularity>(h.granularity);
  out.events.resize(h.n_events);
  out.node_universe.resize(h.n_nodes);
  out.dst_universe.resize(h.n_dsts);
  in.read(reinterpret_cast<char*>(out.events.data()),
          static_cast<std::streamsize>(h.n_events * sizeof(Event)));
  in.read(reinterpret_cast<char*>(out.node_universe.data()),
          static_cast<std::streamsize>(h.n_nodes * sizeof(NodeId)));
  in.read(reinterpret_cast<char*>(out.dst_universe.data()),
          static_cast<std::streamsize>(h.n_dsts * sizeof(NodeId)));
  return static_cast<bool>(in);
}

}  // namespace tgbench
