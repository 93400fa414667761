#include "tgbench/splitter.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tgbench {

SplitBoundaries compute_boundaries(const EdgeStream& stream) {
  if (stream.empty())
    throw std::invalid_argument("compute_boundaries: empty stream");

  SplitBoundaries b;
  const Timestamp t_min = stream.min_t_orig();
  const Timestamp t_max = stream.max_t_orig();
  b.day0 = bucket_start(t_min, kSecondsPerDay) / kSecondsPerDay;
  const std::int64_t last_day = bucket_start(t_max, kSecondsPerDay) / kSecondsPerDay;
  b.n_days = static_cast<int>(last_day - b.day0 + 1);
  if (b.n_days < 6)
    throw std::invalid_argument("dataset spans " + std::to_string(b.n_days) +
                                " calendar days; need at least 6 for a 2/3-1/6-1/6 split");

  b.train_days = (2 * b.n_days) / 3;
  b.val_days = b.n_days / 6;
  b.test_days = b.n_days - b.train_days - b.val_days;
  b.train_end_t = (b.day0 + b.train_days) * kSecondsPerDay;
  b.val_end_t = (b.day0 + b.train_days + b.val_days) * kSecondsPerDay;
  return b;
}

namespace {

void rebuild_universes(EdgeStream& s) {
  std::vector<NodeId> nodes, dsts;
  nodes.reserve(s.events.size() / 4 + 1);
  dsts.reserve(s.events.size() / 4 + 1);
  for (const auto& e : s.events) {
    nodes.push_back(e.src);
    nodes.push_back(e.dst);
    dsts.push_back(e.dst);
  }
  auto dedupe = [](std::vector<NodeId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(nodes);
  dedupe(dsts);
  s.node_universe = std::move(nodes);
  s.dst_universe = std::move(dsts);
}

// Filtering a (t_bucketed, seq)-sorted sequence keeps it sorted; only the
// universes need rebuilding.
template <typename Pred>
EdgeStream filter_stream(const EdgeStream& stream, Pred keep) {
  EdgeStream out;
  out.granularity = stream.granularity;
  for (const auto& e : stream.events) {
    if (keep(e)) out.events.push_back(e);
  }
  rebuild_universes(out);
  return out;
}

EdgeStream slice_stream(const EdgeStream& stream, std::size_t begin, std::size_t end) {
  EdgeStream out;
  out.granularity = stream.granularity;
  out.events.assign(stream.events.begin() + static_cast<std::ptrdiff_t>(begin),
                    stream.events.begin() + static_cast<std::ptrdiff_t>(end));
  rebuild_universes(out);
  return out;
}

}  // namespace

DatasetSplit split(const EdgeStream& stream, const SplitBoundaries& b) {
  DatasetSplit out;
  out.boundaries = b;
  out.train = filter_stream(stream, [&](const Event& e) { return e.t_orig < b.train_end_t; });
  out.val = filter_stream(stream, [&](const Event& e) {
    return e.t_orig >= b.train_end_t && e.t_orig < b.val_end_t;
  });
  out.test = filter_stream(stream, [&](const Event& e) { return e.t_orig >= b.val_end_t; });

  if (out.train.empty()) throw std::invalid_argument("split: empty train segment");
  if (out.val.empty()) throw std::invalid_argument("split: empty val segment");
  if (out.test.empty()) throw std::invalid_argument("split: empty test segment");
  return out;
}

void ChronoSplit::require_nonempty() const {
  if (train.empty()) throw std::invalid_argument("chronological split: empty train segment");
  if (val.empty()) throw std::invalid_argument("chronological split: empty val segment");
  if (test.empty()) throw std::invalid_argument("chronological split: empty test segment");
}

ChronoSplit chronological_split(const EdgeStream& stream) {
  if (stream.empty())
    throw std::invalid_argument("chronological_split: empty stream");

  const std::size_t n = stream.size();
  // Integer arithmetic keeps the 0.7 / 0.85 ordinals exact: the event at
  // 0-based position floor(0.7 n) is the last train event.
  std::size_t i1 = (7 * n) / 10 + 1;
  std::size_t i2 = (85 * n) / 100 + 1;

  const auto& ev = stream.events;
  while (i1 < n && ev[i1].t_bucketed == ev[i1 - 1].t_bucketed) ++i1;
  i2 = std::max(i2, i1);
  while (i2 < n && ev[i2].t_bucketed == ev[i2 - 1].t_bucketed) ++i2;

  ChronoSplit out;
  out.train = slice_stream(stream, 0, i1);
  out.val = slice_stream(stream, i1, i2);
  out.test = slice_stream(stream, i2, n);
  return out;
}

namespace {

std::string describe_event(const Event& e) {
  std::ostringstream oss;
  oss << "event (src=" << e.src << ", dst=" << e.dst << ", t=" << e.t_orig
      << ", seq=" << e.seq << ")";
  return oss.str();
}

}  // namespace

LeakageReport verify_no_leakage(const std::vector<const DatasetSplit*>& splits) {
  LeakageReport report;
  if (splits.empty()) {
    report.detail = "no splits supplied; vacuous pass";
    return report;
  }

  const DatasetSplit& ref = *splits.front();
  for (std::size_t i = 0; i < splits.size(); ++i) {
    const DatasetSplit& s = *splits[i];
    if (s.boundaries.train_end_t != ref.boundaries.train_end_t ||
        s.boundaries.val_end_t != ref.boundaries.val_end_t) {
      report.passed = false;
      report.detail = "split #" + std::to_string(i) + " has different boundary timestamps";
      return report;
    }
    if (s.train.size() != ref.train.size() || s.val.size() != ref.val.size() ||
        s.test.size() != ref.test.size()) {
      report.passed = false;
      report.detail = "split #" + std::to_string(i) +
                      " has different per-segment counts (train/val/test " +
                      std::to_string(s.train.size()) + "/" + std::to_string(s.val.size()) +
                      "/" + std::to_string(s.test.size()) + " vs " +
                      std::to_string(ref.train.size()) + "/" + std::to_string(ref.val.size()) +
                      "/" + std::to_string(ref.test.size()) + ")";
      return report;
    }
    for (const auto& e : s.train.events) {
      if (e.t_orig >= s.boundaries.train_end_t) {
        report.passed = false;
        report.detail = "split #" + std::to_string(i) + ": train " + describe_event(e) +
                        " at or past the train boundary";
        return report;
      }
    }
    for (const auto& e : s.val.events) {
      if (e.t_orig < s.boundaries.train_end_t || e.t_orig >= s.boundaries.val_end_t) {
        report.passed = false;
        report.detail = "split #" + std::to_string(i) + ": val " + describe_event(e) +
                        " outside the validation window";
        return report;
      }
    }
    for (const auto& e : s.test.events) {
      if (e.t_orig < s.boundaries.val_end_t) {
        report.passed = false;
        report.detail = "split #" + std::to_string(i) + ": test " + describe_event(e) +
                        " before the test boundary";
        return report;
      }
    }
  }

  report.detail = "checked " + std::to_string(splits.size()) + " split(s): boundaries, counts, "
                  "and segment ranges agree";
  return report;
}

void write_split_manifest(const DatasetSplit& s, const std::string& csv_path,
                          const std::string& json_path) {
  const SplitBoundaries& b = s.boundaries;
  {
    std::ofstream out(csv_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write split manifest: " + csv_path);
    out << "split,day_start,day_end,n_events\n";
    out << "train," << b.day0 << "," << (b.day0 + b.train_days - 1) << "," << s.train.size()
        << "\n";
    out << "val," << (b.day0 + b.train_days) << ","
        << (b.day0 + b.train_days + b.val_days - 1) << "," << s.val.size() << "\n";
    out << "test," << (b.day0 + b.train_days + b.val_days) << ","
        << (b.day0 + b.n_days - 1) << "," << s.test.size() << "\n";
  }
  {
    nlohmann::json j;
    j["day0"] = b.day0;
    j["n_days"] = b.n_days;
    j["train_days"] = b.train_days;
    j["val_days"] = b.val_days;
    j["test_days"] = b.test_days;
    j["train_end_t"] = b.train_end_t;
    j["val_end_t"] = b.val_end_t;
    j["n_train"] = s.train.size();
    j["n_val"] = s.val.size();
    j["n_test"] = s.test.size();
    std::ofstream out(json_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write split summary: " + json_path);
    out << j.dump(2) << "\n";
  }
}

}  // namespace tgbench
