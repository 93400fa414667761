#include "tgbench/synthetic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "tgbench/rng.hpp"

namespace tgbench {

namespace {

// Largest-remainder apportionment: integer quotas summing exactly to total.
std::vector<std::uint64_t> apportion(std::uint64_t total, const std::vector<double>& weights) {
  const std::size_t n = weights.size();
  std::vector<std::uint64_t> out(n, 0);
  if (n == 0 || total == 0) return out;
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  std::vector<std::pair<double, std::size_t>> remainders(n);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double exact = static_cast<double>(total) * weights[i] / wsum;
    out[i] = static_cast<std::uint64_t>(exact);
    assigned += out[i];
    remainders[i] = {exact - static_cast<double>(out[i]), i};
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::uint64_t k = 0; assigned < total; ++k, ++assigned) out[remainders[k % n].second]++;
  return out;
}

// Inverse-CDF sampler over ranks 0..n-1 with weight (rank+1)^-alpha.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double alpha) : cdf_(n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += std::pow(static_cast<double>(i + 1), -alpha);
      cdf_[i] = acc;
    }
    for (double& c : cdf_) c /= acc;
  }

  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform01();
    return static_cast<std::size_t>(
        std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  }

  // Restricted to the first `available` ranks (debut-order availability).
  std::size_t draw_available(Rng& rng, std::size_t available) const {
    const std::size_t r = draw(rng);
    return r < available ? r : r % available;
  }

 private:
  std::vector<double> cdf_;
};

struct DayLayout {
  std::vector<std::int32_t> second_offsets;  // strictly increasing in [0, 86400)
  std::vector<std::uint8_t> frac_counts;     // extra sub-second stamps per second (0..3)
  std::vector<std::uint32_t> reps;           // duplicate rows per stamp
  std::uint64_t n_stamps = 0;
  std::uint64_t n_rows = 0;

  void index_stamps() {
    n_stamps = 0;
    for (std::size_t i = 0; i < second_offsets.size(); ++i)
      n_stamps += 1 + frac_counts[i];
    reps.assign(n_stamps, 0);
  }

  void count_rows() {
    n_rows = n_stamps;
    for (std::uint32_t r : reps) n_rows += r;
  }
};

// Ladder of sub-second offsets, ascending, base stamp excluded.
constexpr double kFracLadder[3][3] = {
    {0.5, 0.0, 0.0}, {0.25, 0.5, 0.0}, {0.25, 0.5, 0.75}};

struct SegmentSpan {
  int first_day = 0;
  int n_days = 0;
};

std::array<SegmentSpan, 3> segment_spans(int n_days) {
  const int train_days = (2 * n_days) / 3;
  const int val_days = n_days / 6;
  const int test_days = n_days - train_days - val_days;
  return {SegmentSpan{0, train_days}, SegmentSpan{train_days, val_days},
          SegmentSpan{train_days + val_days, test_days}};
}

class DatasetBuilder {
 public:
  DatasetBuilder(const SyntheticDatasetSpec& spec, const std::string& out_dir)
      : spec_(spec), out_dir_(out_dir), rng_(spec.seed) {}

  void run() {
    plan_days();
    build_edge_universe();
    assign_edges();
    emit();
  }

 private:
  std::uint32_t dst_base() const { return spec_.bipartite ? spec_.n_src_nodes : 0; }
  std::uint32_t n_dst_space() const {
    return spec_.bipartite ? spec_.n_dst_nodes : spec_.n_src_nodes;
  }

  // ---------------------------------------------------------------- days
  void plan_days() {
    const auto spans = segment_spans(spec_.n_days);
    days_.resize(static_cast<std::size_t>(spec_.n_days));

    std::array<std::uint64_t, 3> extras = spec_.segment_extras;
    if (extras[0] + extras[1] + extras[2] == 0) {
      const std::uint64_t total_extras = spec_.total_events - spec_.unique_stamps;
      std::vector<double> w(3);
      for (int k = 0; k < 3; ++k) w[k] = static_cast<double>(spec_.segment_stamps[k]);
      const auto per_segment = apportion(total_extras, w);
      for (int k = 0; k < 3; ++k) extras[k] = per_segment[k];
    }

    std::vector<std::uint64_t> stamps_per_day(days_.size(), 0);
    std::vector<std::uint64_t> extras_per_day(days_.size(), 0);
    for (int k = 0; k < 3; ++k) {
      const auto& span = spans[static_cast<std::size_t>(k)];
      const std::vector<double> flat(static_cast<std::size_t>(span.n_days), 1.0);
      std::vector<std::uint64_t> stamps;
      if (k == 2 && !spec_.test_day_stamps.empty()) {
        stamps = spec_.test_day_stamps;
        if (static_cast<int>(stamps.size()) != span.n_days)
          throw std::invalid_argument(spec_.name + ": test_day_stamps size mismatch");
      } else {
        stamps = apportion(spec_.segment_stamps[static_cast<std::size_t>(k)], flat);
      }
      std::vector<std::uint64_t> extra;
      if (k == 2 && !spec_.test_day_extras.empty()) {
        extra = spec_.test_day_extras;
      } else {
        std::vector<double> w(stamps.begin(), stamps.end());
        extra = apportion(extras[static_cast<std::size_t>(k)], w);
      }
      for (int d = 0; d < span.n_days; ++d) {
        stamps_per_day[static_cast<std::size_t>(span.first_day + d)] = stamps[static_cast<std::size_t>(d)];
        extras_per_day[static_cast<std::size_t>(span.first_day + d)] = extra[static_cast<std::size_t>(d)];
      }
    }

    // Sub-second stamp collisions (fractional datasets only).
    std::vector<std::uint64_t> collisions_per_day(days_.size(), 0);
    if (spec_.fractional) {
      const std::uint64_t collisions = spec_.unique_stamps - spec_.unique_steps;
      std::vector<double> w(stamps_per_day.begin(), stamps_per_day.end());
      collisions_per_day = apportion(collisions, w);
    }

    for (std::size_t d = 0; d < days_.size(); ++d) {
      DayLayout& day = days_[d];
      const std::uint64_t n_stamps = stamps_per_day[d];
      const std::uint64_t n_collisions = collisions_per_day[d];
      if (n_collisions >= n_stamps && n_stamps > 0)
        throw std::invalid_argument(spec_.name + ": too many sub-second collisions");
      const std::uint64_t n_seconds = n_stamps - n_collisions;
      if (n_seconds > static_cast<std::uint64_t>(kSecondsPerDay))
        throw std::invalid_argument(spec_.name + ": day over capacity");

      day.second_offsets.resize(n_seconds);
      day.frac_counts.assign(n_seconds, 0);
      for (std::uint64_t j = 0; j < n_seconds; ++j) {
        const std::int64_t lo = static_cast<std::int64_t>(j * 86400 / n_seconds);
        const std::int64_t hi = static_cast<std::int64_t>((j + 1) * 86400 / n_seconds);
        const std::uint64_t jitter = mix64(spec_.seed ^ (d * 131071 + j)) %
                                     static_cast<std::uint64_t>(std::max<std::int64_t>(1, hi - lo));
        day.second_offsets[j] = static_cast<std::int32_t>(lo + static_cast<std::int64_t>(jitter));
      }
      if (n_collisions > 0) {
        for (std::uint64_t i = 0; i < n_collisions; ++i) {
          const std::uint64_t pos = i * n_seconds / n_collisions;
          auto& c = day.frac_counts[pos];
          if (c >= 3) throw std::invalid_argument(spec_.name + ": fraction ladder exhausted");
          ++c;
        }
      }
      day.index_stamps();

      // Duplicate rows, spread evenly over the day's stamps.
      const std::uint64_t x = extras_per_day[d];
      if (x > 0 && day.n_stamps == 0)
        throw std::invalid_argument(spec_.name + ": duplicates on an empty day");
      if (day.n_stamps > 0) {
        const std::uint64_t base = x / day.n_stamps;
        const std::uint64_t rem = x % day.n_stamps;
        for (auto& r : day.reps) r = static_cast<std::uint32_t>(base);
        for (std::uint64_t i = 0; i < rem; ++i)
          day.reps[i * day.n_stamps / rem] += 1;
      }
      day.count_rows();
    }

    for (std::size_t g : spec_.guard_rows) fix_guard(g);

    row_prefix_.assign(days_.size() + 1, 0);
    for (std::size_t d = 0; d < days_.size(); ++d)
      row_prefix_[d + 1] = row_prefix_[d] + days_[d].n_rows;
    if (row_prefix_.back() != spec_.total_events)
      throw std::logic_error(spec_.name + ": row plan does not match total_events");
  }

  // Keeps rows g and g+1 on distinct stamps by shifting duplicate rows to a
  // neighbouring stamp inside the same day.
  void fix_guard(std::size_t g) {
    for (int iter = 0; iter < 4096; ++iter) {
      std::uint64_t acc = 0;
      std::size_t d = 0;
      for (; d < days_.size(); ++d) {
        if (g < acc + days_[d].n_rows) break;
        acc += days_[d].n_rows;
      }
      if (d >= days_.size()) return;          // beyond the stream
      if (g + 1 >= acc + days_[d].n_rows) return;  // next row starts a new day
      DayLayout& day = days_[d];
      std::uint64_t r = g - acc;
      std::size_t stamp = 0;
      std::uint64_t run_start = 0;
      for (; stamp < day.reps.size(); ++stamp) {
        const std::uint64_t run = 1 + day.reps[stamp];
        if (r < run_start + run) break;
        run_start += run;
      }
      const std::uint64_t run = 1 + day.reps[stamp];
      if (r + 1 >= run_start + run) return;  // g+1 already on the next stamp
      if (stamp + 1 < day.reps.size()) {
        day.reps[stamp] -= 1;
        day.reps[stamp + 1] += 1;
      } else if (stamp > 0) {
        day.reps[stamp] -= 1;
        day.reps[stamp - 1] += 1;
      } else {
        throw std::logic_error(spec_.name + ": cannot satisfy stamp guard (single-stamp day)");
      }
      day.count_rows();
    }
    throw std::logic_error(spec_.name + ": stamp guard did not converge");
  }

  // ---------------------------------------------------------------- edges
  void build_edge_universe() {
    std::unordered_set<EdgeKey> seen;
    seen.reserve(spec_.unique_edges * 2);
    auto push_pair = [&](NodeId s, NodeId d) {
      if (seen.insert(edge_key(s, d)).second) pairs_.push_back({s, d});
    };

    // Coverage head: every source and destination id occurs at least once.
    if (spec_.bipartite) {
      const std::uint32_t m = std::max(spec_.n_src_nodes, spec_.n_dst_nodes);
      for (std::uint32_t k = 0; k < m; ++k)
        push_pair(k % spec_.n_src_nodes, dst_base() + (k % spec_.n_dst_nodes));
    } else {
      for (std::uint32_t k = 0; k < spec_.n_src_nodes; ++k)
        push_pair(k, (k + 1) % spec_.n_src_nodes);
    }
    if (pairs_.size() > spec_.unique_edges)
      throw std::invalid_argument(spec_.name + ": unique_edges below node coverage");

    const std::uint64_t space = static_cast<std::uint64_t>(spec_.n_src_nodes) *
                                (spec_.bipartite ? spec_.n_dst_nodes : spec_.n_src_nodes - 1);
    if (!spec_.bipartite && 4 * spec_.unique_edges > space) {
      // Saturated graph: enumerate and shuffle instead of rejection sampling.
      std::vector<std::pair<NodeId, NodeId>> all;
      all.reserve(space);
      for (NodeId s = 0; s < spec_.n_src_nodes; ++s) {
        for (NodeId d = 0; d < spec_.n_src_nodes; ++d) {
          if (s != d && !seen.count(edge_key(s, d))) all.push_back({s, d});
        }
      }
      for (std::size_t i = 0; i + 1 < all.size(); ++i) {
        const std::size_t j = i + rng_.bounded(all.size() - i);
        std::swap(all[i], all[j]);
      }
      for (std::size_t i = 0; pairs_.size() < spec_.unique_edges; ++i)
        pairs_.push_back(all[i]);
    } else {
      ZipfSampler src_zipf(spec_.n_src_nodes, spec_.zipf_alpha);
      ZipfSampler dst_zipf(n_dst_space(), spec_.zipf_alpha);
      while (pairs_.size() < spec_.unique_edges) {
        const NodeId s = static_cast<NodeId>(src_zipf.draw(rng_));
        const NodeId d = dst_base() + static_cast<NodeId>(dst_zipf.draw(rng_));
        if (!spec_.bipartite && s == d) continue;
        push_pair(s, d);
      }
    }

    // Cohorts by first-occurrence segment.
    const std::uint64_t u_test = spec_.test_new_edges;
    const std::uint64_t u_val = spec_.val_new_edges;
    if (u_test + u_val >= spec_.unique_edges)
      throw std::invalid_argument(spec_.name + ": cohort sizes exceed unique_edges");
    const std::uint64_t u_train = spec_.unique_edges - u_val - u_test;

    train_cohort_.resize(u_train);
    std::iota(train_cohort_.begin(), train_cohort_.end(), 0u);
    shuffle(train_cohort_);
    val_cohort_.resize(u_val);
    std::iota(val_cohort_.begin(), val_cohort_.end(), static_cast<std::uint32_t>(u_train));
    shuffle(val_cohort_);
    test_cohort_.resize(u_test);
    std::iota(test_cohort_.begin(), test_cohort_.end(),
              static_cast<std::uint32_t>(u_train + u_val));
    shuffle(test_cohort_);

    last_day_.assign(spec_.unique_edges, -1);
  }

  void shuffle(std::vector<std::uint32_t>& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const std::size_t j = i + rng_.bounded(v.size() - i);
      std::swap(v[i], v[j]);
    }
  }

  // ---------------------------------------------------------------- slots
  struct SegmentRows {
    std::uint64_t begin = 0;  // global row index
    std::uint64_t size = 0;
  };

  SegmentRows segment_rows(int k) const {
    const auto spans = segment_spans(spec_.n_days);
    const auto& span = spans[static_cast<std::size_t>(k)];
    SegmentRows r;
    r.begin = row_prefix_[static_cast<std::size_t>(span.first_day)];
    r.size = row_prefix_[static_cast<std::size_t>(span.first_day + span.n_days)] - r.begin;
    return r;
  }

  int day_of_row(std::uint64_t row) const {
    const auto it = std::upper_bound(row_prefix_.begin(), row_prefix_.end(), row);
    return static_cast<int>(it - row_prefix_.begin()) - 1;
  }

  // Places `count` markers evenly over [first, first+extent), nudging forward
  // past occupied slots.
  static void place_evenly(std::vector<std::uint32_t>& slots, std::uint64_t first,
                           std::uint64_t extent, std::uint64_t count, std::uint32_t marker) {
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t pos = first + (extent == 0 ? 0 : k * extent / std::max<std::uint64_t>(count, 1));
      while (pos < slots.size() && slots[pos] != kFree) ++pos;
      if (pos >= slots.size()) {
        pos = first;
        while (pos < slots.size() && slots[pos] != kFree) ++pos;
        if (pos >= slots.size())
          throw std::logic_error("fixture generator: segment ran out of slots");
      }
      slots[pos] = marker;
    }
  }

  static constexpr std::uint32_t kFree = 0xffffffffu;
  static constexpr std::uint32_t kDebut = 0xfffffffeu;
  static constexpr std::uint32_t kStale = 0xfffffffdu;
  static constexpr std::uint32_t kNewRecur = 0xfffffffcu;

  void assign_edges() {
    slot_edge_.assign(spec_.total_events, kFree);

    assign_train();
    assign_val();
    assign_test();

    for (std::uint32_t e : slot_edge_) {
      if (e >= spec_.unique_edges) throw std::logic_error(spec_.name + ": unassigned slot");
    }
  }

  void touch(std::uint32_t edge, std::uint64_t global_row) {
    last_day_[edge] = day_of_row(global_row);
  }

  void assign_train() {
    const SegmentRows seg = segment_rows(0);
    if (train_cohort_.size() > seg.size)
      throw std::invalid_argument(spec_.name + ": train segment smaller than its cohort");

    // Core edges debut first so recurrence draws have a warm pool.
    const std::size_t core = std::min<std::size_t>(spec_.train_core, train_cohort_.size());
    std::vector<std::uint32_t> slots(seg.size, kFree);
    place_evenly(slots, 0, seg.size, train_cohort_.size(), kDebut);

    ZipfSampler zipf(std::max<std::size_t>(core, 1), spec_.zipf_alpha);
    std::size_t debuted = 0;
    for (std::uint64_t s = 0; s < seg.size; ++s) {
      std::uint32_t edge;
      if (slots[s] == kDebut) {
        edge = train_cohort_[debuted++];
      } else {
        const std::size_t avail = std::min(debuted, core);
        edge = train_cohort_[zipf.draw_available(rng_, std::max<std::size_t>(avail, 1))];
      }
      slot_edge_[seg.begin + s] = edge;
      touch(edge, seg.begin + s);
    }
    core_size_ = core;
  }

  void assign_val() {
    const SegmentRows seg = segment_rows(1);
    if (val_cohort_.size() > seg.size)
      throw std::invalid_argument(spec_.name + ": val segment smaller than its cohort");

    const std::size_t carry = std::min<std::size_t>(spec_.val_carry, core_size_);
    val_hot_.clear();
    val_hot_.insert(val_hot_.end(), train_cohort_.begin(),
                    train_cohort_.begin() + static_cast<std::ptrdiff_t>(carry));
    val_hot_.insert(val_hot_.end(), val_cohort_.begin(), val_cohort_.end());

    std::vector<std::uint32_t> slots(seg.size, kFree);
    place_evenly(slots, 0, seg.size, val_cohort_.size(), kDebut);

    ZipfSampler zipf(std::max<std::size_t>(val_hot_.size(), 1), spec_.zipf_alpha);
    std::size_t debuted = 0;
    for (std::uint64_t s = 0; s < seg.size; ++s) {
      std::uint32_t edge;
      if (slots[s] == kDebut) {
        edge = val_cohort_[debuted++];
      } else {
        const std::size_t avail = std::max<std::size_t>(carry + debuted, 1);
        edge = val_hot_[zipf.draw_available(rng_, avail)];
      }
      slot_edge_[seg.begin + s] = edge;
      touch(edge, seg.begin + s);
    }
  }

  void assign_test() {
    const SegmentRows seg = segment_rows(2);
    const std::uint64_t debuts = test_cohort_.size();
    const std::uint64_t planned =
        debuts + spec_.test_stale_events + spec_.test_new_recur_events;
    if (planned > seg.size)
      throw std::invalid_argument(spec_.name + ": test segment smaller than planned events");

    // Dormant edges: last seen well before the test boundary and not carried.
    const auto spans = segment_spans(spec_.n_days);
    const int stale_cutoff = spans[2].first_day - 10;
    std::vector<std::uint32_t> stale_pool;
    for (std::uint32_t e : train_cohort_) {
      if (last_day_[e] >= 0 && last_day_[e] <= stale_cutoff) stale_pool.push_back(e);
    }
    shuffle(stale_pool);
    const std::uint64_t stale_quota =
        std::min<std::uint64_t>(spec_.test_stale_events, stale_pool.size());

    const std::uint64_t region = std::max<std::uint64_t>(
        static_cast<std::uint64_t>(spec_.test_frontload * static_cast<double>(seg.size)), 1);

    std::vector<std::uint32_t> slots(seg.size, kFree);
    place_evenly(slots, 0, std::min(region, seg.size), debuts, kDebut);
    place_evenly(slots, 0, seg.size, stale_quota, kStale);
    if (region < seg.size)
      place_evenly(slots, region, seg.size - region, spec_.test_new_recur_events, kNewRecur);

    const std::size_t carry = std::min<std::size_t>(spec_.test_carry, val_hot_.size());
    ZipfSampler hot_zipf(std::max<std::size_t>(carry, 1), spec_.zipf_alpha);
    ZipfSampler new_zipf(std::max<std::size_t>(test_cohort_.size(), 1), spec_.zipf_alpha);

    std::size_t debuted = 0;
    std::size_t stale_used = 0;
    for (std::uint64_t s = 0; s < seg.size; ++s) {
      std::uint32_t edge;
      switch (slots[s]) {
        case kDebut:
          edge = test_cohort_[debuted++];
          break;
        case kStale:
          edge = stale_pool[stale_used++];
          break;
        case kNewRecur:
          edge = test_cohort_[new_zipf.draw_available(rng_, std::max<std::size_t>(debuted, 1))];
          break;
        default:
          edge = val_hot_[hot_zipf.draw_available(rng_, std::max<std::size_t>(carry, 1))];
          break;
      }
      slot_edge_[seg.begin + s] = edge;
      touch(edge, seg.begin + s);
    }
  }

  // ---------------------------------------------------------------- output
  void emit() const {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir_);
    const std::string raw_path = fixture_path(out_dir_, spec_.name, false);
    const std::string dedup_path = fixture_path(out_dir_, spec_.name, true);
    std::FILE* raw = std::fopen(raw_path.c_str(), "w");
    std::FILE* dedup = std::fopen(dedup_path.c_str(), "w");
    if (!raw || !dedup) throw std::runtime_error("cannot write fixtures in " + out_dir_);

    if (spec_.jodie_format) {
      std::fputs("user_id,item_id,timestamp,state_label\n", raw);
      std::fputs("user_id,item_id,timestamp,state_label\n", dedup);
    }

    char buf[96];
    std::uint64_t row = 0;
    for (std::size_t d = 0; d < days_.size(); ++d) {
      const DayLayout& day = days_[d];
      const Timestamp day_base = (spec_.day0 + static_cast<std::int64_t>(d)) * kSecondsPerDay;
      std::size_t stamp_idx = 0;
      for (std::size_t j = 0; j < day.second_offsets.size(); ++j) {
        const Timestamp sec = day_base + day.second_offsets[j];
        const int fracs = day.frac_counts[j];
        for (int f = 0; f <= fracs; ++f) {
          const double frac = f == 0 ? 0.0 : kFracLadder[fracs - 1][f - 1];
          const std::uint32_t rep = day.reps[stamp_idx];
          for (std::uint32_t r = 0; r <= rep; ++r, ++row) {
            const auto [src, dst] = pairs_[slot_edge_[row]];
            int len;
            if (spec_.jodie_format) {
              const std::uint32_t item = dst - dst_base();
              if (spec_.fractional) {
                len = std::snprintf(buf, sizeof(buf), "%u,%u,%lld.%02d,0\n", src, item,
                                    static_cast<long long>(sec),
                                    static_cast<int>(frac * 100.0 + 0.5));
              } else {
                len = std::snprintf(buf, sizeof(buf), "%u,%u,%lld,0\n", src, item,
                                    static_cast<long long>(sec));
              }
            } else {
              len = std::snprintf(buf, sizeof(buf), "%u,%u,%lld\n", src, dst,
                                  static_cast<long long>(sec));
            }
            std::fwrite(buf, 1, static_cast<std::size_t>(len), raw);
            if (r == 0) std::fwrite(buf, 1, static_cast<std::size_t>(len), dedup);
          }
          ++stamp_idx;
        }
      }
    }

    if (std::fclose(raw) != 0 || std::fclose(dedup) != 0)
      throw std::runtime_error("short write while emitting fixtures in " + out_dir_);
  }

  const SyntheticDatasetSpec& spec_;
  std::string out_dir_;
  Rng rng_;

  std::vector<DayLayout> days_;
  std::vector<std::uint64_t> row_prefix_;

  std::vector<std::pair<NodeId, NodeId>> pairs_;
  std::vector<std::uint32_t> train_cohort_, val_cohort_, test_cohort_;
  std::vector<std::uint32_t> val_hot_;
  std::vector<std::int32_t> last_day_;
  std::vector<std::uint32_t> slot_edge_;
  std::size_t core_size_ = 0;
};

}  // namespace

std::string fixture_path(const std::string& dir, const std::string& name, bool dedup) {
  return dir + "/" + name + (dedup ? ".dedup.csv" : ".csv");
}

void generate_dataset(const SyntheticDatasetSpec& spec, const std::string& out_dir) {
  DatasetBuilder(spec, out_dir).run();
}

const std::vector<SyntheticDatasetSpec>& builtin_benchmark_specs() {
  static const std::vector<SyntheticDatasetSpec> specs = [] {
    std::vector<SyntheticDatasetSpec> v;

    {
      SyntheticDatasetSpec s;
      s.name = "wikipedia";
      s.bipartite = true;
      s.n_src_nodes = 8227;
      s.n_dst_nodes = 1000;
      s.day0 = 18904;  // 26 days inside one 30-day bucket, 4 days in the next
      s.n_days = 30;
      s.total_events = 157474;
      s.unique_edges = 18257;
      s.unique_steps = 152757;
      s.unique_stamps = 152757;
      s.segment_stamps = {99701, 26697, 26359};
      s.segment_extras = {3079, 824, 814};
      s.test_day_stamps = {23022, 845, 838, 832, 822};
      s.test_day_extras = {500, 79, 79, 78, 78};
      s.val_new_edges = 1300;
      s.test_new_edges = 4400;
      s.train_core = 3000;
      s.val_carry = 1600;
      s.test_carry = 1800;
      s.test_stale_events = 1550;
      s.test_new_recur_events = 800;
      s.test_frontload = 0.17;
      s.jodie_format = true;
      s.guard_rows = {110231, 133852};
      s.seed = 11;
      v.push_back(s);
    }
    {
      SyntheticDatasetSpec s;
      s.name = "reddit";
      s.bipartite = true;
      s.n_src_nodes = 10000;
      s.n_dst_nodes = 984;
      s.day0 = 19250;
      s.n_days = 30;
      s.total_events = 672447;
      s.unique_edges = 78516;
      s.unique_steps = 588918;
      s.unique_stamps = 669065;
      s.segment_stamps = {432543, 110004, 126518};
      s.fractional = true;
      s.val_new_edges = 5000;
      s.test_new_edges = 13000;
      s.train_core = 6000;
      s.val_carry = 3000;
      s.test_carry = 3500;
      s.test_stale_events = 3000;
      s.test_new_recur_events = 2500;
      s.test_frontload = 0.3;
      s.jodie_format = true;
      s.seed = 12;
      v.push_back(s);
    }
    {
      SyntheticDatasetSpec s;
      s.name = "mooc";
      s.bipartite = true;
      s.n_src_nodes = 7047;
      s.n_dst_nodes = 97;
      s.day0 = 19400;
      s.n_days = 30;
      s.total_events = 411749;
      s.unique_edges = 178443;
      s.unique_steps = 345600;
      s.unique_stamps = 345600;
      s.segment_stamps = {216364, 65815, 63421};
      s.val_new_edges = 34000;
      s.test_new_edges = 32500;
      s.train_core = 8000;
      s.val_carry = 3000;
      s.test_carry = 3000;
      s.test_stale_events = 4000;
      s.test_new_recur_events = 3000;
      s.test_frontload = 0.35;
      s.jodie_format = true;
      s.seed = 13;
      v.push_back(s);
    }
    {
      SyntheticDatasetSpec s;
      s.name = "lastfm";
      s.bipartite = true;
      s.n_src_nodes = 980;
      s.n_dst_nodes = 1000;
      s.day0 = 17000;
      s.n_days = 1825;
      s.total_events = 1293103;
      s.unique_edges = 154993;
      s.unique_steps = 1283614;
      s.unique_stamps = 1283614;
      s.segment_stamps = {916312, 340736, 26566};
      s.val_new_edges = 30000;
      s.test_new_edges = 3200;
      s.train_core = 5000;
      s.val_carry = 2500;
      s.test_carry = 2000;
      s.test_stale_events = 1500;
      s.test_new_recur_events = 600;
      s.test_frontload = 0.3;
      s.jodie_format = true;
      s.seed = 14;
      v.push_back(s);
    }
    {
      SyntheticDatasetSpec s;
      s.name = "enron";
      s.bipartite = false;
      s.n_src_nodes = 184;
      s.day0 = 11000;
      s.n_days = 1095;
      s.total_events = 125235;
      s.unique_edges = 3125;
      s.unique_steps = 22632;
      s.unique_stamps = 22632;
      s.segment_stamps = {6224, 6357, 10051};
      s.val_new_edges = 300;
      s.test_new_edges = 500;
      s.train_core = 800;
      s.val_carry = 500;
      s.test_carry = 500;
      s.test_stale_events = 400;
      s.test_new_recur_events = 1500;
      s.test_frontload = 0.3;
      s.seed = 15;
      v.push_back(s);
    }
    {
      SyntheticDatasetSpec s;
      s.name = "socialevo";
      s.bipartite = false;
      s.n_src_nodes = 74;
      s.day0 = 14200;
      s.n_days = 240;
      s.total_events = 2099519;
      s.unique_edges = 4486;
      s.unique_steps = 565932;
      s.unique_stamps = 565932;
      s.segment_stamps = {268758, 136849, 160325};
      s.val_new_edges = 150;
      s.test_new_edges = 250;
      s.train_core = 2500;
      s.val_carry = 1800;
      s.test_carry = 1600;
      s.test_stale_events = 600;
      s.test_new_recur_events = 5000;
      s.test_frontload = 0.3;
      s.seed = 16;
      v.push_back(s);
    }
    {
      SyntheticDatasetSpec s;
      s.name = "uci";
      s.bipartite = false;
      s.n_src_nodes = 1899;
      s.day0 = 13000;
      s.n_days = 196;
      s.total_events = 59835;
      s.unique_edges = 20296;
      s.unique_steps = 58911;
      s.unique_stamps = 58911;
      s.segment_stamps = {55202, 2402, 1307};
      s.val_new_edges = 700;
      s.test_new_edges = 600;
      s.train_core = 3000;
      s.val_carry = 400;
      s.test_carry = 250;
      s.test_stale_events = 150;
      s.test_new_recur_events = 120;
      s.test_frontload = 0.5;
      s.seed = 17;
      v.push_back(s);
    }

    return v;
  }();
  return specs;
}

SyntheticDatasetSpec probe_stream_spec() {
  SyntheticDatasetSpec s;
  s.name = "probe10k";
  s.bipartite = false;
  s.n_src_nodes = 200;
  s.day0 = 18000;
  s.n_days = 20;
  s.total_events = 10000;
  s.unique_edges = 1500;
  s.unique_steps = 9700;
  s.unique_stamps = 9700;
  s.segment_stamps = {6400, 1600, 1700};
  s.val_new_edges = 120;
  s.test_new_edges = 200;
  s.train_core = 400;
  s.val_carry = 200;
  s.test_carry = 150;
  s.test_stale_events = 100;
  s.test_new_recur_events = 80;
  s.test_frontload = 0.3;
  s.seed = 42;
  return s;
}

std::string ensure_benchmark_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto present = [&](const std::string& name) {
    return fs::exists(fixture_path(dir, name, false)) &&
           fs::exists(fixture_path(dir, name, true));
  };
  for (const auto& spec : builtin_benchmark_specs()) {
    if (!present(spec.name)) generate_dataset(spec, dir);
  }
  const auto probe = probe_stream_spec();
  if (!present(probe.name)) generate_dataset(probe, dir);
  return dir;
}

}  // namespace tgbench
