#include "tgbench/neg_sampling.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace tgbench {

Strategy strategy_from_label(const std::string& name) {
  if (name == "random" || name == "rand") return Strategy::random;
  if (name == "historical" || name == "hist") return Strategy::historical;
  if (name == "inductive" || name == "indu") return Strategy::inductive;
  throw std::invalid_argument("unknown negative sampling strategy: " + name);
}

const char* label(Strategy s) {
  switch (s) {
    case Strategy::random: return "random";
    case Strategy::historical: return "historical";
    case Strategy::inductive: return "inductive";
  }
  return "?";
}

Segment segment_from_label(const std::string& name) {
  if (name == "val") return Segment::val;
  if (name == "test") return Segment::test;
  throw std::invalid_argument("unknown evaluation segment: " + name);
}

const char* label(Segment s) { return s == Segment::val ? "val" : "test"; }

namespace {

void collect_keys(const EdgeStream& s, std::unordered_set<EdgeKey>& out) {
  for (const auto& e : s.events) out.insert(e.key());
}

std::vector<EdgeKey> sorted_keys(const std::unordered_set<EdgeKey>& set) {
  std::vector<EdgeKey> v(set.begin(), set.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<NodeId> merge_universe(const std::vector<NodeId>& a, const std::vector<NodeId>& b,
                                   const std::vector<NodeId>& c) {
  std::vector<NodeId> out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

NegativePools build_pools(const DatasetSplit& split, Segment segment) {
  std::unordered_set<EdgeKey> seen_before;
  std::unordered_set<EdgeKey> segment_edges;
  if (segment == Segment::test) {
    collect_keys(split.train, seen_before);
    collect_keys(split.val, seen_before);
    collect_keys(split.test, segment_edges);
  } else {
    collect_keys(split.train, seen_before);
    collect_keys(split.val, segment_edges);
  }

  NegativePools pools;
  pools.historical = sorted_keys(seen_before);
  pools.inductive.reserve(segment_edges.size());
  for (EdgeKey k : segment_edges) {
    if (!seen_before.count(k)) pools.inductive.push_back(k);
  }
  std::sort(pools.inductive.begin(), pools.inductive.end());
  pools.node_universe = merge_universe(split.train.node_universe, split.val.node_universe,
                                       split.test.node_universe);
  pools.dst_universe = merge_universe(split.train.dst_universe, split.val.dst_universe,
                                      split.test.dst_universe);
  return pools;
}

BatchNegativeSampler::BatchNegativeSampler(const SamplerConfig& cfg, const NegativePools& pools)
    : cfg_(cfg), pools_(&pools), rng_(cfg.seed) {
  if (cfg.negatives_per_positive < 1)
    throw std::invalid_argument("negatives_per_positive must be >= 1");
  if (cfg.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
}

NegativeDraw BatchNegativeSampler::draw_random(const std::vector<EdgeKey>& banned_sorted,
                                               bool as_fallback) {
  const auto& nodes = pools_->node_universe;
  const auto& dsts = pools_->dst_universe;
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    const NodeId src = nodes[rng_.bounded(nodes.size())];
    const NodeId dst = dsts[rng_.bounded(dsts.size())];
    if (!std::binary_search(banned_sorted.begin(), banned_sorted.end(), edge_key(src, dst)))
      return NegativeDraw{src, dst, as_fallback};
  }
  throw std::runtime_error(
      "random negative sampling failed: candidate space exhausted by batch positives");
}

std::vector<NegativeDraw> BatchNegativeSampler::sample(std::span<const Event> positives) {
  if (positives.empty()) throw std::invalid_argument("sample: empty positive batch");
  if (pools_->node_universe.empty() || pools_->dst_universe.empty())
    throw std::invalid_argument("sample: empty node universe");

  std::vector<EdgeKey> banned;
  banned.reserve(positives.size());
  for (const auto& e : positives) banned.push_back(e.key());
  std::sort(banned.begin(), banned.end());
  banned.erase(std::unique(banned.begin(), banned.end()), banned.end());

  const std::size_t request =
      positives.size() * static_cast<std::size_t>(cfg_.negatives_per_positive);
  std::vector<NegativeDraw> out;
  out.reserve(request);

  if (cfg_.strategy == Strategy::random) {
    for (std::size_t i = 0; i < request; ++i) out.push_back(draw_random(banned, false));
    total_ += request;
    return out;
  }

  const std::vector<EdgeKey>& pool =
      cfg_.strategy == Strategy::historical ? pools_->historical : pools_->inductive;

  std::size_t banned_in_pool = 0;
  for (EdgeKey k : banned) {
    if (std::binary_search(pool.begin(), pool.end(), k)) ++banned_in_pool;
  }
  const std::size_t eligible = pool.size() - banned_in_pool;

  auto is_banned = [&](EdgeKey k) {
    return std::binary_search(banned.begin(), banned.end(), k);
  };

  if (eligible <= request) {
    // Exhaust the pool, then fall back to random draws for the shortfall.
    for (EdgeKey k : pool) {
      if (!is_banned(k)) out.push_back(NegativeDraw{key_src(k), key_dst(k), false});
    }
    while (out.size() < request) {
      out.push_back(draw_random(banned, true));
      ++fallback_;
    }
  } else if (request * 2 >= eligible) {
    // Dense request: partial Fisher-Yates over the eligible keys.
    std::vector<EdgeKey> keys;
    keys.reserve(eligible);
    for (EdgeKey k : pool) {
      if (!is_banned(k)) keys.push_back(k);
    }
    for (std::size_t i = 0; i < request; ++i) {
      const std::size_t j = i + rng_.bounded(keys.size() - i);
      std::swap(keys[i], keys[j]);
      out.push_back(NegativeDraw{key_src(keys[i]), key_dst(keys[i]), false});
    }
  } else {
    // Sparse request: rejection over pool indices, without replacement.
    std::unordered_set<std::size_t> used;
    used.reserve(request * 2);
    while (out.size() < request) {
      const std::size_t idx = rng_.bounded(pool.size());
      if (used.count(idx) || is_banned(pool[idx])) continue;
      used.insert(idx);
      out.push_back(NegativeDraw{key_src(pool[idx]), key_dst(pool[idx]), false});
    }
  }

  total_ += request;
  return out;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view dataset,
                          Granularity train_g, Granularity test_g, Strategy strategy,
                          int run_index) {
  std::uint64_t h = mix64(master_seed ^ 0x746762656e636800ull);
  h = hash_combine(h, dataset);
  h = hash_combine(h, static_cast<std::uint64_t>(train_g));
  h = hash_combine(h, static_cast<std::uint64_t>(test_g));
  h = hash_combine(h, static_cast<std::uint64_t>(strategy));
  h = hash_combine(h, static_cast<std::uint64_t>(run_index));
  return h;
}

void write_negative_dump(const std::vector<NegativeRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write negatives dump: " + path);
  out << "batch_idx,src,dst,strategy,fallback\n";
  for (const auto& r : records) {
    out << r.batch_idx << ',' << r.src << ',' << r.dst << ',' << label(r.strategy) << ','
        << (r.fallback ? 1 : 0) << '\n';
  }
}

std::vector<NegativeRecord> read_negative_dump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open negatives dump: " + path);
  std::vector<NegativeRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;  // header
    NegativeRecord r;
    char strat[16] = {0};
    int fallback = 0;
    if (std::sscanf(line.c_str(), "%u,%u,%u,%15[^,],%d", &r.batch_idx, &r.src, &r.dst, strat,
                    &fallback) != 5)
      throw ParseError(line_no, "malformed negatives dump row");
    r.strategy = strategy_from_label(strat);
    r.fallback = fallback != 0;
    records.push_back(r);
  }
  return records;
}

}  // namespace tgbench
