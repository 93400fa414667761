#include "tgbench/edgebank.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgbench {

EdgeBankMemory init_memory(const EdgeStream& warmup, EdgeBankVariant variant,
                           Timestamp val_span_seconds) {
  EdgeBankMemory memory;
  memory.variant = variant;
  if (variant == EdgeBankVariant::time_window) {
    if (val_span_seconds <= 0)
      throw std::invalid_argument("time_window memory needs a positive validation span");
    memory.window_seconds = val_span_seconds;
  }
  memory.last_seen.reserve(warmup.size());
  for (const auto& e : warmup.events) {
    auto [it, inserted] = memory.last_seen.try_emplace(e.key(), e.t_bucketed);
    if (!inserted) it->second = std::max(it->second, e.t_bucketed);
  }
  return memory;
}

std::vector<double> score(const EdgeBankMemory& memory,
                          std::span<const std::pair<NodeId, NodeId>> candidates,
                          Timestamp now) {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& [src, dst] : candidates) {
    const auto it = memory.last_seen.find(edge_key(src, dst));
    if (it == memory.last_seen.end()) {
      scores.push_back(0.0);
    } else if (memory.variant == EdgeBankVariant::infinite_memory) {
      scores.push_back(1.0);
    } else {
      scores.push_back(now - it->second <= memory.window_seconds ? 1.0 : 0.0);
    }
  }
  return scores;
}

void update(EdgeBankMemory& memory, std::span<const Event> observed) {
  for (const auto& e : observed) {
    auto [it, inserted] = memory.last_seen.try_emplace(e.key(), e.t_bucketed);
    if (!inserted) it->second = std::max(it->second, e.t_bucketed);
  }
}

void EdgeBankPredictor::init(const EdgeStream& warmup, Granularity /*train_granularity*/,
                             Timestamp val_span_seconds) {
  memory_ = init_memory(warmup, variant_, val_span_seconds);
}

std::vector<double> EdgeBankPredictor::score_batch(
    const std::vector<std::pair<NodeId, NodeId>>& candidates, Timestamp now) {
  return score(memory_, candidates, now);
}

void EdgeBankPredictor::update(std::span<const Event> observed_positives) {
  tgbench::update(memory_, observed_positives);
}

std::string EdgeBankPredictor::name() const {
  return variant_ == EdgeBankVariant::infinite_memory ? "edgebank_inf" : "edgebank_tw";
}

}  // namespace tgbench
