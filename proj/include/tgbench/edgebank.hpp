#pragma once

#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tgbench/edge_stream.hpp"
#include "tgbench/predictor.hpp"
#include "tgbench/types.hpp"

namespace tgbench {

enum class EdgeBankVariant { infinite_memory, time_window };

// Pure memorization state: the set of seen edges with their most recent
// bucketed timestamps.
struct EdgeBankMemory {
  std::unordered_map<EdgeKey, Timestamp> last_seen;
  EdgeBankVariant variant = EdgeBankVariant::infinite_memory;
  Timestamp window_seconds = 0;  // > 0 iff time_window
};

// Populates last_seen from all warmup events (later occurrences overwrite).
// For the time_window variant the window is sized to the validation span.
// An empty warmup yields an empty memory (every score 0).
EdgeBankMemory init_memory(const EdgeStream& warmup, EdgeBankVariant variant,
                           Timestamp val_span_seconds);

// infinite_memory: 1.0 iff the edge was ever seen. time_window: 1.0 iff seen
// and now - last_seen <= window.
std::vector<double> score(const EdgeBankMemory& memory,
                          std::span<const std::pair<NodeId, NodeId>> candidates,
                          Timestamp now);

// last_seen[(src,dst)] = max(previous, t_bucketed) per observed event.
void update(EdgeBankMemory& memory, std::span<const Event> observed);

class EdgeBankPredictor : public Predictor {
 public:
  explicit EdgeBankPredictor(EdgeBankVariant variant) : variant_(variant) {}

  void init(const EdgeStream& warmup, Granularity train_granularity,
            Timestamp val_span_seconds) override;
  std::vector<double> score_batch(const std::vector<std::pair<NodeId, NodeId>>& candidates,
                                  Timestamp now) override;
  void update(std::span<const Event> observed_positives) override;
  std::string name() const override;

  const EdgeBankMemory& memory() const { return memory_; }

 private:
  EdgeBankVariant variant_;
  EdgeBankMemory memory_;
};

}  // namespace tgbench
