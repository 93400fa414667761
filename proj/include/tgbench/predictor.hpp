#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tgbench/edge_stream.hpp"
#include "tgbench/types.hpp"

namespace tgbench {

// Contract every evaluated method satisfies. The harness drives it strictly
// as init once, then per batch score_batch followed by update, so a method
// never sees a positive before scoring it.
class Predictor {
 public:
  virtual ~Predictor() = default;

  // warmup is the train+val stream already coarsened to the training
  // granularity; val_span_seconds is the raw validation duration.
  virtual void init(const EdgeStream& warmup, Granularity train_granularity,
                    Timestamp val_span_seconds) = 0;

  // Scores in [0, 1]; pure given internal state.
  virtual std::vector<double> score_batch(
      const std::vector<std::pair<NodeId, NodeId>>& candidates, Timestamp now) = 0;

  // The only mutator; observed are the just-scored batch positives.
  virtual void update(std::span<const Event> observed_positives) = 0;

  virtual std::string name() const = 0;
};

}  // namespace tgbench
