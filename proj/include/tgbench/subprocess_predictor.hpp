#pragma once

#include <cstdio>
#include <string>

#include "tgbench/predictor.hpp"

namespace tgbench {

// Attaches an external learned predictor through a line protocol: one JSON
// object per request on the child's stdin, one JSON reply per line on its
// stdout. Disabled unless a method of the form `external:<command>` is
// configured.
//
//   {"op":"init","granularity":"second","val_span_seconds":S,
//    "events":[[src,dst,t],...]}            -> {"ok":true}
//   {"op":"score","now":T,"candidates":[[src,dst],...]}
//                                           -> {"scores":[...]}
//   {"op":"update","events":[[src,dst,t],...]} -> {"ok":true}
class SubprocessPredictor : public Predictor {
 public:
  explicit SubprocessPredictor(std::string command);
  ~SubprocessPredictor() override;

  SubprocessPredictor(const SubprocessPredictor&) = delete;
  SubprocessPredictor& operator=(const SubprocessPredictor&) = delete;

  void init(const EdgeStream& warmup, Granularity train_granularity,
            Timestamp val_span_seconds) override;
  std::vector<double> score_batch(const std::vector<std::pair<NodeId, NodeId>>& candidates,
                                  Timestamp now) override;
  void update(std::span<const Event> observed_positives) override;
  std::string name() const override { return "external"; }

 private:
  void spawn();
  void shutdown();
  void send_line(const std::string& line);
  std::string recv_line();

  std::string command_;
  int pid_ = -1;
  std::FILE* to_child_ = nullptr;
  std::FILE* from_child_ = nullptr;
};

}  // namespace tgbench
