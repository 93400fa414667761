#include "tgbench/subprocess_predictor.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace tgbench {

using nlohmann::json;

SubprocessPredictor::SubprocessPredictor(std::string command)
    : command_(std::move(command)) {}

SubprocessPredictor::~SubprocessPredictor() { shutdown(); }

void SubprocessPredictor::spawn() {
  int to_pipe[2];
  int from_pipe[2];
  if (::pipe(to_pipe) != 0 || ::pipe(from_pipe) != 0)
    throw std::runtime_error("external predictor: pipe() failed");

  const int pid = ::fork();
  if (pid < 0) throw std::runtime_error("external predictor: fork() failed");
  if (pid == 0) {
    ::dup2(to_pipe[0], STDIN_FILENO);
    ::dup2(from_pipe[1], STDOUT_FILENO);
    ::close(to_pipe[0]);
    ::close(to_pipe[1]);
    ::close(from_pipe[0]);
    ::close(from_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }

  ::close(to_pipe[0]);
  ::close(from_pipe[1]);
  pid_ = pid;
  to_child_ = ::fdopen(to_pipe[1], "w");
  from_child_ = ::fdopen(from_pipe[0], "r");
  if (!to_child_ || !from_child_)
    throw std::runtime_error("external predictor: fdopen() failed");
}

void SubprocessPredictor::shutdown() {
  if (to_child_) {
    std::fclose(to_child_);
    to_child_ = nullptr;
  }
  if (from_child_) {
    std::fclose(from_child_);
    from_child_ = nullptr;
  }
  if (pid_ > 0) {
    int status = 0;
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

void SubprocessPredictor::send_line(const std::string& line) {
  if (std::fputs(line.c_str(), to_child_) == EOF || std::fputc('\n', to_child_) == EOF ||
      std::fflush(to_child_) != 0)
    throw std::runtime_error("external predictor: write failed (command: " + command_ + ")");
}

std::string SubprocessPredictor::recv_line() {
  std::string line;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), from_child_)) {
    line += buf;
    if (!line.empty() && line.back() == '\n') {
      line.pop_back();
      return line;
    }
  }
  throw std::runtime_error("external predictor exited or closed its stdout (command: " +
                           command_ + ")");
}

void SubprocessPredictor::init(const EdgeStream& warmup, Granularity train_granularity,
                               Timestamp val_span_seconds) {
  if (!to_child_) spawn();
  json msg;
  msg["op"] = "init";
  msg["granularity"] = label(train_granularity);
  msg["val_span_seconds"] = val_span_seconds;
  json events = json::array();
  for (const auto& e : warmup.events) events.push_back({e.src, e.dst, e.t_bucketed});
  msg["events"] = std::move(events);
  send_line(msg.dump());
  recv_line();  // acknowledgement
}

std::vector<double> SubprocessPredictor::score_batch(
    const std::vector<std::pair<NodeId, NodeId>>& candidates, Timestamp now) {
  json msg;
  msg["op"] = "score";
  msg["now"] = now;
  json cands = json::array();
  for (const auto& [src, dst] : candidates) cands.push_back({src, dst});
  msg["candidates"] = std::move(cands);
  send_line(msg.dump());

  const json reply = json::parse(recv_line());
  if (!reply.contains("scores") || !reply["scores"].is_array() ||
      reply["scores"].size() != candidates.size())
    throw std::runtime_error("external predictor returned a malformed scores reply");
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& s : reply["scores"]) scores.push_back(s.get<double>());
  return scores;
}

void SubprocessPredictor::update(std::span<const Event> observed_positives) {
  json msg;
  msg["op"] = "update";
  json events = json::array();
  for (const auto& e : observed_positives) events.push_back({e.src, e.dst, e.t_bucketed});
  msg["events"] = std::move(events);
  send_line(msg.dump());
  recv_line();  // acknowledgement
}

}  // namespace tgbench
