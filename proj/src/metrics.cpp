#include "tgbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>

namespace tgbench {

namespace {

void check_finite(std::span<const ScoredSample> samples) {
  for (const auto& s : samples) {
    if (!std::isfinite(s.score))
      throw std::invalid_argument("metric input contains a non-finite score");
  }
}

}  // namespace

double auroc(std::span<const ScoredSample> samples) {
  check_finite(samples);
  std::size_t n_pos = 0;
  for (const auto& s : samples) n_pos += s.positive ? 1 : 0;
  const std::size_t n = samples.size();
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("auroc undefined: input has a single class");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return samples[a].score < samples[b].score;
  });

  // Average ranks over tie groups, 1-based.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && samples[order[j]].score == samples[order[i]].score) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k) {
      if (samples[order[k]].positive) rank_sum_pos += avg_rank;
    }
    i = j;
  }

  const double np = static_cast<double>(n_pos);
  const double nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

double average_precision(std::span<const ScoredSample> samples) {
  check_finite(samples);
  std::size_t n_pos = 0;
  for (const auto& s : samples) n_pos += s.positive ? 1 : 0;
  if (n_pos == 0)
    throw std::invalid_argument("average precision undefined: no positives");

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  // Score descending; among equal scores negatives come first so that
  // binary-scored baselines are not flattered.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (samples[a].score != samples[b].score)
      return samples[a].score > samples[b].score;
    return samples[a].positive < samples[b].positive;
  });

  double sum_precision = 0.0;
  std::size_t positives_so_far = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (samples[order[k]].positive) {
      ++positives_so_far;
      sum_precision += static_cast<double>(positives_so_far) / static_cast<double>(k + 1);
    }
  }
  return sum_precision / static_cast<double>(n_pos);
}

RankTable average_rank(const std::vector<std::string>& methods,
                       const std::vector<std::vector<double>>& metric) {
  if (methods.empty() || metric.size() != methods.size())
    throw std::invalid_argument("average_rank: methods and metric rows must match");
  const std::size_t n_datasets = metric.front().size();
  if (n_datasets == 0)
    throw std::invalid_argument("average_rank: no datasets");
  for (std::size_t m = 0; m < metric.size(); ++m) {
    if (metric[m].size() != n_datasets)
      throw std::invalid_argument("average_rank: ragged metric table");
    for (double v : metric[m]) {
      if (std::isnan(v))
        throw std::invalid_argument("average_rank: incomplete table (missing cell)");
    }
  }

  const std::size_t n_methods = methods.size();
  std::vector<double> rank_sum(n_methods, 0.0);
  std::vector<std::size_t> order(n_methods);
  for (std::size_t d = 0; d < n_datasets; ++d) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return metric[a][d] > metric[b][d];
    });
    std::size_t i = 0;
    while (i < n_methods) {
      std::size_t j = i;
      while (j < n_methods && metric[order[j]][d] == metric[order[i]][d]) ++j;
      const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
      for (std::size_t k = i; k < j; ++k) rank_sum[order[k]] += avg;
      i = j;
    }
  }

  RankTable table;
  table.methods = methods;
  table.mean_rank.resize(n_methods);
  for (std::size_t m = 0; m < n_methods; ++m)
    table.mean_rank[m] = rank_sum[m] / static_cast<double>(n_datasets);
  return table;
}

}  // namespace tgbench
