#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "tgbench/metrics.hpp"

// Brute-force metric oracles, independent of the sorting-based
// implementations they check.
namespace tgbench::testutil {

// O(n^2) pairwise statistic: probability a random positive outranks a random
// negative, ties counted half.
inline double auroc_oracle(const std::vector<ScoredSample>& samples) {
  double acc = 0.0;
  std::size_t n_pos = 0, n_neg = 0;
  for (const auto& s : samples) (s.positive ? n_pos : n_neg) += 1;
  for (const auto& p : samples) {
    if (!p.positive) continue;
    for (const auto& n : samples) {
      if (n.positive) continue;
      if (p.score > n.score)
        acc += 1.0;
      else if (p.score == n.score)
        acc += 0.5;
    }
  }
  return acc / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

// Direct-definition average precision with the pessimistic tie order (higher
// score first, then equal-score negatives, then equal-score positives by
// original index). Counts ranks without sorting.
inline double ap_oracle(const std::vector<ScoredSample>& samples) {
  std::size_t n_pos = 0;
  for (const auto& s : samples) n_pos += s.positive ? 1 : 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!samples[i].positive) continue;
    std::size_t higher = 0, higher_pos = 0, eq_neg = 0, eq_pos_before = 0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (samples[j].score > samples[i].score) {
        ++higher;
        higher_pos += samples[j].positive ? 1 : 0;
      } else if (samples[j].score == samples[i].score) {
        if (!samples[j].positive)
          ++eq_neg;
        else if (j < i)
          ++eq_pos_before;
      }
    }
    const std::size_t rank = higher + eq_neg + eq_pos_before + 1;
    sum += static_cast<double>(higher_pos + eq_pos_before + 1) / static_cast<double>(rank);
  }
  return sum / static_cast<double>(n_pos);
}

// Random instance with both classes present; alternates between continuous,
// heavily tied, and binary score regimes.
inline std::vector<ScoredSample> random_metric_instance(std::mt19937_64& gen,
                                                        int max_size = 64) {
  std::uniform_int_distribution<int> size_dist(2, max_size);
  std::uniform_int_distribution<int> mode_dist(0, 2);
  std::uniform_real_distribution<double> real_dist(0.0, 1.0);
  std::uniform_int_distribution<int> coarse_dist(0, 4);

  const int mode = mode_dist(gen);
  for (;;) {
    const int n = size_dist(gen);
    std::vector<ScoredSample> v;
    bool has_pos = false, has_neg = false;
    for (int i = 0; i < n; ++i) {
      double score;
      if (mode == 0)
        score = real_dist(gen);
      else if (mode == 1)
        score = coarse_dist(gen) / 4.0;
      else
        score = coarse_dist(gen) < 2 ? 0.0 : 1.0;
      const bool positive = (gen() & 1) != 0;
      has_pos |= positive;
      has_neg |= !positive;
      v.push_back(ScoredSample{score, positive});
    }
    if (has_pos && has_neg) return v;
  }
}

}  // namespace tgbench::testutil
