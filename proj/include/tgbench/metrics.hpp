#pragma once

#include <span>
#include <string>
#include <vector>

namespace tgbench {

struct ScoredSample {
  double score = 0.0;
  bool positive = false;
};

// Area under the ROC curve via the rank statistic (Mann-Whitney) with tied
// scores assigned average ranks. Exact under heavy ties, which binary-scored
// baselines produce. Throws std::invalid_argument unless both classes are
// present and all scores are finite.
double auroc(std::span<const ScoredSample> samples);

// Average precision: mean of precision@k over the ranks k of the positives,
// with samples ordered by score descending and equal-score negatives placed
// before positives (the pessimistic tie rule). Throws std::invalid_argument
// unless at least one positive is present and all scores are finite.
double average_precision(std::span<const ScoredSample> samples);

struct RankTable {
  std::vector<std::string> methods;
  std::vector<double> mean_rank;  // parallel to `methods`
};

// Ranks methods per dataset by metric value descending (rank 1 = best, ties
// averaged) and returns the per-method mean rank across datasets.
// `metric[m][d]` is the value of method m on dataset d; a NaN cell makes the
// table incomplete and throws std::invalid_argument.
RankTable average_rank(const std::vector<std::string>& methods,
                       const std::vector<std::vector<double>>& metric);

}  // namespace tgbench
