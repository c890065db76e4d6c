#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skinmorph/mask.hpp"

namespace skinmorph {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend ConfusionCounts operator+(ConfusionCounts a, const ConfusionCounts& b) {
    return a += b;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt);

/// 2tp / (2tp + fn + fp). All-zero counts score 1.0.
double f1(const ConfusionCounts& c);

struct GroupScore {
  std::string key;
  ConfusionCounts counts;
  double f1 = 0.0;
};

struct DatasetScore {
  double value = 0.0;
  ConfusionCounts pooled;
  /// Per-group rows in first-seen order; empty when ungrouped.
  std::vector<GroupScore> groups;
};

/// Pixel-pooled F1 over all images. With `groups`, counts are pooled within
/// each group and the result is the unweighted mean of the group scores.
DatasetScore dataset_f1(std::span<const ConfusionCounts> per_image,
                        std::optional<std::span<const std::string>> groups = std::nullopt);

struct ScoredLabel {
  double score = 0.0;
  bool positive = false;
};

/// Area under the stepwise precision-recall curve, on a 0-100 scale. Items
/// with equal scores are consumed as one block.
double average_precision(std::span<const ScoredLabel> items);

enum class Alternative { TwoSided, Greater, Less };

struct WilcoxonResult {
  double p_value = 1.0;
  double w_plus = 0.0;
  double w_minus = 0.0;
  /// Pairs left after dropping zero differences.
  std::size_t n = 0;
  bool exact = true;
  /// Every difference was zero.
  bool degenerate = false;
};

/// Paired signed-rank test on x - y. Zero differences are dropped, tied
/// magnitudes (within `tie_tolerance`) share the average rank. Exact null
/// distribution for n <= 20, normal approximation with tie and continuity
/// correction above. `Greater` tests x > y.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                    Alternative alternative = Alternative::TwoSided,
                                    double tie_tolerance = 1e-9);

/// Ranks with ties sharing the average rank. Rank 1 goes to the largest value
/// when `descending`, to the smallest otherwise.
std::vector<double> average_ranks(std::span<const double> values, bool descending,
                                  double tie_tolerance = 0.0);

struct GlobalRank {
  std::vector<double> mean_rank;
  std::vector<double> rank;
};

/// `table[d][m]` is the score of method m on dataset d, higher is better.
/// Per-dataset average ranks are averaged per method, then ranked again.
GlobalRank global_rank(const std::vector<std::vector<double>>& table);

}  // namespace skinmorph
