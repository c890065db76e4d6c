#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "skinmorph/classification.hpp"
#include "skinmorph/config.hpp"
#include "skinmorph/evaluation.hpp"
#include "skinmorph/mask.hpp"

namespace skinmorph {

/// Candidate values per threshold. The search covers the Cartesian product,
/// skipping combinations with a2 >= a1.
struct GridSpec {
  std::vector<double> a1;
  std::vector<double> a2;
  std::vector<int> b1;
  std::vector<int> b2;
  std::vector<double> c1;

  static GridSpec default_grid();
  /// A grid holding exactly one point.
  static GridSpec single(const ThresholdParams& p);

  void validate() const;
  /// Valid points in lexicographic order of (a1, a2, b1, b2, c1).
  std::vector<ThresholdParams> points() const;
};

struct TrainingSample {
  BinaryMask prediction;
  BinaryMask truth;
  std::string dataset;
};

/// Pixel-pooled F1 of the adaptive pipeline over the corpus. Returns 0 when
/// no ground truth has a foreground pixel.
double objective(const ThresholdParams& params, std::span<const TrainingSample> corpus,
                 const PipelineConfig& config = {});

/// Threshold-independent summary of one sample: its features plus the
/// confusion counts each distinct class pipeline would produce. Classes B,
/// C and D share one operator sequence.
struct PreparedSample {
  FeatureSet features;
  ConfusionCounts as_a;
  ConfusionCounts as_bcd;
  ConfusionCounts as_e;
  std::uint64_t truth_pixels = 0;

  const ConfusionCounts& counts_for(PatternClass c) const;
};

PreparedSample prepare_sample(const TrainingSample& s, const PipelineConfig& config = {});
std::vector<PreparedSample> prepare_corpus(std::span<const TrainingSample> corpus,
                                           const PipelineConfig& config = {}, int jobs = 1);

/// Same value as objective() on the corpus the samples came from.
double prepared_objective(const ThresholdParams& params,
                          std::span<const PreparedSample> samples);

struct SearchResult {
  ThresholdParams params;
  double score = 0.0;
  std::size_t evaluated = 0;
  /// The corpus had no foreground ground truth; every score is 0.
  bool no_positive_truth = false;
};

/// Exhaustive search. Ties go to the lexicographically smallest point.
SearchResult grid_search(const GridSpec& grid, std::span<const PreparedSample> samples,
                         int jobs = 1);
SearchResult grid_search(const GridSpec& grid, std::span<const TrainingSample> corpus,
                         const PipelineConfig& config = {}, int jobs = 1);

/// For every dataset id, searches on all other datasets pooled together.
std::map<std::string, SearchResult> leave_one_dataset_out(
    const GridSpec& grid, const std::map<std::string, std::vector<TrainingSample>>& corpora,
    const PipelineConfig& config = {}, int jobs = 1);

}  // namespace skinmorph
