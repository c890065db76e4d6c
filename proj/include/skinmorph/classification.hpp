#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "skinmorph/config.hpp"
#include "skinmorph/mask.hpp"

namespace skinmorph {

enum class PatternClass { A, B, C, D, E };

char to_char(PatternClass c);
PatternClass pattern_class_from_char(char c);

/// Rule thresholds: a1/a2 bound the skin ratio, b1/b2 the component counts,
/// c1 the border skin ratio.
struct ThresholdParams {
  double a1 = 0.3;
  double a2 = 0.06;
  int b1 = 10;
  int b2 = 40;
  double c1 = 0.25;

  void validate() const;

  friend bool operator==(const ThresholdParams&, const ThresholdParams&) = default;
  /// Lexicographic on (a1, a2, b1, b2, c1).
  friend auto operator<=>(const ThresholdParams&, const ThresholdParams&) = default;
};

std::string to_string(const ThresholdParams& p);

/// Features actually evaluated while walking the decision rules. `cc` is
/// absent when the skin ratio falls outside both branches; `bsr` is only
/// computed on the heavily eroded branch.
struct MaskFeatures {
  double sr = 0.0;
  std::optional<std::size_t> cc;
  std::optional<double> bsr;
};

/// Every feature, independent of thresholds. Used by the trainer, which
/// evaluates many threshold settings against one mask.
struct FeatureSet {
  double sr = 0.0;
  std::size_t cc_eroded = 0;
  double bsr_eroded = 0.0;
  std::size_t cc_cleaned = 0;
};

struct Classification {
  PatternClass cls = PatternClass::E;
  MaskFeatures features;
  BinaryMask filled;
  /// Heavily eroded mask; set whenever SR >= a1.
  std::optional<BinaryMask> eroded;
};

/// Foreground fraction of the hole-filled mask.
double skin_ratio(const BinaryMask& bw,
                  Connectivity hole_connectivity = Connectivity::Four);

/// Foreground fraction of the top row plus the left and right columns,
/// bottom pixels excluded. Requires width >= 2 and height >= 2.
double border_skin_ratio(const BinaryMask& bw);

Classification classify(const BinaryMask& bw, const ThresholdParams& params,
                        const PipelineConfig& config = {});

FeatureSet compute_features(const BinaryMask& bw, const PipelineConfig& config = {});

/// The rule table applied to precomputed features, in order A, B, C, D, E.
PatternClass assign_class(const FeatureSet& f, const ThresholdParams& params);

namespace detail {
// Border ratio with a whole-mask fallback for single-row/column masks.
double border_ratio_or_fraction(const BinaryMask& m);
BinaryMask heavy_erosion(const BinaryMask& bw, const PipelineConfig& config);
BinaryMask drop_tiny_components(const BinaryMask& bw, const PipelineConfig& config);
}  // namespace detail

}  // namespace skinmorph
