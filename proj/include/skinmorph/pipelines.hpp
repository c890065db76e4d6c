#pragma once

#include "skinmorph/classification.hpp"
#include "skinmorph/config.hpp"
#include "skinmorph/mask.hpp"

namespace skinmorph {

/// Fixed sequence: close, erode, dilate, then AND with the input.
BinaryMask postprocess_baseline(const BinaryMask& bw, const PipelineConfig& config = {});

struct BackgroundRemoval {
  BinaryMask mask;
  /// The eroded mask had no components; `mask` is the input unchanged.
  bool empty_background = false;
};

/// Removes the largest component of `ebw`, grown back by the standard disk,
/// from `bw`.
BackgroundRemoval remove_background(const BinaryMask& bw, const BinaryMask& ebw,
                                    const PipelineConfig& config = {});

struct AdaptiveResult {
  BinaryMask mask;
  PatternClass cls = PatternClass::E;
  MaskFeatures features;
  bool empty_background = false;
};

AdaptiveResult postprocess_adaptive(const BinaryMask& bw, const ThresholdParams& params,
                                    const PipelineConfig& config = {});

/// Class-specific operator sequence for an already classified mask. `ebw`
/// is the heavily eroded mask and is only read for class A.
BackgroundRemoval postprocess_class(const BinaryMask& bw, PatternClass cls,
                                    const BinaryMask& ebw, const PipelineConfig& config);

}  // namespace skinmorph
