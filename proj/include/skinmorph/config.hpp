#pragma once

#include <cstddef>

#include "skinmorph/morphology.hpp"

namespace skinmorph {

/// Radii and area thresholds used by the classifier and both post-processing
/// pipelines. Defaults are the standard operator settings.
struct PipelineConfig {
  int standard_radius = 6;
  /// Erosion used to split touching components before counting them.
  int heavy_radius = 12;
  int bm_close_radius = 6;
  int bm_erode_radius = 10;
  int bm_dilate_radius = 8;
  /// Final cleanup removes components of at most this many pixels.
  std::size_t small_cc_area = 100;
  /// The D/E component count ignores components smaller than this.
  std::size_t tiny_cc_area = 10;
  /// Without full filling, holes smaller than this are still filled.
  std::size_t tiny_hole_area = 3;
  Connectivity foreground_connectivity = Connectivity::Eight;
  Connectivity hole_connectivity = Connectivity::Four;

  /// Throws skinmorph::Error on negative radii or zero areas.
  void validate() const;
};

}  // namespace skinmorph
