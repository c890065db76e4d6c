#include "skinmorph/pipelines.hpp"

#include "skinmorph/morphology.hpp"

namespace skinmorph {

BinaryMask postprocess_baseline(const BinaryMask& bw, const PipelineConfig& config) {
  config.validate();
  BinaryMask m = close(bw, make_disk(config.bm_close_radius));
  m = erode(m, make_disk(config.bm_erode_radius));
  m = dilate(m, make_disk(config.bm_dilate_radius));
  return multiply(bw, m);
}

BackgroundRemoval remove_background(const BinaryMask& bw, const BinaryMask& ebw,
                                    const PipelineConfig& config) {
  const ComponentLabeling cc = label_components(ebw, config.foreground_connectivity);
  if (cc.count() == 0) return {bw, true};
  const BinaryMask background =
      dilate(largest_component(cc), make_disk(config.standard_radius));
  return {subtract(bw, background), false};
}

BackgroundRemoval postprocess_class(const BinaryMask& bw, PatternClass cls,
                                    const BinaryMask& ebw, const PipelineConfig& config) {
  BinaryMask nbw = bw;
  bool empty_background = false;
  bool fill_all = true;
  switch (cls) {
    case PatternClass::A: {
      auto removed = remove_background(bw, ebw, config);
      nbw = std::move(removed.mask);
      empty_background = removed.empty_background;
      break;
    }
    case PatternClass::B:
    case PatternClass::C:
    case PatternClass::D:
      fill_all = false;
      break;
    case PatternClass::E:
      break;
  }

  if (fill_all) {
    nbw = fill_holes(nbw, std::nullopt, config.hole_connectivity);
  } else {
    nbw = fill_holes(nbw, config.tiny_hole_area, config.hole_connectivity);
  }

  const StructuringElement se = make_disk(config.standard_radius);
  nbw = erode(nbw, se);
  nbw = remove_small_components(nbw, config.small_cc_area, config.foreground_connectivity);
  nbw = dilate(nbw, se);
  return {multiply(bw, nbw), empty_background};
}

AdaptiveResult postprocess_adaptive(const BinaryMask& bw, const ThresholdParams& params,
                                    const PipelineConfig& config) {
  Classification c = classify(bw, params, config);
  const BinaryMask& ebw = c.eroded ? *c.eroded : bw;
  BackgroundRemoval r = postprocess_class(bw, c.cls, ebw, config);
  return {std::move(r.mask), c.cls, c.features, r.empty_background};
}

}  // namespace skinmorph
