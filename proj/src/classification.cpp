#include "skinmorph/classification.hpp"

#include <sstream>

#include "skinmorph/error.hpp"
#include "skinmorph/morphology.hpp"

namespace skinmorph {

void PipelineConfig::validate() const {
  for (int r : {standard_radius, heavy_radius, bm_close_radius, bm_erode_radius,
                bm_dilate_radius}) {
    if (r < 0) throw Error("pipeline radii must be non-negative");
  }
  if (small_cc_area < 1 || tiny_cc_area < 1 || tiny_hole_area < 1) {
    throw Error("pipeline areas must be >= 1");
  }
}

char to_char(PatternClass c) {
  return static_cast<char>('A' + static_cast<int>(c));
}

PatternClass pattern_class_from_char(char c) {
  if (c < 'A' || c > 'E') throw Error(std::string("unknown pattern class '") + c + "'");
  return static_cast<PatternClass>(c - 'A');
}

void ThresholdParams::validate() const {
  std::ostringstream os;
  if (!(a2 >= 0.0 && a2 < a1 && a1 <= 1.0)) {
    os << "thresholds need 0 <= a2 < a1 <= 1, got a1=" << a1 << " a2=" << a2;
  } else if (b1 < 1 || b2 < 1) {
    os << "component thresholds must be >= 1, got b1=" << b1 << " b2=" << b2;
  } else if (!(c1 >= 0.0 && c1 <= 1.0)) {
    os << "c1 must lie in [0, 1], got " << c1;
  } else {
    return;
  }
  throw Error(os.str());
}

std::string to_string(const ThresholdParams& p) {
  std::ostringstream os;
  os << "(" << p.a1 << ", " << p.a2 << ", " << p.b1 << ", " << p.b2 << ", " << p.c1
     << ")";
  return os.str();
}

double skin_ratio(const BinaryMask& bw, Connectivity hole_connectivity) {
  const BinaryMask filled = fill_holes(bw, std::nullopt, hole_connectivity);
  return static_cast<double>(foreground_count(filled)) /
         static_cast<double>(bw.pixel_count());
}

double border_skin_ratio(const BinaryMask& bw) {
  const int w = bw.width();
  const int h = bw.height();
  if (w < 2 || h < 2) {
    throw Error("border_skin_ratio needs at least 2x2 pixels, got " + shape_string(bw));
  }
  std::size_t on = 0;
  for (int x = 0; x < w; ++x) on += bw.get(x, 0);
  for (int y = 1; y < h - 1; ++y) on += bw.get(0, y) + bw.get(w - 1, y);
  const std::size_t total = static_cast<std::size_t>(w) + 2 * static_cast<std::size_t>(h) - 4;
  return static_cast<double>(on) / static_cast<double>(total);
}

namespace detail {

double border_ratio_or_fraction(const BinaryMask& m) {
  if (m.width() >= 2 && m.height() >= 2) return border_skin_ratio(m);
  return static_cast<double>(foreground_count(m)) / static_cast<double>(m.pixel_count());
}

BinaryMask heavy_erosion(const BinaryMask& bw, const PipelineConfig& config) {
  return erode(bw, make_disk(config.heavy_radius));
}

BinaryMask drop_tiny_components(const BinaryMask& bw, const PipelineConfig& config) {
  // Components strictly smaller than tiny_cc_area go away.
  if (config.tiny_cc_area <= 1) return bw;
  return remove_small_components(bw, config.tiny_cc_area - 1,
                                 config.foreground_connectivity);
}

}  // namespace detail

Classification classify(const BinaryMask& bw, const ThresholdParams& params,
                        const PipelineConfig& config) {
  params.validate();
  config.validate();
  Classification out;
  out.filled = fill_holes(bw, std::nullopt, config.hole_connectivity);
  const double sr = static_cast<double>(foreground_count(out.filled)) /
                    static_cast<double>(bw.pixel_count());
  out.features.sr = sr;

  if (sr >= params.a1) {
    out.eroded = detail::heavy_erosion(bw, config);
    const std::size_t cc =
        label_components(*out.eroded, config.foreground_connectivity).count();
    out.features.cc = cc;
    if (cc < static_cast<std::size_t>(params.b1)) {
      const double bsr = detail::border_ratio_or_fraction(*out.eroded);
      out.features.bsr = bsr;
      out.cls = bsr >= params.c1 ? PatternClass::A : PatternClass::B;
    } else {
      out.cls = PatternClass::C;
    }
  } else if (params.a2 < sr && sr < params.a1) {
    const std::size_t cc =
        label_components(detail::drop_tiny_components(bw, config),
                         config.foreground_connectivity)
            .count();
    out.features.cc = cc;
    out.cls = cc > static_cast<std::size_t>(params.b2) ? PatternClass::D : PatternClass::E;
  } else {
    out.cls = PatternClass::E;
  }
  return out;
}

FeatureSet compute_features(const BinaryMask& bw, const PipelineConfig& config) {
  config.validate();
  FeatureSet f;
  f.sr = skin_ratio(bw, config.hole_connectivity);
  const BinaryMask eroded = detail::heavy_erosion(bw, config);
  f.cc_eroded = label_components(eroded, config.foreground_connectivity).count();
  f.bsr_eroded = detail::border_ratio_or_fraction(eroded);
  f.cc_cleaned = label_components(detail::drop_tiny_components(bw, config),
                                  config.foreground_connectivity)
                     .count();
  return f;
}

PatternClass assign_class(const FeatureSet& f, const ThresholdParams& p) {
  const auto b1 = static_cast<std::size_t>(p.b1);
  const auto b2 = static_cast<std::size_t>(p.b2);
  if (f.sr >= p.a1 && f.cc_eroded < b1 && f.bsr_eroded >= p.c1) return PatternClass::A;
  if (f.sr >= p.a1 && f.cc_eroded < b1) return PatternClass::B;
  if (f.sr >= p.a1 && f.cc_eroded >= b1) return PatternClass::C;
  if (f.sr > p.a2 && f.sr < p.a1 && f.cc_cleaned > b2) return PatternClass::D;
  return PatternClass::E;
}

}  // namespace skinmorph
