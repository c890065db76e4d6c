#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "skinmorph/mask.hpp"

namespace skinmorph {

/// Euclidean disk { (dx, dy) : dx^2 + dy^2 <= r^2 }.
///
/// Every row of a disk is a contiguous, origin-centred run, so the element is
/// stored as one half-width per row offset; the morphology kernels work on
/// those runs directly.
class StructuringElement {
 public:
  struct Offset {
    int dx;
    int dy;
    friend bool operator==(const Offset&, const Offset&) = default;
  };

  int radius() const { return radius_; }
  /// half_width(dy) for dy in [-radius, radius].
  int half_width(int dy) const { return half_widths_[dy + radius_]; }
  /// All offsets, ordered by dy then dx.
  std::vector<Offset> offsets() const;
  std::size_t size() const;

 private:
  friend StructuringElement make_disk(int radius);
  int radius_ = 0;
  std::vector<int> half_widths_;
};

StructuringElement make_disk(int radius);

/// Out-of-bounds pixels count as foreground.
BinaryMask erode(const BinaryMask& m, const StructuringElement& se);
/// Out-of-bounds pixels count as background.
BinaryMask dilate(const BinaryMask& m, const StructuringElement& se);
BinaryMask open(const BinaryMask& m, const StructuringElement& se);
BinaryMask close(const BinaryMask& m, const StructuringElement& se);

enum class Connectivity { Four = 4, Eight = 8 };

Connectivity connectivity_from_int(int c);

struct ComponentLabeling {
  int width = 0;
  int height = 0;
  /// Per-pixel label, 0 for background, otherwise 1..count.
  std::vector<std::int32_t> labels;
  /// sizes[i] is the pixel count of label i + 1.
  std::vector<std::size_t> sizes;

  std::size_t count() const { return sizes.size(); }
  std::int32_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

/// Labels are assigned in raster order of each component's first pixel.
ComponentLabeling label_components(const BinaryMask& m,
                                   Connectivity connectivity = Connectivity::Eight);

/// Pixels of the largest component; ties go to the smallest label.
/// Throws when the labeling has no components.
BinaryMask largest_component(const ComponentLabeling& labeling);

/// Fills background regions that cannot be reached from the image border.
/// With `max_area`, only holes whose area is strictly below it are filled.
BinaryMask fill_holes(const BinaryMask& m,
                      std::optional<std::size_t> max_area = std::nullopt,
                      Connectivity hole_connectivity = Connectivity::Four);

/// Deletes foreground components with area <= max_removed_area.
BinaryMask remove_small_components(const BinaryMask& m,
                                   std::size_t max_removed_area,
                                   Connectivity connectivity = Connectivity::Eight);

}  // namespace skinmorph
