#include "skinmorph/morphology.hpp"

#include <algorithm>
#include <vector>

#include "skinmorph/error.hpp"

namespace skinmorph {

using Word = BinaryMask::Word;

namespace {

constexpr int kBits = BinaryMask::kWordBits;

// dst[x] = src[x + k] over a row of `n` words, reading `fill` outside the
// row. `src` must already carry `fill` in its padding bits.
void shift_row(const Word* src, Word* dst, int n, int k, Word fill) {
  if (k == 0) {
    std::copy(src, src + n, dst);
    return;
  }
  const int mag = k > 0 ? k : -k;
  const int q = mag / kBits;
  const int r = mag % kBits;
  auto at = [&](int j) -> Word { return (j < 0 || j >= n) ? fill : src[j]; };
  if (k > 0) {
    for (int i = 0; i < n; ++i) {
      Word lo = at(i + q);
      dst[i] = r == 0 ? lo : (lo >> r) | (at(i + q + 1) << (kBits - r));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      Word hi = at(i - q);
      dst[i] = r == 0 ? hi : (hi << r) | (at(i - q - 1) >> (kBits - r));
    }
  }
}

// Separable min/max filter over the disk's row runs. For erosion the
// combining op is AND and outside pixels are foreground; dilation uses OR
// with background outside. `runs[w]` holds, for every source row, the row
// filtered horizontally by the run [-w, w].
template <bool kErode>
BinaryMask disk_filter(const BinaryMask& m, const StructuringElement& se) {
  const int width = m.width();
  const int height = m.height();
  const int n = m.words_per_row();
  const Word fill = kErode ? ~Word{0} : Word{0};
  const Word tail = m.tail_mask();

  if (se.radius() == 0) return m;

  const std::size_t row_words = static_cast<std::size_t>(n);
  const std::size_t plane = row_words * static_cast<std::size_t>(height);
  const int max_w = std::min(se.radius(), width);
  std::vector<Word> runs(plane * static_cast<std::size_t>(max_w + 1));
  std::vector<Word> src(row_words);
  std::vector<Word> shifted(row_words);

  for (int y = 0; y < height; ++y) {
    auto row = m.row(y);
    std::copy(row.begin(), row.end(), src.begin());
    src[n - 1] = (src[n - 1] & tail) | (fill & ~tail);
    Word* base = runs.data() + static_cast<std::size_t>(y) * row_words;
    std::copy(src.begin(), src.end(), base);
    for (int w = 1; w <= max_w; ++w) {
      const Word* prev = base + plane * static_cast<std::size_t>(w - 1);
      Word* cur = base + plane * static_cast<std::size_t>(w);
      std::copy(prev, prev + n, cur);
      for (int k : {w, -w}) {
        shift_row(src.data(), shifted.data(), n, k, fill);
        for (int i = 0; i < n; ++i) {
          if constexpr (kErode) cur[i] &= shifted[i];
          else cur[i] |= shifted[i];
        }
      }
      // Keep padding at `fill` so later shifts see consistent bits.
      cur[n - 1] = (cur[n - 1] & tail) | (fill & ~tail);
    }
  }

  BinaryMask out(width, height, kErode);
  for (int y = 0; y < height; ++y) {
    auto dst = out.row(y);
    const int dy_lo = std::max(-se.radius(), -y);
    const int dy_hi = std::min(se.radius(), height - 1 - y);
    for (int dy = dy_lo; dy <= dy_hi; ++dy) {
      const int sy = y + dy;
      const int w = std::min(se.half_width(dy), max_w);
      const Word* r = runs.data() + plane * static_cast<std::size_t>(w) +
                      static_cast<std::size_t>(sy) * row_words;
      for (int i = 0; i < n; ++i) {
        if constexpr (kErode) dst[i] &= r[i];
        else dst[i] |= r[i];
      }
    }
  }
  out.clear_padding();
  return out;
}

struct PixelGrid {
  int width;
  int height;
  std::vector<std::uint8_t> on;
};

// Flood-fill labeling over a byte grid. Labels follow raster order of the
// first pixel reached.
ComponentLabeling label_grid(const PixelGrid& g, Connectivity connectivity) {
  ComponentLabeling out;
  out.width = g.width;
  out.height = g.height;
  out.labels.assign(g.on.size(), 0);
  const bool eight = connectivity == Connectivity::Eight;
  std::vector<std::size_t> stack;
  std::int32_t next = 0;
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const std::size_t start = static_cast<std::size_t>(y) * g.width + x;
      if (!g.on[start] || out.labels[start] != 0) continue;
      ++next;
      std::size_t size = 0;
      out.labels[start] = next;
      stack.push_back(start);
      while (!stack.empty()) {
        const std::size_t p = stack.back();
        stack.pop_back();
        ++size;
        const int px = static_cast<int>(p % g.width);
        const int py = static_cast<int>(p / g.width);
        for (int dy = -1; dy <= 1; ++dy) {
          const int qy = py + dy;
          if (qy < 0 || qy >= g.height) continue;
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!eight && dx != 0 && dy != 0) continue;
            const int qx = px + dx;
            if (qx < 0 || qx >= g.width) continue;
            const std::size_t q = static_cast<std::size_t>(qy) * g.width + qx;
            if (g.on[q] && out.labels[q] == 0) {
              out.labels[q] = next;
              stack.push_back(q);
            }
          }
        }
      }
      out.sizes.push_back(size);
    }
  }
  return out;
}

PixelGrid to_grid(const BinaryMask& m, bool invert) {
  PixelGrid g{m.width(), m.height(), m.to_bytes()};
  if (invert) {
    for (auto& v : g.on) v = v ? 0 : 1;
  }
  return g;
}

}  // namespace

StructuringElement make_disk(int radius) {
  if (radius < 0) {
    throw Error("disk radius must be non-negative, got " + std::to_string(radius));
  }
  StructuringElement se;
  se.radius_ = radius;
  se.half_widths_.resize(static_cast<std::size_t>(2 * radius + 1));
  const long long r2 = static_cast<long long>(radius) * radius;
  for (int dy = -radius; dy <= radius; ++dy) {
    long long w = 0;
    while ((w + 1) * (w + 1) + static_cast<long long>(dy) * dy <= r2) ++w;
    se.half_widths_[dy + radius] = static_cast<int>(w);
  }
  return se;
}

std::vector<StructuringElement::Offset> StructuringElement::offsets() const {
  std::vector<Offset> out;
  for (int dy = -radius_; dy <= radius_; ++dy) {
    const int w = half_width(dy);
    for (int dx = -w; dx <= w; ++dx) out.push_back({dx, dy});
  }
  return out;
}

std::size_t StructuringElement::size() const {
  std::size_t n = 0;
  for (int w : half_widths_) n += static_cast<std::size_t>(2 * w + 1);
  return n;
}

BinaryMask erode(const BinaryMask& m, const StructuringElement& se) {
  return disk_filter<true>(m, se);
}

BinaryMask dilate(const BinaryMask& m, const StructuringElement& se) {
  return disk_filter<false>(m, se);
}

BinaryMask open(const BinaryMask& m, const StructuringElement& se) {
  return dilate(erode(m, se), se);
}

BinaryMask close(const BinaryMask& m, const StructuringElement& se) {
  return erode(dilate(m, se), se);
}

Connectivity connectivity_from_int(int c) {
  if (c == 4) return Connectivity::Four;
  if (c == 8) return Connectivity::Eight;
  throw Error("connectivity must be 4 or 8, got " + std::to_string(c));
}

ComponentLabeling label_components(const BinaryMask& m, Connectivity connectivity) {
  return label_grid(to_grid(m, false), connectivity);
}

BinaryMask largest_component(const ComponentLabeling& labeling) {
  if (labeling.count() == 0) throw Error("largest_component: no components");
  // max_element keeps the first maximum, i.e. the smallest label.
  const auto best = std::max_element(labeling.sizes.begin(), labeling.sizes.end());
  const auto id = static_cast<std::int32_t>(best - labeling.sizes.begin()) + 1;
  BinaryMask out(labeling.width, labeling.height);
  for (int y = 0; y < labeling.height; ++y) {
    for (int x = 0; x < labeling.width; ++x) {
      if (labeling.at(x, y) == id) out.set(x, y, true);
    }
  }
  return out;
}

BinaryMask fill_holes(const BinaryMask& m, std::optional<std::size_t> max_area,
                      Connectivity hole_connectivity) {
  if (max_area && *max_area == 0) throw Error("fill_holes: max_area must be positive");
  const ComponentLabeling bg = label_grid(to_grid(m, true), hole_connectivity);
  std::vector<std::uint8_t> fill(bg.count() + 1, 1);
  fill[0] = 0;
  auto mark_border = [&](int x, int y) { fill[static_cast<std::size_t>(bg.at(x, y))] = 0; };
  for (int x = 0; x < m.width(); ++x) {
    mark_border(x, 0);
    mark_border(x, m.height() - 1);
  }
  for (int y = 0; y < m.height(); ++y) {
    mark_border(0, y);
    mark_border(m.width() - 1, y);
  }
  if (max_area) {
    for (std::size_t i = 0; i < bg.count(); ++i) {
      if (bg.sizes[i] >= *max_area) fill[i + 1] = 0;
    }
  }
  BinaryMask out = m;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (fill[static_cast<std::size_t>(bg.at(x, y))]) out.set(x, y, true);
    }
  }
  return out;
}

BinaryMask remove_small_components(const BinaryMask& m, std::size_t max_removed_area,
                                   Connectivity connectivity) {
  if (max_removed_area == 0) {
    throw Error("remove_small_components: area threshold must be >= 1");
  }
  const ComponentLabeling cc = label_components(m, connectivity);
  BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      const auto id = cc.at(x, y);
      if (id != 0 && cc.sizes[static_cast<std::size_t>(id) - 1] > max_removed_area) {
        out.set(x, y, true);
      }
    }
  }
  return out;
}

}  // namespace skinmorph
