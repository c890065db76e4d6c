#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace skinmorph {

/// Bit-per-pixel binary raster. Rows are stored as runs of 64-bit words,
/// bit `x % 64` of word `x / 64` holds column `x` (LSB first). Bits past
/// `width` in the last word of a row are always zero.
class BinaryMask {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  BinaryMask() = default;
  BinaryMask(int width, int height, bool foreground = false);

  static BinaryMask zeros(int width, int height) { return {width, height, false}; }
  static BinaryMask ones(int width, int height) { return {width, height, true}; }

  /// Builds a mask from one byte per pixel, row-major; nonzero is foreground.
  static BinaryMask from_bytes(int width, int height,
                               std::span<const std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  int words_per_row() const { return words_per_row_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  bool get(int x, int y) const {
    return (words_[index(y) + x / kWordBits] >> (x % kWordBits)) & 1u;
  }
  void set(int x, int y, bool value);

  std::span<const Word> row(int y) const {
    return {words_.data() + index(y), static_cast<std::size_t>(words_per_row_)};
  }
  std::span<Word> row(int y) {
    return {words_.data() + index(y), static_cast<std::size_t>(words_per_row_)};
  }
  std::span<const Word> words() const { return words_; }

  /// Mask of valid bits in the last word of every row.
  Word tail_mask() const { return tail_mask_; }

  /// Forces padding bits to background; kernels call this after writing rows.
  void clear_padding();

  /// One byte per pixel (0 or 1), row-major.
  std::vector<std::uint8_t> to_bytes() const;

  bool same_shape(const BinaryMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const BinaryMask& a, const BinaryMask& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.words_ == b.words_;
  }

 private:
  std::size_t index(int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(words_per_row_);
  }

  int width_ = 0;
  int height_ = 0;
  int words_per_row_ = 0;
  Word tail_mask_ = 0;
  std::vector<Word> words_;
};

/// Grayscale skinness scores in [0, 255], row-major.
class ProbabilityMap {
 public:
  ProbabilityMap() = default;
  ProbabilityMap(int width, int height, std::uint8_t fill = 0);
  ProbabilityMap(int width, int height, std::vector<std::uint8_t> values);

  int width() const { return width_; }
  int height() const { return height_; }
  std::uint8_t at(int x, int y) const {
    return values_[static_cast<std::size_t>(y) * width_ + x];
  }
  void set(int x, int y, std::uint8_t v) {
    values_[static_cast<std::size_t>(y) * width_ + x] = v;
  }
  std::span<const std::uint8_t> values() const { return values_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> values_;
};

std::string shape_string(const BinaryMask& m);

/// Pixelwise AND.
BinaryMask multiply(const BinaryMask& a, const BinaryMask& b);
/// Pixels of `a` that are background in `b`.
BinaryMask subtract(const BinaryMask& a, const BinaryMask& b);
BinaryMask complement(const BinaryMask& a);
/// Pixelwise OR; not part of the operator set but handy for composing masks.
BinaryMask unite(const BinaryMask& a, const BinaryMask& b);

std::size_t foreground_count(const BinaryMask& a);

/// True when every foreground pixel of `a` is foreground in `b`.
bool is_subset(const BinaryMask& a, const BinaryMask& b);

/// Foreground where value >= tau. tau must lie in [0, 255].
BinaryMask threshold(const ProbabilityMap& p, int tau);

}  // namespace skinmorph
