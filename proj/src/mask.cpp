#include "skinmorph/mask.hpp"

#include <bit>
#include <sstream>

#include "skinmorph/error.hpp"

namespace skinmorph {

namespace {

void require_positive_shape(int width, int height) {
  if (width < 1 || height < 1) {
    std::ostringstream os;
    os << "mask dimensions must be positive, got " << width << "x" << height;
    throw Error(os.str());
  }
}

void require_same_shape(const BinaryMask& a, const BinaryMask& b,
                        const char* op) {
  if (!a.same_shape(b)) {
    throw Error(std::string(op) + ": dimension mismatch " + shape_string(a) +
                " vs " + shape_string(b));
  }
}

template <typename F>
BinaryMask combine(const BinaryMask& a, const BinaryMask& b, F f) {
  BinaryMask out(a.width(), a.height());
  for (int y = 0; y < a.height(); ++y) {
    auto ra = a.row(y);
    auto rb = b.row(y);
    auto ro = out.row(y);
    for (std::size_t i = 0; i < ro.size(); ++i) ro[i] = f(ra[i], rb[i]);
  }
  out.clear_padding();
  return out;
}

}  // namespace

BinaryMask::BinaryMask(int width, int height, bool foreground)
    : width_(width), height_(height) {
  require_positive_shape(width, height);
  words_per_row_ = (width + kWordBits - 1) / kWordBits;
  const int tail = width % kWordBits;
  tail_mask_ = tail == 0 ? ~Word{0} : ((Word{1} << tail) - 1);
  words_.assign(index(height), foreground ? ~Word{0} : Word{0});
  if (foreground) clear_padding();
}

BinaryMask BinaryMask::from_bytes(int width, int height,
                                  std::span<const std::uint8_t> pixels) {
  BinaryMask m(width, height);
  if (pixels.size() != m.pixel_count()) {
    std::ostringstream os;
    os << "expected " << m.pixel_count() << " pixels for " << width << "x"
       << height << ", got " << pixels.size();
    throw Error(os.str());
  }
  for (int y = 0; y < height; ++y) {
    auto r = m.row(y);
    const std::uint8_t* src = pixels.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      if (src[x]) r[x / kWordBits] |= Word{1} << (x % kWordBits);
    }
  }
  return m;
}

void BinaryMask::set(int x, int y, bool value) {
  Word& w = words_[index(y) + x / kWordBits];
  const Word bit = Word{1} << (x % kWordBits);
  w = value ? (w | bit) : (w & ~bit);
}

void BinaryMask::clear_padding() {
  if (tail_mask_ == ~Word{0}) return;
  for (int y = 0; y < height_; ++y) {
    words_[index(y) + words_per_row_ - 1] &= tail_mask_;
  }
}

std::vector<std::uint8_t> BinaryMask::to_bytes() const {
  std::vector<std::uint8_t> out(pixel_count());
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      out[static_cast<std::size_t>(y) * width_ + x] = get(x, y) ? 1 : 0;
    }
  }
  return out;
}

ProbabilityMap::ProbabilityMap(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  require_positive_shape(width, height);
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

ProbabilityMap::ProbabilityMap(int width, int height,
                               std::vector<std::uint8_t> values)
    : width_(width), height_(height), values_(std::move(values)) {
  require_positive_shape(width, height);
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw Error("probability map value count does not match its dimensions");
  }
}

std::string shape_string(const BinaryMask& m) {
  return std::to_string(m.width()) + "x" + std::to_string(m.height());
}

BinaryMask multiply(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b, "multiply");
  return combine(a, b, [](auto x, auto y) { return x & y; });
}

BinaryMask subtract(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b, "subtract");
  return combine(a, b, [](auto x, auto y) { return x & ~y; });
}

BinaryMask unite(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b, "unite");
  return combine(a, b, [](auto x, auto y) { return x | y; });
}

BinaryMask complement(const BinaryMask& a) {
  BinaryMask out(a.width(), a.height());
  for (int y = 0; y < a.height(); ++y) {
    auto ra = a.row(y);
    auto ro = out.row(y);
    for (std::size_t i = 0; i < ro.size(); ++i) ro[i] = ~ra[i];
  }
  out.clear_padding();
  return out;
}

std::size_t foreground_count(const BinaryMask& a) {
  std::size_t n = 0;
  for (auto w : a.words()) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b, "is_subset");
  auto wa = a.words();
  auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (wa[i] & ~wb[i]) return false;
  }
  return true;
}

BinaryMask threshold(const ProbabilityMap& p, int tau) {
  if (tau < 0 || tau > 255) {
    throw Error("threshold tau must be in [0, 255], got " + std::to_string(tau));
  }
  BinaryMask out(p.width(), p.height());
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      if (p.at(x, y) >= tau) out.set(x, y, true);
    }
  }
  return out;
}

}  // namespace skinmorph
