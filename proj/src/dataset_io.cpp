#include "skinmorph/dataset_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "skinmorph/error.hpp"
#include "text_util.hpp"

namespace skinmorph {

namespace fs = std::filesystem;

std::string to_string(MetricKind k) { return k == MetricKind::F1 ? "f1" : "ap"; }

fs::path DatasetManifest::resolve(const std::string& relative) const {
  fs::path p(relative);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

DatasetManifest parse_manifest(std::string_view text, const fs::path& base_dir,
                               const std::string& source) {
  DatasetManifest m;
  m.base_dir = base_dir;
  std::set<std::string> seen_keys;
  bool in_entries = false;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(source + ":" + std::to_string(line_no) + ": " + msg);
  };

  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    if (line.find('\t') == std::string_view::npos) {
      if (in_entries) fail("expected tab-separated entry 'pred<TAB>gt[<TAB>group]'");
      const auto kv = detail::split_key_value(trimmed);
      if (!kv) fail("expected 'key = value' header line");
      const auto& [key, value] = *kv;
      if (!seen_keys.insert(key).second) fail("duplicate header key '" + key + "'");
      if (key == "id") {
        m.id = value;
      } else if (key == "metric") {
        if (value == "f1") m.metric = MetricKind::F1;
        else if (value == "ap") m.metric = MetricKind::AP;
        else fail("metric must be 'f1' or 'ap', got '" + value + "'");
      } else if (key == "positive") {
        m.positive_label = value;
      } else {
        fail("unknown header key '" + key + "'");
      }
      continue;
    }

    in_entries = true;
    const auto cols = detail::split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      fail("entry needs 2 or 3 tab-separated columns, got " + std::to_string(cols.size()));
    }
    ManifestEntry e;
    e.prediction = std::string(detail::trim(cols[0]));
    e.truth = std::string(detail::trim(cols[1]));
    if (e.prediction.empty() || e.truth.empty()) fail("empty column in entry");
    if (cols.size() == 3) {
      e.group = std::string(detail::trim(cols[2]));
      if (e.group->empty()) fail("empty group key");
    }
    if (!m.entries.empty() && m.entries.front().group.has_value() != e.group.has_value()) {
      fail("group keys must be given for every entry or for none");
    }
    m.entries.push_back(std::move(e));
  }

  line_no = 0;
  if (m.id.empty()) fail("missing 'id' header");
  if (m.metric == MetricKind::AP && !m.positive_label) {
    fail("ap manifests need a 'positive' header naming the positive label");
  }
  if (m.metric == MetricKind::F1 && m.positive_label) {
    fail("'positive' is only meaningful for ap manifests");
  }
  if (m.entries.empty()) fail("manifest has no entries");
  return m;
}

DatasetManifest load_manifest(const fs::path& path) {
  return parse_manifest(detail::read_file(path), path.parent_path(), path.string());
}

std::string serialize_manifest(const DatasetManifest& m) {
  std::ostringstream os;
  os << "id = " << m.id << "\n";
  os << "metric = " << to_string(m.metric) << "\n";
  if (m.positive_label) os << "positive = " << *m.positive_label << "\n";
  for (const auto& e : m.entries) {
    os << e.prediction << '\t' << e.truth;
    if (e.group) os << '\t' << *e.group;
    os << '\n';
  }
  return os.str();
}

namespace {

bool has_extension(const fs::path& p, std::string_view ext) {
  std::string e = p.extension().string();
  for (auto& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return e == ext;
}

// Netpbm header/body reader.
class PnmReader {
 public:
  PnmReader(std::string bytes, std::string source)
      : bytes_(std::move(bytes)), source_(std::move(source)) {}

  Raster read() {
    if (bytes_.size() < 2 || bytes_[0] != 'P') fail("not a PNM file");
    const char kind = bytes_[1];
    pos_ = 2;
    Raster r;
    r.width = next_int();
    r.height = next_int();
    if (r.width < 1 || r.height < 1) fail("bad dimensions");
    int maxval = 1;
    if (kind != '1' && kind != '4') {
      maxval = next_int();
      if (maxval < 1) fail("bad maxval");
      if (maxval > 255) fail("unsupported bit depth (maxval " + std::to_string(maxval) + ")");
    }
    const std::size_t pixels = static_cast<std::size_t>(r.width) * r.height;
    switch (kind) {
      case '1':
        r.data.resize(pixels);
        for (auto& v : r.data) v = next_bit() ? 255 : 0;
        break;
      case '4': {
        ++pos_;  // single whitespace after header
        const std::size_t stride = (static_cast<std::size_t>(r.width) + 7) / 8;
        if (bytes_.size() < pos_ + stride * r.height) fail("truncated data");
        r.data.resize(pixels);
        for (int y = 0; y < r.height; ++y) {
          for (int x = 0; x < r.width; ++x) {
            const auto byte = static_cast<unsigned char>(bytes_[pos_ + y * stride + x / 8]);
            r.data[static_cast<std::size_t>(y) * r.width + x] =
                ((byte >> (7 - x % 8)) & 1) ? 255 : 0;
          }
        }
        break;
      }
      case '2':
      case '3': {
        r.channels = kind == '3' ? 3 : 1;
        r.data.resize(pixels * r.channels);
        for (auto& v : r.data) v = scale(next_int(), maxval);
        break;
      }
      case '5':
      case '6': {
        r.channels = kind == '6' ? 3 : 1;
        ++pos_;
        if (bytes_.size() < pos_ + pixels * r.channels) fail("truncated data");
        r.data.resize(pixels * r.channels);
        for (std::size_t i = 0; i < r.data.size(); ++i) {
          r.data[i] = scale(static_cast<unsigned char>(bytes_[pos_ + i]), maxval);
        }
        break;
      }
      default:
        fail(std::string("unsupported PNM kind P") + kind);
    }
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw Error(source_ + ": " + msg); }

  void skip_space() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int next_int() {
    skip_space();
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      fail("malformed header or data");
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1'000'000'000) fail("number out of range");
    }
    return static_cast<int>(v);
  }

  bool next_bit() {
    skip_space();
    if (pos_ >= bytes_.size() || (bytes_[pos_] != '0' && bytes_[pos_] != '1')) {
      fail("malformed PBM data");
    }
    return bytes_[pos_++] == '1';
  }

  static std::uint8_t scale(int v, int maxval) {
    if (v > maxval) v = maxval;
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
  }

  std::string bytes_;
  std::string source_;
  std::size_t pos_ = 0;
};

Raster read_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  const std::string name = path.string();
  if (!png_image_begin_read_from_file(&image, name.c_str())) {
    throw Error(name + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw Error(name + ": unsupported bit depth (16-bit PNG)");
  }
  // Keep colour/alpha layout but drop any palette so pixels arrive expanded.
  image.format &= (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_ALPHA);
  const int stored = PNG_IMAGE_PIXEL_CHANNELS(image.format);
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(name + ": " + msg);
  }
  Raster r;
  r.width = static_cast<int>(image.width);
  r.height = static_cast<int>(image.height);
  r.channels = (image.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
  const std::size_t pixels = static_cast<std::size_t>(r.width) * r.height;
  r.data.resize(pixels * r.channels);
  for (std::size_t i = 0; i < pixels; ++i) {
    for (int c = 0; c < r.channels; ++c) r.data[i * r.channels + c] = buf[i * stored + c];
  }
  return r;
}

void write_png(const fs::path& path, const Raster& r) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(r.width);
  image.height = static_cast<png_uint_32>(r.height);
  image.format = r.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::string name = path.string();
  if (!png_image_write_to_file(&image, name.c_str(), 0, r.data.data(), 0, nullptr)) {
    throw Error(name + ": " + image.message);
  }
}

void write_pnm(const fs::path& path, const Raster& r, char kind) {
  std::ostringstream os;
  os << 'P' << kind << '\n' << r.width << ' ' << r.height << '\n';
  const std::size_t pixels = static_cast<std::size_t>(r.width) * r.height;
  if (kind == '4') {
    const std::size_t stride = (static_cast<std::size_t>(r.width) + 7) / 8;
    std::string row(stride, '\0');
    for (int y = 0; y < r.height; ++y) {
      std::fill(row.begin(), row.end(), '\0');
      for (int x = 0; x < r.width; ++x) {
        const std::size_t i = (static_cast<std::size_t>(y) * r.width + x) * r.channels;
        if (r.data[i] > 127) row[x / 8] = static_cast<char>(row[x / 8] | (0x80 >> (x % 8)));
      }
      os << row;
    }
  } else {
    os << "255\n";
    const int out_channels = kind == '6' ? 3 : 1;
    for (std::size_t i = 0; i < pixels; ++i) {
      for (int c = 0; c < out_channels; ++c) {
        const int src = r.channels == 3 ? (out_channels == 3 ? c : 0) : 0;
        os << static_cast<char>(r.data[i * r.channels + src]);
      }
    }
  }
  std::ofstream f(path, std::ios::binary);
  f << os.str();
  if (!f) throw Error(path.string() + ": write failed");
}

}  // namespace

Raster read_raster(const fs::path& path) {
  if (!fs::exists(path)) throw Error(path.string() + ": no such file");
  if (has_extension(path, ".png")) return read_png(path);
  std::string bytes = detail::read_file(path);
  if (bytes.size() >= 8 && static_cast<unsigned char>(bytes[0]) == 0x89 && bytes[1] == 'P') {
    return read_png(path);
  }
  return PnmReader(std::move(bytes), path.string()).read();
}

void write_raster(const fs::path& path, const Raster& r) {
  if (has_extension(path, ".png")) write_png(path, r);
  else if (has_extension(path, ".pbm")) write_pnm(path, r, '4');
  else if (has_extension(path, ".pgm")) write_pnm(path, r, '5');
  else if (has_extension(path, ".ppm")) write_pnm(path, r, '6');
  else throw Error(path.string() + ": unsupported output extension");
}

BinaryMask decode_mask(const fs::path& path) {
  const Raster r = read_raster(path);
  BinaryMask m(r.width, r.height);
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      const std::size_t i = (static_cast<std::size_t>(y) * r.width + x) * r.channels;
      if (r.channels == 3 && (r.data[i] != r.data[i + 1] || r.data[i] != r.data[i + 2])) {
        throw Error(path.string() + ": RGB mask with unequal channels at (" +
                    std::to_string(x) + ", " + std::to_string(y) + ")");
      }
      if (r.data[i] > 127) m.set(x, y, true);
    }
  }
  return m;
}

ProbabilityMap decode_probability_map(const fs::path& path) {
  Raster r = read_raster(path);
  if (r.channels != 1) {
    throw Error(path.string() + ": probability maps must be single-channel");
  }
  return {r.width, r.height, std::move(r.data)};
}

void encode_mask(const fs::path& path, const BinaryMask& m) {
  Raster r{m.width(), m.height(), 1, m.to_bytes()};
  for (auto& v : r.data) v = v ? 255 : 0;
  write_raster(path, r);
}

void encode_probability_map(const fs::path& path, const ProbabilityMap& p) {
  if (has_extension(path, ".pbm")) throw Error(path.string() + ": PBM cannot hold grayscale");
  Raster r{p.width(), p.height(), 1, {p.values().begin(), p.values().end()}};
  write_raster(path, r);
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t content_hash(const fs::path& path) { return fnv1a(detail::read_file(path)); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace skinmorph
