#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skinmorph/mask.hpp"

namespace skinmorph {

enum class MetricKind { F1, AP };

std::string to_string(MetricKind k);

struct ManifestEntry {
  /// Path of the predicted mask, relative to the manifest's directory unless
  /// absolute.
  std::string prediction;
  /// Ground-truth mask path, or the class label for AP datasets.
  std::string truth;
  std::optional<std::string> group;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// Line-oriented dataset description:
///
///     # comment
///     id = ecu
///     metric = f1            (f1 | ap, default f1)
///     positive = face        (required for ap, forbidden for f1)
///     pred/0001.png<TAB>gt/0001.png[<TAB>group]
///
/// Header lines come before the first entry line. Either every entry carries
/// a group key or none does.
struct DatasetManifest {
  std::string id;
  MetricKind metric = MetricKind::F1;
  std::optional<std::string> positive_label;
  std::vector<ManifestEntry> entries;
  std::filesystem::path base_dir;

  bool grouped() const { return !entries.empty() && entries.front().group.has_value(); }
  std::filesystem::path resolve(const std::string& relative) const;
};

DatasetManifest parse_manifest(std::string_view text,
                               const std::filesystem::path& base_dir = {},
                               const std::string& source = "<manifest>");
DatasetManifest load_manifest(const std::filesystem::path& path);
std::string serialize_manifest(const DatasetManifest& m);

/// Decoded 8-bit raster, interleaved channels (1 or 3).
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;
};

/// Reads PNG, PBM, PGM or PPM (ASCII or binary). PBM bits that are set
/// decode to 255. Alpha channels are dropped.
Raster read_raster(const std::filesystem::path& path);
/// Format chosen by extension: .png, .pbm, .pgm, .ppm.
void write_raster(const std::filesystem::path& path, const Raster& raster);

/// Grayscale values > 127 are foreground. RGB input must have equal channels.
BinaryMask decode_mask(const std::filesystem::path& path);
/// Single-channel input only; values are kept as-is.
ProbabilityMap decode_probability_map(const std::filesystem::path& path);

/// Foreground is written as 255 (or a set bit for PBM).
void encode_mask(const std::filesystem::path& path, const BinaryMask& m);
void encode_probability_map(const std::filesystem::path& path, const ProbabilityMap& p);

/// 64-bit FNV-1a of a file's bytes.
std::uint64_t content_hash(const std::filesystem::path& path);
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);
std::string hex64(std::uint64_t v);

}  // namespace skinmorph
