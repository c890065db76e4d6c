#include "skinmorph/params_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "skinmorph/error.hpp"
#include "text_util.hpp"

namespace skinmorph {

namespace {

constexpr const char* kKeys[] = {"a1", "a2", "b1", "b2", "c1"};

constexpr const char* kConfigKeys[] = {
    "standard_radius", "heavy_radius",  "bm_close_radius", "bm_erode_radius",
    "bm_dilate_radius", "small_cc_area", "tiny_cc_area",    "tiny_hole_area",
    "foreground_connectivity", "hole_connectivity"};

template <std::size_t N>
std::map<std::string, std::string> parse_key_values(std::string_view text,
                                                    const std::string& source,
                                                    const char* const (&keys)[N]) {
  auto known_key = [&](const std::string& k) {
    for (const char* key : keys)
      if (k == key) return true;
    return false;
  };
  std::map<std::string, std::string> out;
  int line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    const auto kv = detail::split_key_value(trimmed);
    if (!kv) throw Error(where + "expected 'key = value'");
    if (!known_key(kv->first)) throw Error(where + "unknown key '" + kv->first + "'");
    if (!out.emplace(kv->first, kv->second).second) {
      throw Error(where + "duplicate key '" + kv->first + "'");
    }
  }
  return out;
}

double to_double(const std::string& v, const std::string& key, const std::string& source) {
  const auto d = detail::parse_double(v);
  if (!d) throw Error(source + ": " + key + " is not a number: '" + v + "'");
  return *d;
}

int to_int(const std::string& v, const std::string& key, const std::string& source) {
  const auto i = detail::parse_int(v);
  if (!i) throw Error(source + ": " + key + " is not an integer: '" + v + "'");
  return *i;
}

std::vector<double> double_candidates(const std::string& value, const std::string& key,
                                      const std::string& source) {
  std::vector<double> out;
  if (value.find(':') != std::string::npos) {
    const auto parts = detail::split(value, ':');
    if (parts.size() != 3) throw Error(source + ": " + key + " range must be start:stop:step");
    const double start = to_double(std::string(parts[0]), key, source);
    const double stop = to_double(std::string(parts[1]), key, source);
    const double step = to_double(std::string(parts[2]), key, source);
    if (!(step > 0.0) || stop < start) throw Error(source + ": " + key + " has an empty range");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
      out.push_back(std::round((start + step * static_cast<double>(i)) * 1e9) / 1e9);
    }
    return out;
  }
  for (auto part : detail::split(value, ',')) {
    out.push_back(to_double(std::string(detail::trim(part)), key, source));
  }
  return out;
}

std::vector<int> int_candidates(const std::string& value, const std::string& key,
                                const std::string& source) {
  std::vector<int> out;
  if (value.find(':') != std::string::npos) {
    const auto parts = detail::split(value, ':');
    if (parts.size() != 3) throw Error(source + ": " + key + " range must be start:stop:step");
    const int start = to_int(std::string(parts[0]), key, source);
    const int stop = to_int(std::string(parts[1]), key, source);
    const int step = to_int(std::string(parts[2]), key, source);
    if (step <= 0 || stop < start) throw Error(source + ": " + key + " has an empty range");
    for (int v = start; v <= stop; v += step) out.push_back(v);
    return out;
  }
  for (auto part : detail::split(value, ',')) {
    out.push_back(to_int(std::string(detail::trim(part)), key, source));
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) out += detail::format_double(values[i]);
    else out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

ThresholdParams parse_params(std::string_view text, const std::string& source) {
  const auto kv = parse_key_values(text, source, kKeys);
  for (const char* key : kKeys) {
    if (!kv.count(key)) throw Error(source + ": missing key '" + key + "'");
  }
  ThresholdParams p;
  p.a1 = to_double(kv.at("a1"), "a1", source);
  p.a2 = to_double(kv.at("a2"), "a2", source);
  p.b1 = to_int(kv.at("b1"), "b1", source);
  p.b2 = to_int(kv.at("b2"), "b2", source);
  p.c1 = to_double(kv.at("c1"), "c1", source);
  try {
    p.validate();
  } catch (const Error& e) {
    throw Error(source + ": " + e.what());
  }
  return p;
}

ThresholdParams load_params(const std::filesystem::path& path) {
  return parse_params(detail::read_file(path), path.string());
}

std::string format_params(const ThresholdParams& p, const std::string& comment) {
  std::ostringstream os;
  if (!comment.empty()) {
    for (auto line : detail::split_lines(comment)) os << "# " << line << "\n";
  }
  os << "a1 = " << detail::format_double(p.a1) << "\n";
  os << "a2 = " << detail::format_double(p.a2) << "\n";
  os << "b1 = " << p.b1 << "\n";
  os << "b2 = " << p.b2 << "\n";
  os << "c1 = " << detail::format_double(p.c1) << "\n";
  return os.str();
}

void save_params(const std::filesystem::path& path, const ThresholdParams& p,
                 const std::string& comment) {
  std::ofstream f(path);
  f << format_params(p, comment);
  if (!f) throw Error(path.string() + ": write failed");
}

GridSpec parse_grid(std::string_view text, const std::string& source) {
  const auto kv = parse_key_values(text, source, kKeys);
  GridSpec g = GridSpec::default_grid();
  if (kv.count("a1")) g.a1 = double_candidates(kv.at("a1"), "a1", source);
  if (kv.count("a2")) g.a2 = double_candidates(kv.at("a2"), "a2", source);
  if (kv.count("b1")) g.b1 = int_candidates(kv.at("b1"), "b1", source);
  if (kv.count("b2")) g.b2 = int_candidates(kv.at("b2"), "b2", source);
  if (kv.count("c1")) g.c1 = double_candidates(kv.at("c1"), "c1", source);
  g.validate();
  return g;
}

GridSpec load_grid(const std::filesystem::path& path) {
  return parse_grid(detail::read_file(path), path.string());
}

std::string format_grid(const GridSpec& g) {
  std::ostringstream os;
  os << "a1 = " << join(g.a1) << "\n";
  os << "a2 = " << join(g.a2) << "\n";
  os << "b1 = " << join(g.b1) << "\n";
  os << "b2 = " << join(g.b2) << "\n";
  os << "c1 = " << join(g.c1) << "\n";
  return os.str();
}

PipelineConfig parse_pipeline_config(std::string_view text, const std::string& source) {
  const auto kv = parse_key_values(text, source, kConfigKeys);
  PipelineConfig c;
  auto get_int = [&](const char* key, int& field) {
    if (kv.count(key)) field = to_int(kv.at(key), key, source);
  };
  auto get_area = [&](const char* key, std::size_t& field) {
    if (!kv.count(key)) return;
    const int v = to_int(kv.at(key), key, source);
    if (v < 1) throw Error(source + ": " + key + " must be >= 1");
    field = static_cast<std::size_t>(v);
  };
  auto get_conn = [&](const char* key, Connectivity& field) {
    if (!kv.count(key)) return;
    try {
      field = connectivity_from_int(to_int(kv.at(key), key, source));
    } catch (const Error& e) {
      throw Error(source + ": " + key + ": " + e.what());
    }
  };
  get_int("standard_radius", c.standard_radius);
  get_int("heavy_radius", c.heavy_radius);
  get_int("bm_close_radius", c.bm_close_radius);
  get_int("bm_erode_radius", c.bm_erode_radius);
  get_int("bm_dilate_radius", c.bm_dilate_radius);
  get_area("small_cc_area", c.small_cc_area);
  get_area("tiny_cc_area", c.tiny_cc_area);
  get_area("tiny_hole_area", c.tiny_hole_area);
  get_conn("foreground_connectivity", c.foreground_connectivity);
  get_conn("hole_connectivity", c.hole_connectivity);
  try {
    c.validate();
  } catch (const Error& e) {
    throw Error(source + ": " + e.what());
  }
  return c;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  return parse_pipeline_config(detail::read_file(path), path.string());
}

std::string format_pipeline_config(const PipelineConfig& c) {
  std::ostringstream os;
  os << "standard_radius = " << c.standard_radius << "\n";
  os << "heavy_radius = " << c.heavy_radius << "\n";
  os << "bm_close_radius = " << c.bm_close_radius << "\n";
  os << "bm_erode_radius = " << c.bm_erode_radius << "\n";
  os << "bm_dilate_radius = " << c.bm_dilate_radius << "\n";
  os << "small_cc_area = " << c.small_cc_area << "\n";
  os << "tiny_cc_area = " << c.tiny_cc_area << "\n";
  os << "tiny_hole_area = " << c.tiny_hole_area << "\n";
  os << "foreground_connectivity = " << static_cast<int>(c.foreground_connectivity) << "\n";
  os << "hole_connectivity = " << static_cast<int>(c.hole_connectivity) << "\n";
  return os.str();
}

}  // namespace skinmorph
