#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

inline std::filesystem::path dir() { return SKINMORPH_FIXTURE_DIR; }

struct ClassCase {
  std::string name;
  long sr_num = 0;
  long sr_den = 1;
  std::optional<std::size_t> cc;
  std::optional<std::pair<long, long>> bsr;
  char class_sa3 = 'E';
  char class_segnet = 'E';
  std::string derivation;
};

inline std::pair<long, long> fraction(const std::string& s) {
  const auto slash = s.find('/');
  return {std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1))};
}

inline std::vector<ClassCase> classification_cases() {
  std::ifstream f(dir() / "classification_cases.tsv");
  std::vector<ClassCase> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() < 7) continue;
    ClassCase c;
    c.name = cols[0];
    std::tie(c.sr_num, c.sr_den) = fraction(cols[1]);
    if (cols[2] != "-") c.cc = std::stoul(cols[2]);
    if (cols[3] != "-") c.bsr = fraction(cols[3]);
    c.class_sa3 = cols[4].at(0);
    c.class_segnet = cols[5].at(0);
    c.derivation = cols[6];
    out.push_back(c);
  }
  return out;
}

/// Transcribed score table: first row holds method names, first column
/// dataset names.
struct ScoreTable {
  std::vector<std::string> methods;
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> values;
};

inline ScoreTable method_scores() {
  std::ifstream f(dir() / "method_scores.tsv");
  ScoreTable t;
  std::string line;
  bool header = true;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string col;
    std::vector<std::string> cols;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (header) {
      t.methods.assign(cols.begin() + 1, cols.end());
      header = false;
      continue;
    }
    t.datasets.push_back(cols[0]);
    std::vector<double> row;
    for (std::size_t i = 1; i < cols.size(); ++i) row.push_back(std::stod(cols[i]));
    t.values.push_back(row);
  }
  return t;
}

inline std::vector<double> column(const ScoreTable& t, const std::string& method) {
  std::size_t idx = 0;
  while (idx < t.methods.size() && t.methods[idx] != method) ++idx;
  std::vector<double> out;
  for (const auto& row : t.values) out.push_back(row.at(idx));
  return out;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("skinmorph_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace fixtures
