#include "staging.hpp"

#include <unistd.h>

#include <fstream>

#include "skinmorph/error.hpp"

namespace fs = std::filesystem;

namespace skinmorph::cli {

namespace {

std::string unique_suffix() { return std::to_string(::getpid()); }

}  // namespace

StagedOutput::StagedOutput(fs::path out_dir) : out_dir_(std::move(out_dir)) {
  std::error_code ec;
  if (!fs::exists(out_dir_)) {
    fs::create_directories(out_dir_, ec);
    if (ec) throw Error(out_dir_.string() + ": cannot create output directory: " + ec.message());
    created_out_ = true;
  } else if (!fs::is_directory(out_dir_)) {
    throw Error(out_dir_.string() + ": not a directory");
  }
  staging_ = out_dir_ / (".staging-" + unique_suffix());
  fs::create_directory(staging_, ec);
  if (ec) {
    if (created_out_) fs::remove(out_dir_, ec);
    throw Error(out_dir_.string() + ": output directory is not writable");
  }
}

StagedOutput::~StagedOutput() {
  std::error_code ec;
  fs::remove_all(staging_, ec);
  if (!committed_ && created_out_) fs::remove_all(out_dir_, ec);
}

fs::path StagedOutput::stage(const fs::path& relative) {
  const fs::path p = staging_ / relative;
  fs::create_directories(p.parent_path());
  files_.push_back(relative);
  return p;
}

void StagedOutput::commit() {
  std::vector<fs::path> moved;
  try {
    for (const auto& rel : files_) {
      const fs::path dst = out_dir_ / rel;
      fs::create_directories(dst.parent_path());
      fs::rename(staging_ / rel, dst);
      moved.push_back(dst);
    }
  } catch (const fs::filesystem_error& e) {
    std::error_code ec;
    for (const auto& p : moved) fs::remove(p, ec);
    throw Error(std::string("moving outputs into place failed: ") + e.what());
  }
  committed_ = true;
}

void write_file_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp-" + unique_suffix();
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw Error(path.string() + ": cannot open for writing");
    f << text;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(path.string() + ": write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    const std::string why = ec.message();
    fs::remove(tmp, ec);
    throw Error(path.string() + ": " + why);
  }
}

}  // namespace skinmorph::cli
