#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace skinmorph::cli {

/// Collects output files in a hidden directory next to their destination and
/// moves them into place only on commit(). Anything not committed is removed
/// on destruction, so a failed run leaves no partial output behind.
class StagedOutput {
 public:
  explicit StagedOutput(std::filesystem::path out_dir);
  ~StagedOutput();
  StagedOutput(const StagedOutput&) = delete;
  StagedOutput& operator=(const StagedOutput&) = delete;

  /// Path to write `relative` to while staging.
  std::filesystem::path stage(const std::filesystem::path& relative);
  void commit();

 private:
  std::filesystem::path out_dir_;
  std::filesystem::path staging_;
  bool created_out_ = false;
  bool committed_ = false;
  std::vector<std::filesystem::path> files_;
};

/// Writes `text` to `path` via a temporary sibling and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace skinmorph::cli
