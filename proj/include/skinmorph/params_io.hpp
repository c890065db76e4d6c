#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "skinmorph/classification.hpp"
#include "skinmorph/config.hpp"
#include "skinmorph/training.hpp"

namespace skinmorph {

/// Flat `key = value` text with keys a1, a2, b1, b2, c1; `#` starts a
/// comment line. All five keys are required, unknown or repeated keys are
/// rejected.
ThresholdParams parse_params(std::string_view text, const std::string& source = "<params>");
ThresholdParams load_params(const std::filesystem::path& path);
std::string format_params(const ThresholdParams& p, const std::string& comment = {});
void save_params(const std::filesystem::path& path, const ThresholdParams& p,
                 const std::string& comment = {});

/// Grid files use the same keys. A value is either a comma-separated list
/// (`b1 = 8, 10, 12`) or an inclusive range `start:stop:step`
/// (`a1 = 0.1:0.5:0.05`). Missing keys fall back to the default grid.
GridSpec parse_grid(std::string_view text, const std::string& source = "<grid>");
GridSpec load_grid(const std::filesystem::path& path);
std::string format_grid(const GridSpec& g);

/// Pipeline overrides in the same `key = value` form, keys named after the
/// PipelineConfig fields. Missing keys keep their defaults.
PipelineConfig parse_pipeline_config(std::string_view text,
                                     const std::string& source = "<config>");
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
std::string format_pipeline_config(const PipelineConfig& c);

}  // namespace skinmorph
