#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posner/experiments/config.hpp"

namespace posner::experiments {

enum class SweepParam { J_scale, B0 };

std::string_view to_string(SweepParam p);
// Throws ConfigError for anything but J_scale or B0.
SweepParam parse_sweep_param(std::string_view text);

struct SweepSpec {
  SweepParam param = SweepParam::J_scale;
  std::vector<double> values;
};

// A named experiment: either a config text (optionally swept), or a list of
// other presets run together.
struct Preset {
  std::string name;
  std::string summary;
  std::string config_text;
  std::optional<SweepSpec> sweep;
  std::vector<std::string> members;
};

const std::vector<Preset>& presets();
// Throws UnknownPresetError.
const Preset& find_preset(std::string_view name);

// A concrete run: the config after overrides and sweep substitution.
struct RunPlan {
  std::string preset;
  ExperimentConfig config;
};

// Config of the sweep point, renamed `<name>__<param>_<value>`.
ExperimentConfig sweep_point(const ExperimentConfig& base, SweepParam param, double value);

// Leaf presets become one plan, sweeps one per value, composites the
// concatenation of their members. Overrides are applied to every leaf before
// sweep substitution.
std::vector<RunPlan> expand_preset(std::string_view name,
                                   const std::vector<std::pair<std::string, std::string>>& overrides = {});

}  // namespace posner::experiments
