#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posner/experiments/config.hpp"
#include "posner/experiments/presets.hpp"
#include "posner/relaxation/scalar_relaxation.hpp"
#include "posner/transitions/transitions.hpp"

namespace posner::experiments {

struct Column {
  std::string name;
  std::vector<double> values;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<Column> columns;

  // Throws NumericGuardError on NaN/Inf and std::logic_error on ragged columns.
  void validate() const;
  const Column& column(std::string_view name) const;
};

struct RunResult {
  std::string name;
  std::string preset;
  ExperimentConfig config;
  std::optional<TimeSeries> series;
  std::vector<transitions::SpectrumRow> spectrum;
  std::optional<relaxation::IsotopeComparison> relaxation;
};

// Everything the config requests. Throws ConfigError for labels that do not
// resolve or values the physics layer rejects, NumericGuardError for guard
// violations (dimension limits, non-finite output).
RunResult run(const ExperimentConfig& cfg, const std::string& preset = "");

// Plans run on up to `jobs` threads; results come back in plan order.
std::vector<RunResult> run_all(std::span<const RunPlan> plans, unsigned jobs);

std::vector<RunResult> sweep(const ExperimentConfig& base, SweepParam param, std::span<const double> values,
                             unsigned jobs = 1);

// Column name helpers, e.g. concurrence_P0_P3.
std::string column_name(std::string_view quantity, const LabelPair& pair);

}  // namespace posner::experiments
