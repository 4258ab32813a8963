#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "posner/experiments/runner.hpp"

namespace posner::experiments {

// %.17g
std::string format_double(double v);

// Header row first, t_s leading; UNIX newlines.
std::string series_csv(const TimeSeries& ts);
std::string spectrum_csv(const std::vector<transitions::SpectrumRow>& rows);
std::string relaxation_csv(const relaxation::IsotopeComparison& cmp);

std::string sha256_hex(std::string_view data);

// JSON manifest: run name, preset, engine version, config hash and the files
// written. No timestamps, so reruns produce the same bytes.
std::string manifest_json(const RunResult& r, const std::vector<std::string>& files);

// Writes <name>.csv, <name>_spectrum.csv, <name>_relaxation.csv as requested
// plus <name>.manifest.json; returns the paths written.
std::vector<std::filesystem::path> write_outputs(const std::filesystem::path& dir, const RunResult& r);

}  // namespace posner::experiments
