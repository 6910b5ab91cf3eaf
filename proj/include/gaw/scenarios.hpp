#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaw/config.hpp"
#include "gaw/observables.hpp"

namespace gaw {

struct SweepResult {
  std::string axis_name;
  std::vector<double> axis_values;
  std::vector<std::string> metric_columns;               // expanded column names
  std::vector<std::vector<std::optional<double>>> rows;  // [point][column]; empty cell on flagged rows
  std::vector<std::string> status;  // "ok" | "no_unique_steady_state" | "error: ..."
};

// Steady-state metrics along one swept drive parameter. Points may be
// evaluated on several threads; rows are keyed by axis index, so the result
// is identical for every thread count.
SweepResult run_sweep(const ScenarioConfig& cfg, int threads = 1);

struct RunArtifacts {
  std::vector<std::string> files;  // full paths written (CSV first)
};

// Executes one configured run, writing <out_dir>/<name>.csv, a state JSON
// when the run produces a single state, and <out_dir>/<name>.manifest.json.
RunArtifacts run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                          const std::string& name, int threads = 1,
                          const std::string& preset = {}, const std::string& label = {});

const std::vector<std::string>& preset_names();

// The (label, raw config) runs a preset expands to, before overrides.
std::vector<std::pair<std::string, RawConfig>> expand_preset(const std::string& name);

RunArtifacts run_preset(const std::string& name, const std::vector<std::string>& overrides,
                        const std::string& out_dir, int threads = 1);

}  // namespace gaw
