#pragma once
// Configuration-driven experiment runner. Seven named experiments regenerate
// the reference figures as a long-format CSV, a JSON run manifest and
// optional SVG plots. Identical configs produce byte-identical CSVs.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "geomsense/fock.hpp"

namespace geomsense {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Schema-validates and fills in every default. Throws ConfigError with a
// JSON-pointer-qualified message; unknown keys are rejected at every level.
json resolve_config(const json& config);

// Parse + resolve from disk; parse errors carry line/column positions.
json load_config_file(const std::filesystem::path& path);

struct CsvRow {
  std::string experiment;
  std::string x_name;
  double x_value = 0;
  std::string series;
  std::string y_name;
  double y_value = 0;
  std::string flag;
};

struct SvgArtifact {
  std::string name;  // file basename
  std::string content;
};

struct ExperimentResult {
  std::vector<CsvRow> rows;
  std::vector<SvgArtifact> svgs;
  json diagnostics;
  WarningList flags;
  bool convergence_failure = false;
};

struct RunOptions {
  std::filesystem::path output_dir = ".";
  int jobs = 0;            // 0 = hardware concurrency
  int cutoff_override = 0; // 0 = use config value
  bool write_svg = true;
};

// Compute a resolved config's experiment entirely in memory.
ExperimentResult compute_experiment(const json& resolved, const RunOptions& opts);

struct RunOutcome {
  int exit_code = 0;  // 0 ok; 2 config error; 3 numerical-convergence failure
  std::string error;
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
  std::vector<std::filesystem::path> svg_paths;
};

// Validate, compute, and write csv/manifest/svg artifacts to disk.
RunOutcome run_experiment_file(const std::filesystem::path& config_path,
                               const RunOptions& opts);
RunOutcome run_experiment_config(const json& config, const RunOptions& opts);

// Stable alphabetized listing with the figure each experiment regenerates.
std::string list_experiments_text();

std::string format_csv(const std::vector<CsvRow>& rows);

extern const char* const kVersion;

}  // namespace geomsense
