#pragma once

// File formats and the benchmark pipeline behind the CLI:
// load dataset -> score frameworks -> estimate baseline -> correlate -> report.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "legibility/baseline.hpp"
#include "legibility/dataset.hpp"
#include "legibility/stats.hpp"
#include "legibility/synthgen.hpp"

namespace legibility {

/// Reads scenes.json, trajectories.json, and the optional viewpoints.json and
/// responses.csv. Errors name the file, record and field involved.
Dataset load_dataset(const std::filesystem::path& data_dir);

/// Writes the files load_dataset reads. Trajectory data is written at full
/// precision so a reload reproduces it exactly.
void write_dataset(const Dataset& dataset, const std::filesystem::path& data_dir);

BenchmarkConfig load_config(const std::filesystem::path& path);
BenchmarkConfig parse_config(const std::string& json_text);

/// Enables exactly the comma-separated frameworks, keeping any params.
void restrict_frameworks(BenchmarkConfig& config, const std::string& comma_list);

SynthSpec load_synth_spec(const std::filesystem::path& path);
SynthSpec parse_synth_spec(const std::string& json_text);

struct RunOptions {
  std::uint64_t seed = 0;
  BootstrapOptions bootstrap;
  Execution execution = Execution::Parallel;
};

/// Zero-association or skipped outcome worth surfacing in the report.
struct ReportFlag {
  std::string framework;
  std::string scope;  // "framework_baseline", "framework_matrix", "scoring"
  std::string reason;
};

struct BenchmarkReport {
  BenchmarkConfig config;
  RunOptions options;
  ScoreOutcome scores;
  std::vector<BaselineEstimate> baselines;
  std::vector<FrameworkBaselineRow> framework_baseline;
  FrameworkMatrix matrix;
  std::vector<ReportFlag> flags;
};

BenchmarkReport run_benchmark(const Dataset& dataset, const BenchmarkConfig& config, const RunOptions& options);

/// %.12g, the precision used in every report file.
std::string format_number(double value);

void write_scores_csv(std::ostream& out, const std::vector<ScoreRecord>& records);
void write_baseline_csv(std::ostream& out, const std::vector<BaselineEstimate>& baselines);
void write_framework_baseline_csv(std::ostream& out, const std::vector<FrameworkBaselineRow>& rows);
void write_matrix_csv(std::ostream& out, const FrameworkMatrix& matrix);
std::string report_json(const BenchmarkReport& report);

// Subcommands. Each returns a process exit code and prints diagnostics to
// `err`.
struct CommandPaths {
  std::filesystem::path data_dir;
  std::filesystem::path config;  // empty: all frameworks with defaults
  std::filesystem::path out_dir;
  std::string frameworks;        // empty: no override
};

int cmd_score(const CommandPaths& paths, Execution execution, std::ostream& err);
int cmd_baseline(const CommandPaths& paths, const RunOptions& options, std::ostream& err);
int cmd_benchmark(const CommandPaths& paths, const RunOptions& options, std::ostream& err);
int cmd_synth(const std::filesystem::path& spec_path, const std::filesystem::path& out_dir,
              std::optional<std::uint64_t> seed_override, std::ostream& err);

}  // namespace legibility
