#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "legibility/camera.hpp"
#include "legibility/error.hpp"
#include "legibility/execution.hpp"
#include "legibility/frameworks.hpp"
#include "legibility/responses.hpp"
#include "legibility/trajectory.hpp"

namespace legibility {

/// A trajectory together with the progress fractions it is evaluated at.
struct DatasetTrajectory {
  Trajectory trajectory;
  std::vector<double> fractions;
};

/// Validated benchmark input. Cross references (trajectory -> scene,
/// response -> item, response -> viewpoint) are checked by `validate`.
struct Dataset {
  std::vector<Scene> scenes;
  std::vector<DatasetTrajectory> trajectories;
  std::vector<Viewpoint> viewpoints;
  std::vector<ResponseRecord> responses;
  bool has_responses = false;

  const Scene* find_scene(const std::string& id) const;
  const DatasetTrajectory* find_trajectory(const std::string& id) const;
  const Viewpoint* find_viewpoint(const std::string& id) const;

  /// Every (trajectory, fraction, viewpoint) item in canonical order. With no
  /// viewpoints the viewpoint id is empty.
  std::vector<ItemKey> items() const;

  /// Throws ErrorKind::ReferentialIntegrity or ErrorKind::Schema.
  void validate() const;
};

struct FrameworkSettings {
  bool enabled = true;
  ParamMap params;
};

/// Which frameworks run and with what hyperparameter overrides.
struct BenchmarkConfig {
  std::map<FrameworkId, FrameworkSettings> frameworks;

  /// All ten frameworks enabled with default hyperparameters.
  static BenchmarkConfig all_defaults();
  std::vector<FrameworkId> enabled() const;
  const ParamMap& params(FrameworkId id) const;
};

struct ScoreRecord {
  FrameworkId framework;
  ItemKey item;
  double value = 0.0;
};

/// An item or framework that could not be scored. `item` is empty for
/// framework-level skips.
struct ScoreExclusion {
  FrameworkId framework;
  std::optional<ItemKey> item;
  ErrorKind kind;
  std::string message;
};

struct ScoreOutcome {
  std::vector<ScoreRecord> records;
  std::vector<ScoreExclusion> exclusions;
};

struct ScoreOptions {
  Execution execution = Execution::Parallel;
  /// Rethrow the first failure instead of logging it as an exclusion.
  bool strict = false;
};

/// One record per (enabled framework x item). View-independent frameworks
/// are evaluated once per (trajectory, fraction) and replicated across
/// viewpoints. Output is sorted by (framework, trajectory, fraction,
/// viewpoint) regardless of execution order.
ScoreOutcome score_all(const Dataset& dataset, const BenchmarkConfig& config, const ScoreOptions& options = {});

}  // namespace legibility
