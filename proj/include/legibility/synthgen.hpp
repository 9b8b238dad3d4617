#pragma once

// Deterministic synthetic scenarios: handcrafted-style trajectory families
// and probabilistic observers that stand in for collected human responses.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "legibility/camera.hpp"
#include "legibility/dataset.hpp"
#include "legibility/execution.hpp"
#include "legibility/responses.hpp"
#include "legibility/trajectory.hpp"

namespace legibility {

enum class TrajectoryKind { Straight, Arc, Deceptive };

std::string_view to_string(TrajectoryKind kind);
std::optional<TrajectoryKind> trajectory_kind_from_string(std::string_view name);

struct ShapeOptions {
  /// Arc sagitta as a fraction of the chord length.
  double bow = 0.25;
  /// Deceptive waypoint position along start -> distractor.
  double detour = 0.8;
  /// Share of the duration spent on the deceptive first leg.
  double detour_time = 0.6;
};

/// Goal other than the intended one closest to the intended goal.
std::size_t nearest_distractor(const Scene& scene);

/// Uniformly time-sampled path from `start` that ends exactly on the
/// intended goal. Arc and deceptive kinds bend relative to the nearest
/// distractor.
Trajectory generate_trajectory(TrajectoryKind kind, const Scene& scene, const Point3& start, std::size_t samples,
                               double duration, const std::string& id, const ShapeOptions& shape = {});

enum class ObserverKind { Posterior, NearestGoal, ProgressRamp };

std::string_view to_string(ObserverKind kind);
std::optional<ObserverKind> observer_kind_from_string(std::string_view name);

struct ObserverModel {
  ObserverKind kind = ObserverKind::Posterior;
  double noise = 0.0;  // lapse probability of a uniformly random guess
  double a = 0.0;      // progress_ramp intercept
  double b = 1.0;      // progress_ramp slope
};

/// One item shown to synthetic observers: a partial plus its viewing angle.
struct ObservedItem {
  Trajectory partial;
  double fraction = 1.0;
  const Viewpoint* view = nullptr;
};

/// Guess distribution over the scene's goals at the partial's final sample.
/// The posterior observer infers in the item's image plane when a viewpoint
/// is attached and in world space otherwise.
std::vector<double> guess_distribution(const ObservedItem& item, const Scene& scene, const ObserverModel& model);

/// `n` records per item, drawn from per-item seeded streams.
std::vector<ResponseRecord> synthetic_responses(const std::vector<ObservedItem>& items, const Scene& scene,
                                                const ObserverModel& model, std::size_t n, std::uint64_t seed,
                                                Execution execution = Execution::Parallel);

struct SynthTrajectorySpec {
  std::string id;
  TrajectoryKind kind = TrajectoryKind::Straight;
  std::string goal;  // intended goal id; empty means the first goal
  std::size_t samples = 41;
  double duration = 2.0;
  ShapeOptions shape;
};

struct SynthSpec {
  std::string layout_id = "layout";
  std::vector<Goal> goals;
  std::vector<double> priors;
  Point3 start;
  std::vector<SynthTrajectorySpec> trajectories;
  std::vector<double> fractions = {1.0};
  std::vector<Viewpoint> viewpoints;
  ObserverModel observer;
  std::size_t responses_per_item = 50;
  std::uint64_t seed = 0;
};

/// Builds a complete dataset: one scene per intended goal in use (id
/// "<layout>_<goal>"), the trajectories, viewpoints and observer responses.
Dataset synthesize_dataset(const SynthSpec& spec, Execution execution = Execution::Parallel);

}  // namespace legibility
