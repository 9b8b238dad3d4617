#pragma once

// The ten legibility scoring functionals. Each maps a (partial) trajectory
// and its scene to a scalar; viewpoint and observer feedback enter only for
// the frameworks that use them.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "legibility/camera.hpp"
#include "legibility/responses.hpp"
#include "legibility/trajectory.hpp"

namespace legibility {

enum class FrameworkId {
  BoddenPoint,
  BoddenVelocity,
  Dragan,
  Nikolaidis,
  Busch,
  ZhaoFastApp,
  ZhaoEffDist,
  BiedObsL,
  BiedObsP,
  BiedObsD,
};

inline constexpr std::array<FrameworkId, 10> kAllFrameworks = {
    FrameworkId::BoddenPoint, FrameworkId::BoddenVelocity, FrameworkId::Dragan,      FrameworkId::Nikolaidis,
    FrameworkId::Busch,       FrameworkId::ZhaoFastApp,    FrameworkId::ZhaoEffDist, FrameworkId::BiedObsL,
    FrameworkId::BiedObsP,    FrameworkId::BiedObsD,
};

/// Lower-is-better (cost) or higher-is-better (reward).
enum class ScoreKind { Cost, Reward };

std::string_view to_string(FrameworkId id);
std::string_view to_string(ScoreKind kind);
std::optional<FrameworkId> framework_from_string(std::string_view name);
ScoreKind score_kind(FrameworkId id);

/// Whether the framework's value can differ between viewpoints of one item.
bool is_view_dependent(FrameworkId id);

struct BoddenParams {
  double alpha = 1.0;
  double beta = 1.0;
  double epsilon = 0.1;
};

struct ZhaoParams {
  double r0 = 10.0;
  double epsilon_threshold = 0.05;  // meters
  double beta = 1.0;
};

struct BiedParams {
  double beta = 1.0;
  double epsilon = -1.0;
  double sigma = 1.0;
};

struct BuschParams {
  double beta = 10.0;
  double epsilon = -0.01;
};

/// Named scalar overrides for one framework, validated on conversion.
using ParamMap = std::map<std::string, double>;

BoddenParams bodden_params(const ParamMap& overrides);
ZhaoParams zhao_params(const ParamMap& overrides);
BiedParams bied_params(const ParamMap& overrides);
BuschParams busch_params(const ParamMap& overrides);

/// Throws ErrorKind::Configuration on unknown names or out-of-range values.
void validate_params(FrameworkId id, const ParamMap& overrides);

enum class BoddenMetric { Point, Velocity };
enum class ZhaoVariant { FastApp, EffDist };
enum class BiedVariant { ObsL, ObsP, ObsD };

/// Time-weighted mean of the intended goal's posterior, weights T - t.
double score_dragan(const Trajectory& traj, const Scene& scene);

/// score_dragan evaluated on normalized image-plane projections.
double score_nikolaidis(const Trajectory& traj, const Scene& scene, const Viewpoint& view);

double score_bodden(const Trajectory& traj, const Scene& scene, BoddenMetric metric, const BoddenParams& hp);

/// `responses` must already be restricted to this trajectory item.
double score_busch(const Trajectory& traj, const Scene& scene, std::span<const ResponseRecord> responses,
                   const BuschParams& hp);

double score_zhao(const Trajectory& traj, const Scene& scene, ZhaoVariant variant, const ZhaoParams& hp);

double score_bied(const Trajectory& traj, const Scene& scene, BiedVariant variant, const BiedParams& hp);

/// Per-sample effDist legibility reward, exposed for inspection and tests.
ScalarSeries zhao_effdist_reward(const Trajectory& traj, const Scene& scene);

/// Time the intended-goal distance spends below `threshold`, with the
/// distance linearly interpolated between samples.
double time_within(const ScalarSeries& distances, double threshold);

}  // namespace legibility
