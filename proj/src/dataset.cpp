#include "legibility/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace legibility {

std::string to_string(const ItemKey& key) {
  char fraction[32];
  std::snprintf(fraction, sizeof fraction, "%.12g", key.fraction);
  std::string out = key.trajectory_id + "@" + fraction;
  if (!key.viewpoint_id.empty()) out += "/" + key.viewpoint_id;
  return out;
}

const Scene* Dataset::find_scene(const std::string& id) const {
  for (const auto& s : scenes) {
    if (s.id() == id) return &s;
  }
  return nullptr;
}

const DatasetTrajectory* Dataset::find_trajectory(const std::string& id) const {
  for (const auto& t : trajectories) {
    if (t.trajectory.id() == id) return &t;
  }
  return nullptr;
}

const Viewpoint* Dataset::find_viewpoint(const std::string& id) const {
  for (const auto& v : viewpoints) {
    if (v.id() == id) return &v;
  }
  return nullptr;
}

std::vector<ItemKey> Dataset::items() const {
  std::vector<ItemKey> out;
  for (const auto& dt : trajectories) {
    for (double f : dt.fractions) {
      if (viewpoints.empty()) {
        out.push_back({dt.trajectory.id(), f, {}});
      } else {
        for (const auto& v : viewpoints) out.push_back({dt.trajectory.id(), f, v.id()});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Dataset::validate() const {
  std::set<std::string> seen;
  for (const auto& s : scenes) {
    if (!seen.insert(s.id()).second) throw Error(ErrorKind::Schema, "duplicate scene id '" + s.id() + "'");
  }
  seen.clear();
  for (const auto& v : viewpoints) {
    if (v.id().empty()) throw Error(ErrorKind::Schema, "viewpoint id must be non-empty");
    if (!seen.insert(v.id()).second) throw Error(ErrorKind::Schema, "duplicate viewpoint id '" + v.id() + "'");
  }
  seen.clear();
  for (const auto& dt : trajectories) {
    const auto& traj = dt.trajectory;
    if (!seen.insert(traj.id()).second) throw Error(ErrorKind::Schema, "duplicate trajectory id '" + traj.id() + "'");
    if (find_scene(traj.scene_id()) == nullptr) {
      throw Error(ErrorKind::ReferentialIntegrity,
                  "trajectory '" + traj.id() + "' references unknown scene_id '" + traj.scene_id() + "'");
    }
    if (dt.fractions.empty()) {
      throw Error(ErrorKind::Schema, "trajectory '" + traj.id() + "' lists no fractions");
    }
    std::set<double> unique;
    for (double f : dt.fractions) {
      Fraction checked(f);
      if (!unique.insert(checked.value()).second) {
        throw Error(ErrorKind::Schema, "trajectory '" + traj.id() + "' repeats a fraction");
      }
    }
  }

  for (std::size_t row = 0; row < responses.size(); ++row) {
    const auto& r = responses[row];
    const std::string where = "response " + std::to_string(row + 1);
    const auto* dt = find_trajectory(r.trajectory_id);
    if (dt == nullptr) {
      throw Error(ErrorKind::ReferentialIntegrity,
                  where + ": unknown trajectory_id '" + r.trajectory_id + "'");
    }
    if (std::find(dt->fractions.begin(), dt->fractions.end(), r.fraction) == dt->fractions.end()) {
      throw Error(ErrorKind::ReferentialIntegrity,
                  where + ": trajectory '" + r.trajectory_id + "' is not evaluated at that fraction");
    }
    if (viewpoints.empty() && !r.viewpoint_id.empty()) {
      throw Error(ErrorKind::ReferentialIntegrity,
                  where + ": viewpoint_id '" + r.viewpoint_id + "' given but the dataset has no viewpoints");
    }
    if (!viewpoints.empty() && find_viewpoint(r.viewpoint_id) == nullptr) {
      throw Error(ErrorKind::ReferentialIntegrity,
                  where + ": unknown viewpoint_id '" + r.viewpoint_id + "'");
    }
    const Scene* scene = find_scene(dt->trajectory.scene_id());
    if (r.guess != kNoAnswer && scene->find_goal(r.guess) < 0) {
      throw Error(ErrorKind::Schema, where + ": guess '" + r.guess + "' is not a goal of scene '" + scene->id() + "'");
    }
    if (r.response_time_s && !(std::isfinite(*r.response_time_s) && *r.response_time_s >= 0.0)) {
      throw Error(ErrorKind::Schema, where + ": response_time_s must be >= 0");
    }
  }
}

BenchmarkConfig BenchmarkConfig::all_defaults() {
  BenchmarkConfig config;
  for (auto id : kAllFrameworks) config.frameworks[id] = FrameworkSettings{};
  return config;
}

std::vector<FrameworkId> BenchmarkConfig::enabled() const {
  std::vector<FrameworkId> out;
  for (const auto& [id, settings] : frameworks) {
    if (settings.enabled) out.push_back(id);
  }
  return out;
}

const ParamMap& BenchmarkConfig::params(FrameworkId id) const {
  static const ParamMap empty;
  const auto it = frameworks.find(id);
  return it == frameworks.end() ? empty : it->second.params;
}

}  // namespace legibility
