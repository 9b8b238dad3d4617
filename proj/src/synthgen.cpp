#include "legibility/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "legibility/baseline.hpp"
#include "legibility/error.hpp"
#include "legibility/posterior.hpp"

namespace legibility {

std::string_view to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::Straight: return "straight";
    case TrajectoryKind::Arc: return "arc";
    case TrajectoryKind::Deceptive: return "deceptive";
  }
  return "unknown";
}

std::optional<TrajectoryKind> trajectory_kind_from_string(std::string_view name) {
  for (auto k : {TrajectoryKind::Straight, TrajectoryKind::Arc, TrajectoryKind::Deceptive}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ObserverKind kind) {
  switch (kind) {
    case ObserverKind::Posterior: return "posterior";
    case ObserverKind::NearestGoal: return "nearest_goal";
    case ObserverKind::ProgressRamp: return "progress_ramp";
  }
  return "unknown";
}

std::optional<ObserverKind> observer_kind_from_string(std::string_view name) {
  for (auto k : {ObserverKind::Posterior, ObserverKind::NearestGoal, ObserverKind::ProgressRamp}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::size_t nearest_distractor(const Scene& scene) {
  const auto goals = scene.goals();
  const Point3 target = scene.intended_position();
  std::size_t best = goals.size();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (i == scene.intended_index()) continue;
    const double d = distance(goals[i].position, target);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (best == goals.size()) {
    throw Error(ErrorKind::Configuration, "scene '" + scene.id() + "' has no distractor goal");
  }
  return best;
}

namespace {

Point3 any_perpendicular(const Point3& u) {
  const Point3 axis = std::abs(u.z) < 0.9 ? Point3{0, 0, 1} : Point3{1, 0, 0};
  const Point3 p = cross(u, axis);
  return (1.0 / norm(p)) * p;
}

}  // namespace

Trajectory generate_trajectory(TrajectoryKind kind, const Scene& scene, const Point3& start, std::size_t samples,
                               double duration, const std::string& id, const ShapeOptions& shape) {
  if (samples < 2) throw Error(ErrorKind::Configuration, "trajectory '" + id + "' needs at least 2 samples");
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorKind::Configuration, "trajectory '" + id + "' needs a positive duration");
  }
  const Point3 goal = scene.intended_position();
  const Point3 chord = goal - start;
  const double length = norm(chord);
  if (length == 0.0) throw Error(ErrorKind::Configuration, "trajectory '" + id + "' starts on its goal");

  std::vector<TrajectorySample> out(samples);
  const double last = static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) out[i].t = duration * static_cast<double>(i) / last;

  switch (kind) {
    case TrajectoryKind::Straight:
      for (std::size_t i = 0; i < samples; ++i) out[i].p = start + (static_cast<double>(i) / last) * chord;
      break;

    case TrajectoryKind::Arc: {
      const Point3 distractor = scene.goals()[nearest_distractor(scene)].position;
      const Point3 u = (1.0 / length) * chord;
      const Point3 mid = start + 0.5 * chord;
      const Point3 w = distractor - mid;
      Point3 perp = w - dot(w, u) * u;
      perp = norm(perp) > 1e-12 * length ? (1.0 / norm(perp)) * perp : any_perpendicular(u);
      const Point3 n = -1.0 * perp;  // bow away from the distractor
      const double h = shape.bow * length;
      if (!(h > 0.0)) {
        for (std::size_t i = 0; i < samples; ++i) out[i].p = start + (static_cast<double>(i) / last) * chord;
        break;
      }
      const double radius = (0.25 * length * length + h * h) / (2.0 * h);
      const Point3 center = mid - (radius - h) * n;
      const double half_angle = std::atan2(0.5 * length, radius - h);
      for (std::size_t i = 0; i < samples; ++i) {
        const double phi = -half_angle + 2.0 * half_angle * static_cast<double>(i) / last;
        out[i].p = center + radius * (std::cos(phi) * n + std::sin(phi) * u);
      }
      break;
    }

    case TrajectoryKind::Deceptive: {
      if (!(shape.detour_time > 0.0 && shape.detour_time < 1.0)) {
        throw Error(ErrorKind::Configuration, "trajectory '" + id + "': detour_time must lie in (0, 1)");
      }
      const Point3 distractor = scene.goals()[nearest_distractor(scene)].position;
      const Point3 waypoint = start + shape.detour * (distractor - start);
      for (std::size_t i = 0; i < samples; ++i) {
        const double tau = static_cast<double>(i) / last;
        out[i].p = tau <= shape.detour_time
                       ? start + (tau / shape.detour_time) * (waypoint - start)
                       : waypoint + ((tau - shape.detour_time) / (1.0 - shape.detour_time)) * (goal - waypoint);
      }
      break;
    }
  }
  out.front().p = start;
  out.back().p = goal;
  return Trajectory(id, scene.id(), std::move(out));
}

std::vector<double> guess_distribution(const ObservedItem& item, const Scene& scene, const ObserverModel& model) {
  const std::size_t k = scene.goals().size();
  auto embed = [&](const Point3& p) {
    return item.view ? normalized_image_point(*item.view, project_point(*item.view, p)) : p;
  };

  std::vector<double> dist(k, 0.0);
  switch (model.kind) {
    case ObserverKind::Posterior: {
      std::vector<Point3> goals;
      for (const auto& g : scene.goals()) goals.push_back(embed(g.position));
      dist = goal_posterior(goals, scene.priors(), embed(item.partial.start()), embed(item.partial.end()));
      break;
    }
    case ObserverKind::NearestGoal: {
      const Point3 at = embed(item.partial.end());
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < k; ++i) {
        const double d = distance(at, embed(scene.goals()[i].position));
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      dist[best] = 1.0;
      break;
    }
    case ObserverKind::ProgressRamp: {
      const double correct = std::clamp(model.a + model.b * item.fraction, 0.0, 1.0);
      for (std::size_t i = 0; i < k; ++i) {
        dist[i] = i == scene.intended_index() ? correct : (1.0 - correct) / static_cast<double>(k - 1);
      }
      break;
    }
  }
  for (double& p : dist) p = (1.0 - model.noise) * p + model.noise / static_cast<double>(k);
  return dist;
}

std::vector<ResponseRecord> synthetic_responses(const std::vector<ObservedItem>& items, const Scene& scene,
                                                const ObserverModel& model, std::size_t n, std::uint64_t seed,
                                                Execution execution) {
  if (n < 1) throw Error(ErrorKind::Configuration, "need at least one response per item");
  if (!(model.noise >= 0.0 && model.noise <= 1.0)) {
    throw Error(ErrorKind::Configuration, "observer noise must lie in [0, 1]");
  }
  std::vector<ResponseRecord> out(items.size() * n);
  std::vector<std::optional<Error>> errors(items.size());

  auto draw = [&](std::size_t i) {
    const auto& item = items[i];
    const std::string view_id = item.view ? item.view->id() : std::string{};
    const ItemKey key{item.partial.id(), item.fraction, view_id};
    try {
      const auto dist = guess_distribution(item, scene, model);
      std::mt19937_64 rng(item_seed(seed, key));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const std::string participant_prefix = item.partial.id() + (view_id.empty() ? "" : "-" + view_id) + "-p";
      for (std::size_t r = 0; r < n; ++r) {
        const double u = unit(rng);
        std::size_t g = 0;
        double acc = dist[0];
        while (u >= acc && g + 1 < dist.size()) acc += dist[++g];
        out[i * n + r] = {key.trajectory_id, key.fraction, view_id, participant_prefix + std::to_string(r),
                          scene.goals()[g].id, std::nullopt};
      }
    } catch (const Error& e) {
      errors[i] = e;
    }
  };

  if (execution == Execution::Serial) {
    for (std::size_t i = 0; i < items.size(); ++i) draw(i);
  } else {
    const auto count = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) draw(static_cast<std::size_t>(i));
  }
  for (const auto& e : errors) {
    if (e) throw *e;
  }
  return out;
}

Dataset synthesize_dataset(const SynthSpec& spec, Execution execution) {
  if (spec.goals.size() < 2) throw Error(ErrorKind::Configuration, "synthetic layout needs at least 2 goals");
  if (spec.trajectories.empty()) throw Error(ErrorKind::Configuration, "synthetic spec lists no trajectories");
  if (spec.fractions.empty()) throw Error(ErrorKind::Configuration, "synthetic spec lists no fractions");
  for (double f : spec.fractions) Fraction checked(f);
  if (spec.responses_per_item < 1) throw Error(ErrorKind::Configuration, "responses_per_item must be >= 1");

  Dataset data;
  data.viewpoints = spec.viewpoints;
  data.has_responses = true;

  auto scene_for = [&](const std::string& goal) -> const Scene& {
    const std::string id = spec.layout_id + "_" + goal;
    if (const Scene* s = data.find_scene(id)) return *s;
    data.scenes.emplace_back(id, spec.goals, goal, spec.priors);
    return data.scenes.back();
  };

  std::set<std::string> seen;
  for (const auto& ts : spec.trajectories) {
    if (!seen.insert(ts.id).second) throw Error(ErrorKind::Configuration, "duplicate trajectory id '" + ts.id + "'");
    const std::string goal = ts.goal.empty() ? spec.goals.front().id : ts.goal;
    const bool known = std::any_of(spec.goals.begin(), spec.goals.end(), [&](const Goal& g) { return g.id == goal; });
    if (!known) throw Error(ErrorKind::Configuration, "trajectory '" + ts.id + "' targets unknown goal '" + goal + "'");
    const Scene scene = scene_for(goal);
    data.trajectories.push_back(
        {generate_trajectory(ts.kind, scene, spec.start, ts.samples, ts.duration, ts.id, ts.shape), spec.fractions});
  }

  for (const auto& dt : data.trajectories) {
    const Scene& scene = *data.find_scene(dt.trajectory.scene_id());
    std::vector<ObservedItem> items;
    for (double f : dt.fractions) {
      Trajectory partial = truncate_to_fraction(dt.trajectory, Fraction(f));
      if (data.viewpoints.empty()) {
        items.push_back({partial, f, nullptr});
      } else {
        for (const auto& v : data.viewpoints) items.push_back({partial, f, &v});
      }
    }
    auto rs = synthetic_responses(items, scene, spec.observer, spec.responses_per_item, spec.seed, execution);
    data.responses.insert(data.responses.end(), std::make_move_iterator(rs.begin()), std::make_move_iterator(rs.end()));
  }
  data.validate();
  return data;
}

}  // namespace legibility
