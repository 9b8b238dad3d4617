#include "legibility/frameworks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "legibility/error.hpp"
#include "legibility/posterior.hpp"

namespace legibility {

std::string_view to_string(FrameworkId id) {
  switch (id) {
    case FrameworkId::BoddenPoint: return "bodden_point";
    case FrameworkId::BoddenVelocity: return "bodden_velocity";
    case FrameworkId::Dragan: return "dragan";
    case FrameworkId::Nikolaidis: return "nikolaidis";
    case FrameworkId::Busch: return "busch";
    case FrameworkId::ZhaoFastApp: return "zhao_fastapp";
    case FrameworkId::ZhaoEffDist: return "zhao_effdist";
    case FrameworkId::BiedObsL: return "bied_obs_l";
    case FrameworkId::BiedObsP: return "bied_obs_p";
    case FrameworkId::BiedObsD: return "bied_obs_d";
  }
  return "unknown";
}

std::string_view to_string(ScoreKind kind) { return kind == ScoreKind::Cost ? "cost" : "reward"; }

std::optional<FrameworkId> framework_from_string(std::string_view name) {
  for (auto id : kAllFrameworks) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

ScoreKind score_kind(FrameworkId id) {
  switch (id) {
    case FrameworkId::BoddenPoint:
    case FrameworkId::BoddenVelocity:
    case FrameworkId::Dragan:
    case FrameworkId::Nikolaidis:
      return ScoreKind::Cost;
    default:
      return ScoreKind::Reward;
  }
}

bool is_view_dependent(FrameworkId id) { return id == FrameworkId::Nikolaidis || id == FrameworkId::Busch; }

namespace {

struct ParamSpec {
  std::string_view name;
  double* slot;
  bool must_be_positive = false;
};

void apply_overrides(std::string_view family, const ParamMap& overrides, std::initializer_list<ParamSpec> specs) {
  for (const auto& [name, value] : overrides) {
    const auto* match = std::find_if(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.name == name; });
    if (match == specs.end()) {
      throw Error(ErrorKind::Configuration, std::string(family) + ": unknown hyperparameter '" + name + "'");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::Configuration, std::string(family) + ": hyperparameter '" + name + "' must be finite");
    }
    if (match->must_be_positive && !(value > 0.0)) {
      throw Error(ErrorKind::Configuration, std::string(family) + ": hyperparameter '" + name + "' must be > 0");
    }
    *match->slot = value;
  }
}

}  // namespace

BoddenParams bodden_params(const ParamMap& overrides) {
  BoddenParams p;
  apply_overrides("bodden", overrides, {{"alpha", &p.alpha}, {"beta", &p.beta}, {"epsilon", &p.epsilon}});
  return p;
}

ZhaoParams zhao_params(const ParamMap& overrides) {
  ZhaoParams p;
  apply_overrides("zhao", overrides,
                  {{"r0", &p.r0}, {"epsilon_threshold", &p.epsilon_threshold, true}, {"beta", &p.beta}});
  return p;
}

BiedParams bied_params(const ParamMap& overrides) {
  BiedParams p;
  apply_overrides("bied", overrides, {{"beta", &p.beta}, {"epsilon", &p.epsilon}, {"sigma", &p.sigma, true}});
  return p;
}

BuschParams busch_params(const ParamMap& overrides) {
  BuschParams p;
  apply_overrides("busch", overrides, {{"beta", &p.beta}, {"epsilon", &p.epsilon}});
  return p;
}

void validate_params(FrameworkId id, const ParamMap& overrides) {
  switch (id) {
    case FrameworkId::BoddenPoint:
    case FrameworkId::BoddenVelocity: bodden_params(overrides); break;
    case FrameworkId::ZhaoFastApp:
    case FrameworkId::ZhaoEffDist: zhao_params(overrides); break;
    case FrameworkId::BiedObsL:
    case FrameworkId::BiedObsP:
    case FrameworkId::BiedObsD: bied_params(overrides); break;
    case FrameworkId::Busch: busch_params(overrides); break;
    case FrameworkId::Dragan:
    case FrameworkId::Nikolaidis:
      if (!overrides.empty()) {
        throw Error(ErrorKind::Configuration,
                    std::string(to_string(id)) + " has no hyperparameters, got '" + overrides.begin()->first + "'");
      }
      break;
  }
}

namespace {

// Intended-goal posterior at every query point, in whatever embedding the
// points and goals share.
ScalarSeries intended_posterior_series(std::span<const double> times, std::span<const Point3> points,
                                       std::span<const Point3> goals, std::span<const double> priors,
                                       std::size_t intended) {
  ScalarSeries out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    out[i] = {times[i], goal_posterior(goals, priors, points.front(), points[i])[intended]};
  }
  return out;
}

double time_weighted_mean(const ScalarSeries& posterior, const std::string& traj_id) {
  const double t0 = posterior.front().t;
  const double total = posterior.back().t - t0;
  ScalarSeries weighted(posterior.size());
  ScalarSeries weights(posterior.size());
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    const double f = total - (posterior[i].t - t0);
    weighted[i] = {posterior[i].t, posterior[i].value * f};
    weights[i] = {posterior[i].t, f};
  }
  const double denom = integrate_time_series(weights);
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::DegenerateTrajectory, "trajectory '" + traj_id + "' has zero duration");
  }
  return std::clamp(integrate_time_series(weighted) / denom, 0.0, 1.0);
}

std::vector<double> sample_times(const Trajectory& traj) {
  std::vector<double> t;
  t.reserve(traj.size());
  for (const auto& s : traj.samples()) t.push_back(s.t);
  return t;
}

std::vector<Point3> sample_points(const Trajectory& traj) {
  std::vector<Point3> p;
  p.reserve(traj.size());
  for (const auto& s : traj.samples()) p.push_back(s.p);
  return p;
}

ScalarSeries world_posterior_series(const Trajectory& traj, const Scene& scene) {
  const auto times = sample_times(traj);
  const auto points = sample_points(traj);
  const auto goals = scene.goal_positions();
  return intended_posterior_series(times, points, goals, scene.priors(), scene.intended_index());
}

}  // namespace

double score_dragan(const Trajectory& traj, const Scene& scene) {
  return time_weighted_mean(world_posterior_series(traj, scene), traj.id());
}

double score_nikolaidis(const Trajectory& traj, const Scene& scene, const Viewpoint& view) {
  const auto pixels = project_trajectory(view, traj);
  std::vector<double> times;
  std::vector<Point3> points;
  times.reserve(pixels.size());
  points.reserve(pixels.size());
  for (const auto& s : pixels) {
    times.push_back(s.t);
    points.push_back(normalized_image_point(view, s.px));
  }
  std::vector<Point3> goals;
  for (const auto& g : scene.goals()) {
    try {
      goals.push_back(normalized_image_point(view, project_point(view, g.position)));
    } catch (const Error& e) {
      throw Error(e.kind(), "scene '" + scene.id() + "' goal '" + g.id + "': " + e.what());
    }
  }
  const auto posterior = intended_posterior_series(times, points, goals, scene.priors(), scene.intended_index());
  return time_weighted_mean(posterior, traj.id());
}

double score_bodden(const Trajectory& traj, const Scene& scene, BoddenMetric metric, const BoddenParams& hp) {
  const Point3 goal = scene.intended_position();
  const auto velocity = finite_difference_series(traj, 1);
  const auto samples = traj.samples();

  ScalarSeries residual(samples.size());
  ScalarSeries goal_dist2(samples.size());
  ScalarSeries speed2(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double t = samples[i].t;
    const Point3 to_goal = goal - samples[i].p;
    const double d0 = norm(to_goal);
    double projected = d0;
    if (metric == BoddenMetric::Velocity) {
      // Undefined direction (at rest, or sitting on the goal) counts as aligned.
      const Point3& v = velocity[i].value;
      projected = (squared_norm(v) > 0.0 && d0 > 0.0) ? angle_between(v, to_goal) : 0.0;
    }
    residual[i] = {t, projected * projected};
    goal_dist2[i] = {t, d0 * d0};
    speed2[i] = {t, squared_norm(velocity[i].value)};
  }
  return hp.alpha * integrate_time_series(residual) + hp.beta * integrate_time_series(goal_dist2) +
         hp.epsilon * integrate_time_series(speed2);
}

double score_busch(const Trajectory& traj, const Scene& scene, std::span<const ResponseRecord> responses,
                   const BuschParams& hp) {
  if (responses.empty()) {
    throw Error(ErrorKind::MissingFeedback, "busch needs observer responses for trajectory '" + traj.id() + "'");
  }
  const double duration = traj.duration();
  double observation = 0.0;
  std::size_t correct = 0;
  for (const auto& r : responses) {
    observation += r.response_time_s.value_or(duration);
    if (r.guess == scene.intended_goal()) ++correct;
  }
  const double n = static_cast<double>(responses.size());
  const double mean_observation = observation / n;
  const double correct_rate = static_cast<double>(correct) / n;

  double jerk_term = 0.0;
  if (hp.epsilon != 0.0) {
    const auto jerk = finite_difference_series(traj, 3);
    ScalarSeries magnitude(jerk.size());
    for (std::size_t i = 0; i < jerk.size(); ++i) magnitude[i] = {jerk[i].t, norm(jerk[i].value)};
    jerk_term = hp.epsilon * integrate_time_series(magnitude);
  }
  return mean_observation + duration + hp.beta * correct_rate + jerk_term;
}

double time_within(const ScalarSeries& d, double threshold) {
  double total = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    const double ta = d[i - 1].t, tb = d[i].t;
    const double da = d[i - 1].value, db = d[i].value;
    const bool a_in = da < threshold, b_in = db < threshold;
    if (a_in && b_in) {
      total += tb - ta;
    } else if (a_in != b_in) {
      const double crossing = ta + (threshold - da) / (db - da) * (tb - ta);
      total += a_in ? crossing - ta : tb - crossing;
    }
  }
  return total;
}

ScalarSeries zhao_effdist_reward(const Trajectory& traj, const Scene& scene) {
  const auto goals = scene.goals();
  const std::size_t intended = scene.intended_index();
  const double t0 = traj.start_time();
  ScalarSeries out;
  out.reserve(traj.size());
  for (const auto& s : traj.samples()) {
    const double d0 = distance(s.p, goals[intended].position);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < goals.size(); ++i) {
      if (i == intended) continue;
      const double di = distance(s.p, goals[i].position);
      const double gap = d0 - di;
      const double sign = static_cast<double>((gap > 0.0) - (gap < 0.0));
      worst = std::min(worst, std::log(std::abs(gap) / std::abs(d0 + 1.0) + 1.0) * sign);
    }
    out.push_back({s.t, std::exp(-(s.t - t0) / 30.0) * worst});
  }
  return out;
}

double score_zhao(const Trajectory& traj, const Scene& scene, ZhaoVariant variant, const ZhaoParams& hp) {
  const auto d0 = distance_series(traj, scene.intended_position());
  const double arrival = hp.r0 * time_within(d0, hp.epsilon_threshold);

  ScalarSeries legible;
  if (variant == ZhaoVariant::FastApp) {
    legible.reserve(d0.size());
    for (const auto& d : d0) legible.push_back({d.t, -d.value});
  } else {
    legible = zhao_effdist_reward(traj, scene);
  }
  return arrival + hp.beta * integrate_time_series(legible);
}

double score_bied(const Trajectory& traj, const Scene& scene, BiedVariant variant, const BiedParams& hp) {
  double legible = 0.0;
  switch (variant) {
    case BiedVariant::ObsL:
      legible = score_dragan(traj, scene);
      break;
    case BiedVariant::ObsP:
      legible = integrate_time_series(world_posterior_series(traj, scene));
      break;
    case BiedVariant::ObsD: {
      const auto goals = scene.goal_positions();
      ScalarSeries p;
      p.reserve(traj.size());
      for (const auto& s : traj.samples()) {
        p.push_back({s.t, distance_softmax(goals, s.p, hp.sigma)[scene.intended_index()]});
      }
      legible = integrate_time_series(p);
      break;
    }
  }
  return hp.beta * legible + hp.epsilon * arc_length(traj);
}

}  // namespace legibility
