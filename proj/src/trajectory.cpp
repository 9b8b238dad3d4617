#include "legibility/trajectory.hpp"

#include <algorithm>
#include <numeric>

#include "legibility/error.hpp"

namespace legibility {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DegeneratePartial: return "degenerate-partial";
    case ErrorKind::InsufficientSamples: return "insufficient-samples";
    case ErrorKind::DegenerateTrajectory: return "degenerate-trajectory";
    case ErrorKind::BehindCamera: return "behind-camera";
    case ErrorKind::MissingFeedback: return "missing-feedback";
    case ErrorKind::MissingData: return "missing-data";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::ReferentialIntegrity: return "referential-integrity";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::UndefinedCorrelation: return "undefined-correlation";
    case ErrorKind::InsufficientPairs: return "insufficient-pairs";
    case ErrorKind::Load: return "load";
  }
  return "unknown";
}

double angle_between(const Point3& a, const Point3& b) {
  // atan2 form stays accurate near 0 and pi, unlike acos of the cosine.
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

Trajectory::Trajectory(std::string id, std::string scene_id, std::vector<TrajectorySample> samples)
    : id_(std::move(id)), scene_id_(std::move(scene_id)), samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw Error(ErrorKind::InsufficientSamples,
                "trajectory '" + id_ + "' needs at least 2 samples, got " + std::to_string(samples_.size()));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.t) || s.t < 0.0) {
      throw Error(ErrorKind::InvalidArgument,
                  "trajectory '" + id_ + "' sample " + std::to_string(i) + ": timestamp must be finite and >= 0");
    }
    if (!s.p.finite()) {
      throw Error(ErrorKind::InvalidArgument,
                  "trajectory '" + id_ + "' sample " + std::to_string(i) + ": position must be finite");
    }
    if (i > 0 && !(s.t > samples_[i - 1].t)) {
      throw Error(ErrorKind::InvalidArgument,
                  "trajectory '" + id_ + "' sample " + std::to_string(i) + ": timestamps must strictly increase");
    }
  }
}

Scene::Scene(std::string id, std::vector<Goal> goals, std::string intended_goal, std::vector<double> priors)
    : id_(std::move(id)), goals_(std::move(goals)), priors_(std::move(priors)) {
  if (goals_.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "scene '" + id_ + "' needs at least 2 goals");
  }
  for (std::size_t i = 0; i < goals_.size(); ++i) {
    if (!goals_[i].position.finite()) {
      throw Error(ErrorKind::InvalidArgument, "scene '" + id_ + "' goal '" + goals_[i].id + "' is not finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (goals_[i].id == goals_[j].id) {
        throw Error(ErrorKind::InvalidArgument, "scene '" + id_ + "' repeats goal id '" + goals_[i].id + "'");
      }
      if (goals_[i].position == goals_[j].position) {
        throw Error(ErrorKind::InvalidArgument, "scene '" + id_ + "' goals '" + goals_[j].id + "' and '" +
                                                    goals_[i].id + "' share a position");
      }
    }
  }
  const int intended = find_goal(intended_goal);
  if (intended < 0) {
    throw Error(ErrorKind::InvalidArgument,
                "scene '" + id_ + "' intended goal '" + intended_goal + "' is not one of its goals");
  }
  intended_ = static_cast<std::size_t>(intended);

  if (priors_.empty()) {
    priors_.assign(goals_.size(), 1.0 / static_cast<double>(goals_.size()));
    return;
  }
  if (priors_.size() != goals_.size()) {
    throw Error(ErrorKind::InvalidArgument, "scene '" + id_ + "' priors must cover every goal");
  }
  for (double p : priors_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "scene '" + id_ + "' priors must be finite and nonnegative");
    }
  }
  const double total = std::accumulate(priors_.begin(), priors_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-6) {
    throw Error(ErrorKind::InvalidArgument, "scene '" + id_ + "' priors must sum to 1");
  }
}

int Scene::find_goal(const std::string& goal_id) const {
  for (std::size_t i = 0; i < goals_.size(); ++i) {
    if (goals_[i].id == goal_id) return static_cast<int>(i);
  }
  return -1;
}

std::vector<Point3> Scene::goal_positions() const {
  std::vector<Point3> out;
  out.reserve(goals_.size());
  for (const auto& g : goals_) out.push_back(g.position);
  return out;
}

Fraction::Fraction(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "fraction must lie in (0, 1], got " + std::to_string(value));
  }
}

Trajectory truncate_to_fraction(const Trajectory& traj, Fraction f) {
  const auto samples = traj.samples();
  const double t0 = traj.start_time();
  const double duration = traj.duration();
  const double t_cut = t0 + f.value() * duration;
  // Samples this close to the cut are treated as lying on it, so f = 1 keeps
  // the final sample even when t0 + 1.0 * duration rounds past it.
  const double tol = 1e-12 * std::max(1.0, traj.end_time());

  std::vector<TrajectorySample> kept;
  kept.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.t > t_cut + tol) break;
    kept.push_back(s);
  }
  if (kept.back().t < t_cut - tol) {
    const auto& a = kept.back();
    const auto& b = samples[kept.size()];
    const double w = (t_cut - a.t) / (b.t - a.t);
    kept.push_back({t_cut, a.p + w * (b.p - a.p)});
  }
  if (kept.size() < 2) {
    throw Error(ErrorKind::DegeneratePartial, "partial of trajectory '" + traj.id() + "' at fraction " +
                                                  std::to_string(f.value()) + " has fewer than 2 samples");
  }
  return Trajectory(traj.id(), traj.scene_id(), std::move(kept));
}

namespace {

VectorSeries differentiate(const VectorSeries& in) {
  const std::size_t n = in.size();
  VectorSeries out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].t = in[i].t;

  out[0].value = (1.0 / (in[1].t - in[0].t)) * (in[1].value - in[0].value);
  out[n - 1].value = (1.0 / (in[n - 1].t - in[n - 2].t)) * (in[n - 1].value - in[n - 2].value);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = in[i].t - in[i - 1].t;
    const double h2 = in[i + 1].t - in[i].t;
    const double wm = -h2 / (h1 * (h1 + h2));
    const double w0 = (h2 - h1) / (h1 * h2);
    const double wp = h1 / (h2 * (h1 + h2));
    out[i].value = wm * in[i - 1].value + w0 * in[i].value + wp * in[i + 1].value;
  }
  return out;
}

}  // namespace

VectorSeries finite_difference_series(const Trajectory& traj, int order) {
  if (order != 1 && order != 3) {
    throw Error(ErrorKind::InvalidArgument, "finite difference order must be 1 or 3");
  }
  if (traj.size() < static_cast<std::size_t>(order) + 1) {
    throw Error(ErrorKind::InsufficientSamples, "order-" + std::to_string(order) + " differences of trajectory '" +
                                                    traj.id() + "' need at least " + std::to_string(order + 1) +
                                                    " samples");
  }
  VectorSeries series;
  series.reserve(traj.size());
  for (const auto& s : traj.samples()) series.push_back({s.t, s.p});
  for (int k = 0; k < order; ++k) series = differentiate(series);
  return series;
}

double integrate_time_series(std::span<const Timed<double>> values) {
  if (values.size() < 2) {
    throw Error(ErrorKind::InsufficientSamples, "integration needs at least 2 entries");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double dt = values[i].t - values[i - 1].t;
    if (!(dt > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "integration times must strictly increase");
    }
    if (!std::isfinite(values[i].value) || !std::isfinite(values[i - 1].value)) {
      throw Error(ErrorKind::InvalidArgument, "integrand must be finite");
    }
    total += 0.5 * dt * (values[i].value + values[i - 1].value);
  }
  return total;
}

double arc_length(const Trajectory& traj) {
  const auto s = traj.samples();
  double total = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) total += distance(s[i - 1].p, s[i].p);
  return total;
}

ScalarSeries distance_series(const Trajectory& traj, const Point3& goal) {
  ScalarSeries out;
  out.reserve(traj.size());
  for (const auto& s : traj.samples()) out.push_back({s.t, distance(s.p, goal)});
  return out;
}

}  // namespace legibility
