#pragma once

// Trajectory data model and the numerical primitives shared by all scorers.
// Units are SI throughout: positions in meters, timestamps in seconds.

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace legibility {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(double s, const Point3& p) { return {s * p.x, s * p.y, s * p.z}; }
  friend Point3 operator*(const Point3& p, double s) { return s * p; }
  friend bool operator==(const Point3&, const Point3&) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double squared_norm(const Point3& p) { return dot(p, p); }
inline double norm(const Point3& p) { return std::sqrt(dot(p, p)); }
inline double distance(const Point3& a, const Point3& b) { return norm(b - a); }

/// Unsigned angle between two vectors in radians, in [0, pi].
double angle_between(const Point3& a, const Point3& b);

struct TrajectorySample {
  double t = 0.0;
  Point3 p;
};

/// A scalar or vector value stamped with time.
template <typename T>
struct Timed {
  double t = 0.0;
  T value{};
};

using ScalarSeries = std::vector<Timed<double>>;
using VectorSeries = std::vector<Timed<Point3>>;

/// End-effector path. Construction validates: at least two samples, finite
/// non-negative timestamps that strictly increase, finite positions.
class Trajectory {
 public:
  Trajectory(std::string id, std::string scene_id, std::vector<TrajectorySample> samples);

  const std::string& id() const { return id_; }
  const std::string& scene_id() const { return scene_id_; }
  std::span<const TrajectorySample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  const Point3& start() const { return samples_.front().p; }
  const Point3& end() const { return samples_.back().p; }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }
  double duration() const { return end_time() - start_time(); }

 private:
  std::string id_;
  std::string scene_id_;
  std::vector<TrajectorySample> samples_;
};

struct Goal {
  std::string id;
  Point3 position;
};

/// Goal set with the intended goal and the observer's prior over goals.
/// Priors are stored aligned with `goals()`; omitted priors become uniform.
class Scene {
 public:
  Scene(std::string id, std::vector<Goal> goals, std::string intended_goal,
        std::vector<double> priors = {});

  const std::string& id() const { return id_; }
  std::span<const Goal> goals() const { return goals_; }
  std::span<const double> priors() const { return priors_; }
  const std::string& intended_goal() const { return goals_[intended_].id; }
  std::size_t intended_index() const { return intended_; }
  const Point3& intended_position() const { return goals_[intended_].position; }

  /// Index of a goal id, or -1 when the id is not part of the scene.
  int find_goal(const std::string& goal_id) const;
  std::vector<Point3> goal_positions() const;

 private:
  std::string id_;
  std::vector<Goal> goals_;
  std::size_t intended_ = 0;
  std::vector<double> priors_;
};

/// Progress fraction in (0, 1].
class Fraction {
 public:
  explicit Fraction(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Keeps the samples with t <= t_start + f * duration, appending a linearly
/// interpolated sample at the cut time when it falls between samples.
Trajectory truncate_to_fraction(const Trajectory& traj, Fraction f);

/// Velocity (order 1) or jerk (order 3) at every sample timestamp.
/// Interior points use the three-point non-uniform central stencil, which is
/// exact for quadratics; the end points use one-sided differences. Jerk is
/// the first-derivative operator applied three times.
VectorSeries finite_difference_series(const Trajectory& traj, int order);

/// Trapezoid rule over [t_first, t_last].
double integrate_time_series(std::span<const Timed<double>> values);

double arc_length(const Trajectory& traj);

/// |goal - p(t)| at each sample.
ScalarSeries distance_series(const Trajectory& traj, const Point3& goal);

}  // namespace legibility
