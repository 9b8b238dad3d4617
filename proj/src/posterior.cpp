#include "legibility/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "legibility/error.hpp"

namespace legibility {

double straight_line_cost(const Point3& a, const Point3& b) { return 0.5 * squared_norm(b - a); }

std::vector<double> softmax(std::span<const double> log_weights) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double w : log_weights) peak = std::max(peak, w);
  if (!std::isfinite(peak)) {
    throw Error(ErrorKind::InvalidArgument, "softmax needs at least one finite log-weight");
  }
  std::vector<double> out(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::exp(log_weights[i] - peak);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return out;
}

std::vector<double> goal_posterior(std::span<const Point3> goals, std::span<const double> priors,
                                   const Point3& start, const Point3& query) {
  std::vector<double> log_w(goals.size());
  for (std::size_t i = 0; i < goals.size(); ++i) {
    const double advantage = straight_line_cost(start, goals[i]) - straight_line_cost(query, goals[i]);
    log_w[i] = priors[i] > 0.0 ? advantage + std::log(priors[i]) : -std::numeric_limits<double>::infinity();
  }
  return softmax(log_w);
}

std::vector<double> goal_posterior(const Scene& scene, const Point3& start, const Point3& query) {
  const auto goals = scene.goal_positions();
  return goal_posterior(goals, scene.priors(), start, query);
}

std::vector<double> distance_softmax(std::span<const Point3> goals, const Point3& query, double sigma) {
  std::vector<double> log_w(goals.size());
  for (std::size_t i = 0; i < goals.size(); ++i) log_w[i] = -sigma * distance(query, goals[i]);
  return softmax(log_w);
}

}  // namespace legibility
