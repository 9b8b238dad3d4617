#pragma once

#include <span>
#include <vector>

#include "legibility/trajectory.hpp"

namespace legibility {

/// Cost of the unit-duration constant-velocity straight line from a to b
/// under C = 1/2 * integral |v|^2 dt, i.e. 1/2 |b - a|^2.
double straight_line_cost(const Point3& a, const Point3& b);

/// Numerically stable softmax of log_weights (entries may be -inf).
std::vector<double> softmax(std::span<const double> log_weights);

/// Goal posterior given the path so far started at `start` and currently at
/// `query`:  P(g) ∝ exp(C[start->g] - C[query->g]) * prior(g), normalized
/// over all goals. Works in any Euclidean embedding (world or image plane).
std::vector<double> goal_posterior(std::span<const Point3> goals, std::span<const double> priors,
                                   const Point3& start, const Point3& query);

/// Scene overload; the result is aligned with scene.goals().
std::vector<double> goal_posterior(const Scene& scene, const Point3& start, const Point3& query);

/// softmax_i(-sigma * |g_i - query|), aligned with `goals`.
std::vector<double> distance_softmax(std::span<const Point3> goals, const Point3& query, double sigma);

}  // namespace legibility
