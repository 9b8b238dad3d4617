#include "legibility/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "legibility/error.hpp"

namespace legibility {

namespace {

std::vector<unsigned char> correctness(std::span<const ResponseRecord> responses, const Scene& scene) {
  if (responses.empty()) {
    throw Error(ErrorKind::MissingData, "no responses to estimate legibility from");
  }
  std::vector<unsigned char> hits;
  hits.reserve(responses.size());
  for (const auto& r : responses) {
    if (r.guess != kNoAnswer && scene.find_goal(r.guess) < 0) {
      throw Error(ErrorKind::Schema, "guess '" + r.guess + "' is not a goal of scene '" + scene.id() + "'");
    }
    hits.push_back(r.guess == scene.intended_goal() ? 1 : 0);
  }
  return hits;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

BaselineEstimate empirical_legibility(std::span<const ResponseRecord> responses, const Scene& scene) {
  const auto hits = correctness(responses, scene);
  std::size_t correct = 0;
  for (auto h : hits) correct += h;
  BaselineEstimate est;
  est.item = item_of(responses.front());
  est.n = hits.size();
  est.legibility = static_cast<double>(correct) / static_cast<double>(est.n);
  est.ci_low = est.ci_high = est.legibility;
  return est;
}

std::pair<double, double> bootstrap_ci(std::span<const ResponseRecord> responses, const Scene& scene,
                                       const BootstrapOptions& options, std::uint64_t seed) {
  if (options.resamples < 1) throw Error(ErrorKind::InvalidArgument, "bootstrap needs at least one resample");
  if (!(options.level > 0.0 && options.level < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "confidence level must lie in (0, 1)");
  }
  const auto hits = correctness(responses, scene);
  const std::size_t n = hits.size();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> means(options.resamples);
  for (auto& m : means) {
    std::size_t correct = 0;
    for (std::size_t k = 0; k < n; ++k) correct += hits[pick(rng)];
    m = static_cast<double>(correct) / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double tail = (1.0 - options.level) / 2.0;
  return {quantile_sorted(means, tail), quantile_sorted(means, 1.0 - tail)};
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t item_seed(std::uint64_t master, const ItemKey& key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_string(key)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix_seed(master ^ mix_seed(h));
}

std::vector<BaselineEstimate> estimate_baselines(const Dataset& dataset, const BootstrapOptions& options,
                                                 std::uint64_t seed, Execution execution) {
  std::map<ItemKey, std::vector<ResponseRecord>> grouped;
  for (const auto& r : dataset.responses) grouped[item_of(r)].push_back(r);

  std::vector<const std::vector<ResponseRecord>*> groups;
  for (const auto& [key, rs] : grouped) groups.push_back(&rs);

  std::vector<BaselineEstimate> out(groups.size());
  std::vector<std::optional<Error>> errors(groups.size());
  auto estimate = [&](std::size_t i) {
    const auto& rs = *groups[i];
    try {
      const auto* traj = dataset.find_trajectory(rs.front().trajectory_id);
      if (traj == nullptr) {
        throw Error(ErrorKind::ReferentialIntegrity, "unknown trajectory '" + rs.front().trajectory_id + "'");
      }
      const Scene* scene = dataset.find_scene(traj->trajectory.scene_id());
      auto est = empirical_legibility(rs, *scene);
      const auto [lo, hi] = bootstrap_ci(rs, *scene, options, item_seed(seed, est.item));
      // Percentile bounds can miss the point estimate at very low levels.
      est.ci_low = std::min(lo, est.legibility);
      est.ci_high = std::max(hi, est.legibility);
      out[i] = std::move(est);
    } catch (const Error& e) {
      errors[i] = e;
    }
  };

  if (execution == Execution::Serial) {
    for (std::size_t i = 0; i < groups.size(); ++i) estimate(i);
  } else {
    const auto count = static_cast<std::ptrdiff_t>(groups.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) estimate(static_cast<std::size_t>(i));
  }
  for (const auto& e : errors) {
    if (e) throw *e;
  }
  return out;
}

}  // namespace legibility
