#include <algorithm>
#include <map>
#include <optional>

#include "legibility/dataset.hpp"
#include "legibility/error.hpp"

namespace legibility {

namespace {

struct PartialKey {
  std::string trajectory_id;
  double fraction;
  friend auto operator<=>(const PartialKey&, const PartialKey&) = default;
};

// One scorer evaluation. View-independent frameworks carry an empty
// viewpoint and fan out to every viewpoint afterwards.
struct Task {
  FrameworkId framework;
  std::size_t partial;
  const Viewpoint* view = nullptr;
  ItemKey key;
};

struct Partial {
  PartialKey key;
  const Scene* scene = nullptr;
  std::optional<Trajectory> trajectory;
  std::optional<Error> error;
};

double evaluate(const Task& task, const Partial& partial, const BenchmarkConfig& config,
                const std::map<ItemKey, std::vector<ResponseRecord>>& responses) {
  const Trajectory& traj = *partial.trajectory;
  const Scene& scene = *partial.scene;
  const ParamMap& params = config.params(task.framework);
  switch (task.framework) {
    case FrameworkId::BoddenPoint: return score_bodden(traj, scene, BoddenMetric::Point, bodden_params(params));
    case FrameworkId::BoddenVelocity: return score_bodden(traj, scene, BoddenMetric::Velocity, bodden_params(params));
    case FrameworkId::Dragan: return score_dragan(traj, scene);
    case FrameworkId::Nikolaidis: return score_nikolaidis(traj, scene, *task.view);
    case FrameworkId::Busch: {
      const auto it = responses.find(task.key);
      if (it == responses.end()) {
        throw Error(ErrorKind::MissingFeedback, "no responses for item " + to_string(task.key));
      }
      return score_busch(traj, scene, it->second, busch_params(params));
    }
    case FrameworkId::ZhaoFastApp: return score_zhao(traj, scene, ZhaoVariant::FastApp, zhao_params(params));
    case FrameworkId::ZhaoEffDist: return score_zhao(traj, scene, ZhaoVariant::EffDist, zhao_params(params));
    case FrameworkId::BiedObsL: return score_bied(traj, scene, BiedVariant::ObsL, bied_params(params));
    case FrameworkId::BiedObsP: return score_bied(traj, scene, BiedVariant::ObsP, bied_params(params));
    case FrameworkId::BiedObsD: return score_bied(traj, scene, BiedVariant::ObsD, bied_params(params));
  }
  throw Error(ErrorKind::Configuration, "unknown framework");
}

template <typename Body>
void for_each_index(std::size_t n, Execution execution, Body&& body) {
  if (execution == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace

ScoreOutcome score_all(const Dataset& dataset, const BenchmarkConfig& config, const ScoreOptions& options) {
  ScoreOutcome outcome;
  const auto frameworks = config.enabled();
  if (frameworks.empty()) return outcome;

  for (auto id : frameworks) validate_params(id, config.params(id));

  std::vector<Partial> partials;
  for (const auto& dt : dataset.trajectories) {
    for (double f : dt.fractions) {
      partials.push_back({{dt.trajectory.id(), f}, dataset.find_scene(dt.trajectory.scene_id()), {}, {}});
    }
  }
  std::sort(partials.begin(), partials.end(), [](const Partial& a, const Partial& b) { return a.key < b.key; });
  for_each_index(partials.size(), options.execution, [&](std::size_t i) {
    auto& p = partials[i];
    try {
      p.trajectory = truncate_to_fraction(dataset.find_trajectory(p.key.trajectory_id)->trajectory,
                                          Fraction(p.key.fraction));
    } catch (const Error& e) {
      p.error = e;
    }
  });

  std::map<ItemKey, std::vector<ResponseRecord>> responses;
  for (const auto& r : dataset.responses) responses[item_of(r)].push_back(r);

  std::vector<const Viewpoint*> views;
  for (const auto& v : dataset.viewpoints) views.push_back(&v);
  std::sort(views.begin(), views.end(), [](const Viewpoint* a, const Viewpoint* b) { return a->id() < b->id(); });

  auto framework_skip = [&](FrameworkId id, ErrorKind kind, const std::string& message) {
    if (options.strict) throw Error(kind, std::string(to_string(id)) + ": " + message);
    outcome.exclusions.push_back({id, std::nullopt, kind, message});
  };

  std::vector<Task> tasks;
  for (auto id : frameworks) {
    if (id == FrameworkId::Nikolaidis && views.empty()) {
      framework_skip(id, ErrorKind::Configuration, "dataset has no viewpoints to project into");
      continue;
    }
    if (id == FrameworkId::Busch && !dataset.has_responses) {
      framework_skip(id, ErrorKind::MissingFeedback, "dataset has no responses");
      continue;
    }
    for (std::size_t p = 0; p < partials.size(); ++p) {
      const auto& key = partials[p].key;
      if (is_view_dependent(id) && !views.empty()) {
        for (const auto* v : views) tasks.push_back({id, p, v, {key.trajectory_id, key.fraction, v->id()}});
      } else {
        tasks.push_back({id, p, nullptr, {key.trajectory_id, key.fraction, {}}});
      }
    }
  }

  std::vector<std::optional<double>> values(tasks.size());
  std::vector<std::optional<Error>> errors(tasks.size());
  for_each_index(tasks.size(), options.execution, [&](std::size_t i) {
    const auto& partial = partials[tasks[i].partial];
    if (partial.error) {
      errors[i] = *partial.error;
      return;
    }
    try {
      values[i] = evaluate(tasks[i], partial, config, responses);
    } catch (const Error& e) {
      errors[i] = e;
    }
  });

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& task = tasks[i];
    // A view-independent evaluation stands for every viewpoint of its item.
    std::vector<ItemKey> keys;
    if (task.view == nullptr && !views.empty()) {
      for (const auto* v : views) keys.push_back({task.key.trajectory_id, task.key.fraction, v->id()});
    } else {
      keys.push_back(task.key);
    }
    if (errors[i]) {
      if (options.strict) throw *errors[i];
      for (auto& k : keys) outcome.exclusions.push_back({task.framework, k, errors[i]->kind(), errors[i]->what()});
      continue;
    }
    for (auto& k : keys) outcome.records.push_back({task.framework, std::move(k), *values[i]});
  }

  std::sort(outcome.records.begin(), outcome.records.end(), [](const ScoreRecord& a, const ScoreRecord& b) {
    return std::tie(a.framework, a.item) < std::tie(b.framework, b.item);
  });
  std::stable_sort(outcome.exclusions.begin(), outcome.exclusions.end(),
                   [](const ScoreExclusion& a, const ScoreExclusion& b) {
                     return std::tie(a.framework, a.item) < std::tie(b.framework, b.item);
                   });
  return outcome;
}

}  // namespace legibility
