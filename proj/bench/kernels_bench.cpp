// Serial reference loops vs. the OpenMP fan-out on a mid-sized synthetic
// dataset (24 trajectories x 4 fractions x 3 viewpoints).

#include <benchmark/benchmark.h>

#include <cmath>

#include "legibility/baseline.hpp"
#include "legibility/dataset.hpp"
#include "legibility/synthgen.hpp"

namespace {

using namespace legibility;

Viewpoint camera_at(const std::string& id, double yaw) {
  // Camera on a circle of radius 3 around the origin, looking at it.
  const double c = std::cos(yaw), s = std::sin(yaw);
  const Point3 eye{3 * s, -3 * c, 1.0};
  const Point3 forward = (1.0 / norm(eye)) * (-1.0 * eye);
  const Point3 right = (1.0 / norm(cross(forward, {0, 0, 1}))) * cross(forward, {0, 0, 1});
  const Point3 down = cross(forward, right);
  const std::array<double, 9> r{right.x, right.y, right.z, down.x, down.y, down.z, forward.x, forward.y, forward.z};
  const Point3 rotated{dot(right, eye), dot(down, eye), dot(forward, eye)};
  return Viewpoint(id, {800, 800, 640, 360, 1280, 720}, r, -1.0 * rotated);
}

const Dataset& dataset() {
  static const Dataset data = [] {
    SynthSpec spec;
    spec.goals = {{"a", {0.5, 0.4, 0}}, {"b", {0.5, 0, 0}}, {"c", {0.5, -0.4, 0}}};
    spec.start = {-0.5, 0, 0.3};
    const char* kinds[] = {"straight", "arc", "deceptive"};
    for (int i = 0; i < 24; ++i) {
      SynthTrajectorySpec t;
      t.id = "t" + std::to_string(i);
      t.kind = *trajectory_kind_from_string(kinds[i % 3]);
      t.goal = spec.goals[static_cast<std::size_t>(i) % 3].id;
      t.samples = 201;
      t.shape.bow = 0.1 + 0.02 * i;
      spec.trajectories.push_back(t);
    }
    spec.fractions = {0.25, 0.5, 0.75, 1.0};
    spec.viewpoints = {camera_at("front", 0.0), camera_at("left", 0.8), camera_at("right", -0.8)};
    spec.observer = {ObserverKind::Posterior, 0.1, 0.0, 1.0};
    spec.responses_per_item = 80;
    spec.seed = 1;
    return synthesize_dataset(spec, Execution::Serial);
  }();
  return data;
}

void BM_ScoreAll(benchmark::State& state) {
  const auto execution = state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
  const auto config = BenchmarkConfig::all_defaults();
  for (auto _ : state) {
    auto outcome = score_all(dataset(), config, {execution, false});
    benchmark::DoNotOptimize(outcome.records.data());
  }
  state.SetLabel(execution == Execution::Serial ? "serial" : "openmp");
}
BENCHMARK(BM_ScoreAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Bootstrap(benchmark::State& state) {
  const auto execution = state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
  for (auto _ : state) {
    auto estimates = estimate_baselines(dataset(), {2000, 0.95}, 7, execution);
    benchmark::DoNotOptimize(estimates.data());
  }
  state.SetLabel(execution == Execution::Serial ? "serial" : "openmp");
}
BENCHMARK(BM_Bootstrap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
