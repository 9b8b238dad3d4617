// Command-line front end: score, baseline, benchmark, synth.

#include <omp.h>

#include <iostream>

#include "CLI11.hpp"
#include "legibility/harness.hpp"

int main(int argc, char** argv) {
  using namespace legibility;

  CLI::App app{"Legibility framework benchmark: score trajectories, estimate the human baseline, correlate."};
  app.require_subcommand(1);

  CommandPaths paths;
  RunOptions run;
  std::uint64_t seed = 0;
  int threads = 0;
  bool serial = false;
  std::string spec_path;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    cmd->add_option("--data-dir", paths.data_dir, "Dataset directory")->required();
    cmd->add_option("--out", paths.out_dir, "Output directory")->required();
    if (needs_config) {
      cmd->add_option("--config", paths.config, "Hyperparameter config JSON");
      cmd->add_option("--frameworks", paths.frameworks, "Comma list of frameworks to run (overrides config)");
    }
    cmd->add_option("--threads", threads, "OpenMP threads (0: runtime default)");
    cmd->add_flag("--serial", serial, "Use the serial reference loops");
  };
  auto add_stats = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Master seed for bootstrap resampling");
    cmd->add_option("--bootstrap-samples", run.bootstrap.resamples, "Bootstrap resamples")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--level", run.bootstrap.level, "Confidence level")->check(CLI::Range(0.0, 1.0));
  };

  auto* score = app.add_subcommand("score", "Score every item under the enabled frameworks");
  add_common(score, true);
  auto* baseline = app.add_subcommand("baseline", "Estimate human-baseline legibility with bootstrap intervals");
  add_common(baseline, false);
  add_stats(baseline);
  auto* bench = app.add_subcommand("benchmark", "Full pipeline: scores, baseline, correlation tables, report");
  add_common(bench, true);
  add_stats(bench);
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset from a scenario description");
  synth->add_option("--spec", spec_path, "Synthetic scenario JSON")->required();
  synth->add_option("--out", paths.out_dir, "Output dataset directory")->required();
  auto* synth_seed = synth->add_option("--seed", seed, "Override the scenario seed");
  synth->add_option("--threads", threads, "OpenMP threads (0: runtime default)");

  CLI11_PARSE(app, argc, argv);

  if (threads > 0) omp_set_num_threads(threads);
  run.seed = seed;
  run.execution = serial ? Execution::Serial : Execution::Parallel;

  if (score->parsed()) return cmd_score(paths, run.execution, std::cerr);
  if (baseline->parsed()) return cmd_baseline(paths, run, std::cerr);
  if (bench->parsed()) return cmd_benchmark(paths, run, std::cerr);
  if (synth->parsed()) {
    std::optional<std::uint64_t> override_seed;
    if (synth_seed->count() > 0) override_seed = seed;
    return cmd_synth(spec_path, paths.out_dir, override_seed, std::cerr);
  }
  return 1;
}
