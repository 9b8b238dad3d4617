#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "legibility/error.hpp"
#include "legibility/harness.hpp"

namespace legibility {

using nlohmann::json;

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

// Rounds through the 12-digit text form so report.json matches the CSVs.
double rounded(double value) { return std::stod(format_number(value)); }

json item_json(const ItemKey& key) {
  return {{"trajectory_id", key.trajectory_id},
          {"fraction", rounded(key.fraction)},
          {"viewpoint_id", key.viewpoint_id.empty() ? json(nullptr) : json(key.viewpoint_id)}};
}

json correlation_json(const std::optional<CorrelationResult>& r) {
  if (!r) return nullptr;
  return {{"rho", rounded(r->rho)}, {"n", r->n}, {"bin", std::string(to_string(r->bin))}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Load, "cannot write " + path.string());
  out << text;
}

template <typename Writer, typename T>
std::string render(Writer writer, const T& value) {
  std::ostringstream ss;
  writer(ss, value);
  return ss.str();
}

BenchmarkConfig resolve_config(const CommandPaths& paths) {
  BenchmarkConfig config = paths.config.empty() ? BenchmarkConfig::all_defaults() : load_config(paths.config);
  if (!paths.frameworks.empty()) restrict_frameworks(config, paths.frameworks);
  return config;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return 0;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace

BenchmarkReport run_benchmark(const Dataset& dataset, const BenchmarkConfig& config, const RunOptions& options) {
  BenchmarkReport report;
  report.config = config;
  report.options = options;
  report.scores = score_all(dataset, config, {options.execution, false});
  if (dataset.has_responses) {
    report.baselines = estimate_baselines(dataset, options.bootstrap, options.seed, options.execution);
  }
  report.framework_baseline = framework_baseline_table(report.scores.records, report.baselines);
  report.matrix = framework_framework_matrix(report.scores.records);

  for (const auto& ex : report.scores.exclusions) {
    if (!ex.item) {
      report.flags.push_back({std::string(to_string(ex.framework)), "scoring",
                              std::string(to_string(ex.kind)) + ": " + ex.message});
    }
  }
  for (const auto& row : report.framework_baseline) {
    if (row.flag != CorrelationFlag::None) {
      report.flags.push_back({std::string(to_string(row.framework)), "framework_baseline",
                              std::string(to_string(row.flag))});
    }
  }
  const auto& m = report.matrix;
  for (std::size_t a = 0; a < m.frameworks.size(); ++a) {
    for (std::size_t b = a + 1; b < m.frameworks.size(); ++b) {
      if (m.cells[a][b].flag != CorrelationFlag::None) {
        report.flags.push_back({std::string(to_string(m.frameworks[a])) + "|" + std::string(to_string(m.frameworks[b])),
                                "framework_matrix", std::string(to_string(m.cells[a][b].flag))});
      }
    }
  }
  return report;
}

void write_scores_csv(std::ostream& out, const std::vector<ScoreRecord>& records) {
  out << "framework,score_kind,trajectory_id,fraction,viewpoint_id,value\n";
  for (const auto& r : records) {
    out << to_string(r.framework) << ',' << to_string(score_kind(r.framework)) << ',' << r.item.trajectory_id << ','
        << format_number(r.item.fraction) << ',' << r.item.viewpoint_id << ',' << format_number(r.value) << '\n';
  }
}

void write_baseline_csv(std::ostream& out, const std::vector<BaselineEstimate>& baselines) {
  out << "trajectory_id,fraction,viewpoint_id,n,legibility,ci_low,ci_high\n";
  for (const auto& b : baselines) {
    out << b.item.trajectory_id << ',' << format_number(b.item.fraction) << ',' << b.item.viewpoint_id << ',' << b.n
        << ',' << format_number(b.legibility) << ',' << format_number(b.ci_low) << ',' << format_number(b.ci_high)
        << '\n';
  }
}

void write_framework_baseline_csv(std::ostream& out, const std::vector<FrameworkBaselineRow>& rows) {
  out << "framework,score_kind,n,rho,bin,flag,excluded\n";
  for (const auto& row : rows) {
    out << to_string(row.framework) << ',' << to_string(score_kind(row.framework)) << ',' << row.matched << ',';
    if (row.result) out << format_number(row.result->rho) << ',' << to_string(row.result->bin);
    else out << ',';
    out << ',' << to_string(row.flag) << ',' << row.excluded << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const FrameworkMatrix& m) {
  out << "framework";
  for (auto id : m.frameworks) out << ',' << to_string(id);
  out << '\n';
  for (std::size_t a = 0; a < m.frameworks.size(); ++a) {
    out << to_string(m.frameworks[a]);
    for (std::size_t b = 0; b < m.frameworks.size(); ++b) {
      out << ',';
      if (m.cells[a][b].result) out << format_number(m.cells[a][b].result->rho);
    }
    out << '\n';
  }
}

std::string report_json(const BenchmarkReport& report) {
  json config = json::object();
  for (const auto& [id, settings] : report.config.frameworks) {
    json params = json::object();
    for (const auto& [name, value] : settings.params) params[name] = value;
    config[std::string(to_string(id))] = {{"enabled", settings.enabled}, {"params", params}};
  }

  json scores = json::array();
  for (const auto& r : report.scores.records) {
    json rec = item_json(r.item);
    rec["framework"] = to_string(r.framework);
    rec["score_kind"] = to_string(score_kind(r.framework));
    rec["value"] = rounded(r.value);
    scores.push_back(std::move(rec));
  }

  json exclusions = json::array();
  for (const auto& ex : report.scores.exclusions) {
    exclusions.push_back({{"framework", to_string(ex.framework)},
                          {"item", ex.item ? item_json(*ex.item) : json(nullptr)},
                          {"kind", to_string(ex.kind)},
                          {"message", ex.message}});
  }

  json baselines = json::array();
  for (const auto& b : report.baselines) {
    json rec = item_json(b.item);
    rec["n"] = b.n;
    rec["legibility"] = rounded(b.legibility);
    rec["ci_low"] = rounded(b.ci_low);
    rec["ci_high"] = rounded(b.ci_high);
    baselines.push_back(std::move(rec));
  }

  json table = json::array();
  for (const auto& row : report.framework_baseline) {
    table.push_back({{"framework", to_string(row.framework)},
                     {"score_kind", to_string(score_kind(row.framework))},
                     {"correlation", correlation_json(row.result)},
                     {"matched", row.matched},
                     {"excluded", row.excluded},
                     {"flag", to_string(row.flag)}});
  }

  json matrix = json::object();
  json names = json::array();
  for (auto id : report.matrix.frameworks) names.push_back(to_string(id));
  json cells = json::array();
  for (const auto& row : report.matrix.cells) {
    json out_row = json::array();
    for (const auto& cell : row) {
      out_row.push_back({{"correlation", correlation_json(cell.result)}, {"flag", to_string(cell.flag)}});
    }
    cells.push_back(std::move(out_row));
  }
  matrix["frameworks"] = names;
  matrix["cells"] = cells;

  json flags = json::array();
  for (const auto& f : report.flags) flags.push_back({{"framework", f.framework}, {"scope", f.scope}, {"reason", f.reason}});

  json doc = {{"seed", report.options.seed},
              {"bootstrap", {{"resamples", report.options.bootstrap.resamples},
                             {"level", report.options.bootstrap.level}}},
              {"config", {{"frameworks", config}}},
              {"scores", scores},
              {"exclusions", exclusions},
              {"baseline", baselines},
              {"framework_baseline", table},
              {"framework_matrix", matrix},
              {"flags", flags}};
  return doc.dump(2) + "\n";
}

int cmd_score(const CommandPaths& paths, Execution execution, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset data = load_dataset(paths.data_dir);
    const BenchmarkConfig config = resolve_config(paths);
    const auto outcome = score_all(data, config, {execution, false});
    std::filesystem::create_directories(paths.out_dir);
    write_text(paths.out_dir / "scores.csv", render(write_scores_csv, outcome.records));
    for (const auto& ex : outcome.exclusions) {
      err << "skipped " << to_string(ex.framework) << (ex.item ? " " + to_string(*ex.item) : std::string{}) << ": "
          << ex.message << '\n';
    }
  });
}

int cmd_baseline(const CommandPaths& paths, const RunOptions& options, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset data = load_dataset(paths.data_dir);
    if (!data.has_responses) {
      throw Error(ErrorKind::MissingData, "'" + paths.data_dir.string() + "' has no responses.csv");
    }
    const auto baselines = estimate_baselines(data, options.bootstrap, options.seed, options.execution);
    std::filesystem::create_directories(paths.out_dir);
    write_text(paths.out_dir / "baseline.csv", render(write_baseline_csv, baselines));
  });
}

int cmd_benchmark(const CommandPaths& paths, const RunOptions& options, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset data = load_dataset(paths.data_dir);
    const BenchmarkConfig config = resolve_config(paths);
    const auto report = run_benchmark(data, config, options);
    std::filesystem::create_directories(paths.out_dir);
    write_text(paths.out_dir / "scores.csv", render(write_scores_csv, report.scores.records));
    write_text(paths.out_dir / "baseline.csv", render(write_baseline_csv, report.baselines));
    write_text(paths.out_dir / "framework_baseline.csv",
               render(write_framework_baseline_csv, report.framework_baseline));
    write_text(paths.out_dir / "framework_matrix.csv", render(write_matrix_csv, report.matrix));
    write_text(paths.out_dir / "report.json", report_json(report));
    for (const auto& f : report.flags) err << "flag " << f.scope << ' ' << f.framework << ": " << f.reason << '\n';
  });
}

int cmd_synth(const std::filesystem::path& spec_path, const std::filesystem::path& out_dir,
              std::optional<std::uint64_t> seed_override, std::ostream& err) {
  return guarded(err, [&] {
    SynthSpec spec = load_synth_spec(spec_path);
    if (seed_override) spec.seed = *seed_override;
    write_dataset(synthesize_dataset(spec), out_dir);
  });
}

}  // namespace legibility
