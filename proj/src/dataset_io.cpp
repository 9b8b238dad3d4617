#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "legibility/error.hpp"
#include "legibility/harness.hpp"

namespace legibility {

using nlohmann::json;

namespace {

constexpr const char* kResponsesHeader = "trajectory_id,fraction,viewpoint_id,participant_id,guess,response_time_s";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Load, path.filename().string() + ": cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& file) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Load, file + ": invalid JSON: " + e.what());
  }
}

// Names a record for diagnostics: "scenes.json record 2 (id 'kitchen')".
std::string record_name(const std::string& file, std::size_t index, const json& rec) {
  std::string name = file + " record " + std::to_string(index);
  if (rec.is_object() && rec.contains("id") && rec["id"].is_string()) {
    name += " (id '" + rec["id"].get<std::string>() + "')";
  }
  return name;
}

const json& field(const json& rec, const char* key, const std::string& where) {
  if (!rec.is_object() || !rec.contains(key)) {
    throw Error(ErrorKind::Schema, where + ": missing field '" + key + "'");
  }
  return rec[key];
}

double number(const json& v, const std::string& where, const char* key) {
  if (!v.is_number()) throw Error(ErrorKind::Schema, where + ": field '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorKind::Schema, where + ": field '" + key + "' must be finite");
  return x;
}

double number_field(const json& rec, const char* key, const std::string& where) {
  return number(field(rec, key, where), where, key);
}

std::string string_field(const json& rec, const char* key, const std::string& where) {
  const auto& v = field(rec, key, where);
  if (!v.is_string()) throw Error(ErrorKind::Schema, where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

Point3 point_field(const json& rec, const char* key, const std::string& where) {
  const auto& v = field(rec, key, where);
  if (!v.is_array() || v.size() != 3) {
    throw Error(ErrorKind::Schema, where + ": field '" + key + "' must be [x, y, z]");
  }
  return {number(v[0], where, key), number(v[1], where, key), number(v[2], where, key)};
}

json array_field(const json& rec, const char* key, const std::string& where) {
  const auto& v = field(rec, key, where);
  if (!v.is_array()) throw Error(ErrorKind::Schema, where + ": field '" + key + "' must be an array");
  return v;
}

// Runs a constructor that validates its own invariants, relabelling
// failures as schema errors for the record being read.
template <typename F>
auto build(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema || e.kind() == ErrorKind::ReferentialIntegrity) throw;
    throw Error(ErrorKind::Schema, where + ": " + e.what());
  }
}

json top_array(const std::string& text, const std::string& file) {
  json doc = parse_json(text, file);
  if (!doc.is_array()) throw Error(ErrorKind::Schema, file + ": top level must be an array");
  return doc;
}

Scene parse_scene(const json& rec, const std::string& where) {
  const std::string id = string_field(rec, "id", where);
  std::vector<Goal> goals;
  const auto goal_list = array_field(rec, "goals", where);
  for (std::size_t i = 0; i < goal_list.size(); ++i) {
    const std::string gw = where + " goal " + std::to_string(i);
    goals.push_back({string_field(goal_list[i], "id", gw), point_field(goal_list[i], "position", gw)});
  }
  const std::string intended = string_field(rec, "intended_goal", where);
  std::vector<double> priors;
  if (rec.contains("priors") && !rec["priors"].is_null()) {
    const auto& p = rec["priors"];
    if (!p.is_object()) throw Error(ErrorKind::Schema, where + ": field 'priors' must be an object");
    for (const auto& [key, _] : p.items()) {
      const bool known = std::any_of(goals.begin(), goals.end(), [&](const Goal& g) { return g.id == key; });
      if (!known) throw Error(ErrorKind::Schema, where + ": field 'priors' names unknown goal '" + key + "'");
    }
    for (const auto& g : goals) {
      if (!p.contains(g.id)) throw Error(ErrorKind::Schema, where + ": field 'priors' lacks goal '" + g.id + "'");
      priors.push_back(number(p[g.id], where, "priors"));
    }
  }
  return build(where, [&] { return Scene(id, goals, intended, priors); });
}

Viewpoint parse_viewpoint(const json& rec, const std::string& where) {
  const std::string id = string_field(rec, "id", where);
  Viewpoint::Intrinsics k{number_field(rec, "fx", where),    number_field(rec, "fy", where),
                          number_field(rec, "cx", where),    number_field(rec, "cy", where),
                          number_field(rec, "width", where), number_field(rec, "height", where)};
  const auto rot = array_field(rec, "rotation", where);
  if (rot.size() != 9) throw Error(ErrorKind::Schema, where + ": field 'rotation' must hold 9 numbers");
  std::array<double, 9> r{};
  for (std::size_t i = 0; i < 9; ++i) r[i] = number(rot[i], where, "rotation");
  const auto tr = array_field(rec, "translation", where);
  if (tr.size() != 3) throw Error(ErrorKind::Schema, where + ": field 'translation' must hold 3 numbers");
  const Point3 t{number(tr[0], where, "translation"), number(tr[1], where, "translation"),
                 number(tr[2], where, "translation")};
  return build(where, [&] { return Viewpoint(id, k, r, t); });
}

json viewpoint_json(const Viewpoint& v) {
  const auto& k = v.intrinsics();
  const auto& t = v.translation();
  return {{"id", v.id()},         {"fx", k.fx},         {"fy", k.fy},
          {"cx", k.cx},           {"cy", k.cy},         {"width", k.width},
          {"height", k.height},   {"rotation", v.rotation()}, {"translation", {t.x, t.y, t.z}}};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& text, const std::string& where, const char* column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Schema, where + ": column '" + column + "' is not a number: '" + text + "'");
  }
}

std::vector<ResponseRecord> read_responses(const std::string& text, const Dataset& data) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Schema, "responses.csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResponsesHeader) {
    throw Error(ErrorKind::Schema, std::string("responses.csv: header must be '") + kResponsesHeader + "'");
  }
  std::vector<ResponseRecord> out;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    const std::string where = "responses.csv row " + std::to_string(row);
    const auto cells = split_csv_line(line);
    if (cells.size() != 6) {
      throw Error(ErrorKind::Schema, where + ": expected 6 columns, got " + std::to_string(cells.size()));
    }
    ResponseRecord r;
    r.trajectory_id = cells[0];
    r.fraction = parse_double(cells[1], where, "fraction");
    r.viewpoint_id = cells[2];
    r.participant_id = cells[3];
    r.guess = cells[4];
    if (!cells[5].empty()) r.response_time_s = parse_double(cells[5], where, "response_time_s");

    const auto* dt = data.find_trajectory(r.trajectory_id);
    if (dt == nullptr) {
      throw Error(ErrorKind::ReferentialIntegrity, where + ": unknown trajectory_id '" + r.trajectory_id + "'");
    }
    // Snap to the dataset's fraction so item keys compare exactly.
    for (double f : dt->fractions) {
      if (std::abs(f - r.fraction) <= 1e-9) r.fraction = f;
    }
    const Scene* scene = data.find_scene(dt->trajectory.scene_id());
    if (scene != nullptr && r.guess != kNoAnswer && scene->find_goal(r.guess) < 0) {
      throw Error(ErrorKind::Schema,
                  where + ": column 'guess' value '" + r.guess + "' is not a goal of scene '" + scene->id() + "'");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::Load, "data directory '" + dir.string() + "' does not exist");
  }
  Dataset data;

  const auto scenes = top_array(read_file(dir / "scenes.json"), "scenes.json");
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    data.scenes.push_back(parse_scene(scenes[i], record_name("scenes.json", i, scenes[i])));
  }

  const auto trajectories = top_array(read_file(dir / "trajectories.json"), "trajectories.json");
  if (trajectories.empty()) throw Error(ErrorKind::Load, "trajectories.json: no trajectories");
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& rec = trajectories[i];
    const std::string where = record_name("trajectories.json", i, rec);
    const std::string id = string_field(rec, "id", where);
    const std::string scene_id = string_field(rec, "scene_id", where);
    std::vector<double> fractions;
    if (rec.contains("fractions")) {
      for (const auto& f : array_field(rec, "fractions", where)) fractions.push_back(number(f, where, "fractions"));
    } else {
      fractions.push_back(1.0);
    }
    std::vector<TrajectorySample> samples;
    const auto sample_list = array_field(rec, "samples", where);
    for (std::size_t k = 0; k < sample_list.size(); ++k) {
      const std::string sw = where + " sample " + std::to_string(k);
      samples.push_back({number_field(sample_list[k], "t", sw), point_field(sample_list[k], "p", sw)});
    }
    data.trajectories.push_back(
        {build(where, [&] { return Trajectory(id, scene_id, samples); }), std::move(fractions)});
  }

  if (std::filesystem::exists(dir / "viewpoints.json")) {
    const auto views = top_array(read_file(dir / "viewpoints.json"), "viewpoints.json");
    for (std::size_t i = 0; i < views.size(); ++i) {
      data.viewpoints.push_back(parse_viewpoint(views[i], record_name("viewpoints.json", i, views[i])));
    }
  }

  // Trajectory and scene structure first, so response checks can rely on it.
  data.validate();

  if (std::filesystem::exists(dir / "responses.csv")) {
    data.responses = read_responses(read_file(dir / "responses.csv"), data);
    data.has_responses = true;
    try {
      data.validate();
    } catch (const Error& e) {
      throw Error(e.kind(), "responses.csv: " + std::string(e.what()));
    }
  }
  return data;
}

void write_dataset(const Dataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  json scenes = json::array();
  for (const auto& s : data.scenes) {
    json goals = json::array();
    json priors = json::object();
    for (std::size_t i = 0; i < s.goals().size(); ++i) {
      const auto& g = s.goals()[i];
      goals.push_back({{"id", g.id}, {"position", {g.position.x, g.position.y, g.position.z}}});
      priors[g.id] = s.priors()[i];
    }
    scenes.push_back({{"id", s.id()}, {"goals", goals}, {"intended_goal", s.intended_goal()}, {"priors", priors}});
  }
  std::ofstream(dir / "scenes.json") << scenes.dump(2) << '\n';

  json trajectories = json::array();
  for (const auto& dt : data.trajectories) {
    json samples = json::array();
    for (const auto& s : dt.trajectory.samples()) samples.push_back({{"t", s.t}, {"p", {s.p.x, s.p.y, s.p.z}}});
    trajectories.push_back({{"id", dt.trajectory.id()},
                            {"scene_id", dt.trajectory.scene_id()},
                            {"fractions", dt.fractions},
                            {"samples", samples}});
  }
  std::ofstream(dir / "trajectories.json") << trajectories.dump(2) << '\n';

  if (!data.viewpoints.empty()) {
    json views = json::array();
    for (const auto& v : data.viewpoints) views.push_back(viewpoint_json(v));
    std::ofstream(dir / "viewpoints.json") << views.dump(2) << '\n';
  }

  if (data.has_responses) {
    std::ofstream out(dir / "responses.csv");
    out << kResponsesHeader << '\n';
    char fraction[32];
    for (const auto& r : data.responses) {
      std::snprintf(fraction, sizeof fraction, "%.17g", r.fraction);
      out << r.trajectory_id << ',' << fraction << ',' << r.viewpoint_id << ',' << r.participant_id << ','
          << r.guess << ',';
      if (r.response_time_s) out << format_number(*r.response_time_s);
      out << '\n';
    }
  }
}

BenchmarkConfig parse_config(const std::string& text) {
  const json doc = parse_json(text, "config");
  if (!doc.is_object()) throw Error(ErrorKind::Configuration, "config: top level must be an object");
  if (!doc.contains("frameworks")) return BenchmarkConfig::all_defaults();
  const auto& list = doc["frameworks"];
  if (!list.is_object()) throw Error(ErrorKind::Configuration, "config: 'frameworks' must be an object");

  BenchmarkConfig config;
  for (const auto& [name, entry] : list.items()) {
    const auto id = framework_from_string(name);
    if (!id) throw Error(ErrorKind::Configuration, "config: unknown framework '" + name + "'");
    if (!entry.is_object()) throw Error(ErrorKind::Configuration, "config: framework '" + name + "' must be an object");
    FrameworkSettings settings;
    if (entry.contains("enabled")) {
      if (!entry["enabled"].is_boolean()) {
        throw Error(ErrorKind::Configuration, "config: '" + name + ".enabled' must be a boolean");
      }
      settings.enabled = entry["enabled"].get<bool>();
    }
    if (entry.contains("params")) {
      const auto& params = entry["params"];
      if (!params.is_object()) throw Error(ErrorKind::Configuration, "config: '" + name + ".params' must be an object");
      for (const auto& [pname, pvalue] : params.items()) {
        if (!pvalue.is_number()) {
          throw Error(ErrorKind::Configuration, "config: '" + name + ".params." + pname + "' must be a number");
        }
        settings.params[pname] = pvalue.get<double>();
      }
    }
    validate_params(*id, settings.params);
    config.frameworks[*id] = std::move(settings);
  }
  return config;
}

BenchmarkConfig load_config(const std::filesystem::path& path) {
  try {
    return parse_config(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.filename().string() + ": " + e.what());
  }
}

void restrict_frameworks(BenchmarkConfig& config, const std::string& comma_list) {
  for (auto& [id, settings] : config.frameworks) settings.enabled = false;
  std::istringstream ss(comma_list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    const auto id = framework_from_string(name);
    if (!id) throw Error(ErrorKind::Configuration, "--frameworks: unknown framework '" + name + "'");
    config.frameworks[*id].enabled = true;
  }
}

SynthSpec parse_synth_spec(const std::string& text) {
  const json doc = parse_json(text, "synth spec");
  const std::string where = "synth spec";
  if (!doc.is_object()) throw Error(ErrorKind::Configuration, where + ": top level must be an object");
  SynthSpec spec;
  try {
    const auto& layout = field(doc, "layout", where);
    const std::string lw = where + " layout";
    if (layout.contains("id")) spec.layout_id = string_field(layout, "id", lw);
    const auto goals = array_field(layout, "goals", lw);
    for (std::size_t i = 0; i < goals.size(); ++i) {
      const std::string gw = lw + " goal " + std::to_string(i);
      spec.goals.push_back({string_field(goals[i], "id", gw), point_field(goals[i], "position", gw)});
    }
    if (layout.contains("priors")) {
      const auto& p = layout["priors"];
      for (const auto& g : spec.goals) {
        if (!p.contains(g.id)) throw Error(ErrorKind::Schema, lw + ": priors lack goal '" + g.id + "'");
        spec.priors.push_back(number(p[g.id], lw, "priors"));
      }
    }
    spec.start = point_field(layout, "start", lw);

    const auto trajectories = array_field(doc, "trajectories", where);
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      const auto& rec = trajectories[i];
      const std::string tw = record_name("synth spec trajectories", i, rec);
      SynthTrajectorySpec ts;
      ts.id = string_field(rec, "id", tw);
      const std::string kind = string_field(rec, "kind", tw);
      const auto k = trajectory_kind_from_string(kind);
      if (!k) throw Error(ErrorKind::Schema, tw + ": unknown kind '" + kind + "'");
      ts.kind = *k;
      if (rec.contains("goal")) ts.goal = string_field(rec, "goal", tw);
      if (rec.contains("samples")) {
        const double n = number_field(rec, "samples", tw);
        if (n < 2 || n != std::floor(n)) throw Error(ErrorKind::Schema, tw + ": 'samples' must be an integer >= 2");
        ts.samples = static_cast<std::size_t>(n);
      }
      if (rec.contains("duration")) ts.duration = number_field(rec, "duration", tw);
      if (rec.contains("bow")) ts.shape.bow = number_field(rec, "bow", tw);
      if (rec.contains("detour")) ts.shape.detour = number_field(rec, "detour", tw);
      if (rec.contains("detour_time")) ts.shape.detour_time = number_field(rec, "detour_time", tw);
      spec.trajectories.push_back(std::move(ts));
    }

    if (doc.contains("fractions")) {
      spec.fractions.clear();
      for (const auto& f : array_field(doc, "fractions", where)) spec.fractions.push_back(number(f, where, "fractions"));
    }
    if (doc.contains("viewpoints")) {
      const auto views = array_field(doc, "viewpoints", where);
      for (std::size_t i = 0; i < views.size(); ++i) {
        spec.viewpoints.push_back(parse_viewpoint(views[i], record_name("synth spec viewpoints", i, views[i])));
      }
    }
    if (doc.contains("observer")) {
      const auto& obs = doc["observer"];
      const std::string ow = where + " observer";
      const std::string kind = string_field(obs, "kind", ow);
      const auto k = observer_kind_from_string(kind);
      if (!k) throw Error(ErrorKind::Schema, ow + ": unknown kind '" + kind + "'");
      spec.observer.kind = *k;
      if (obs.contains("noise")) spec.observer.noise = number_field(obs, "noise", ow);
      if (obs.contains("a")) spec.observer.a = number_field(obs, "a", ow);
      if (obs.contains("b")) spec.observer.b = number_field(obs, "b", ow);
    }
    if (doc.contains("responses_per_item")) {
      const double n = number_field(doc, "responses_per_item", where);
      if (n < 1 || n != std::floor(n)) {
        throw Error(ErrorKind::Schema, where + ": 'responses_per_item' must be an integer >= 1");
      }
      spec.responses_per_item = static_cast<std::size_t>(n);
    }
    if (doc.contains("seed")) {
      const auto& s = doc["seed"];
      if (!s.is_number_unsigned()) throw Error(ErrorKind::Schema, where + ": 'seed' must be a nonnegative integer");
      spec.seed = s.get<std::uint64_t>();
    }
  } catch (const Error& e) {
    throw Error(ErrorKind::Configuration, e.what());
  }
  return spec;
}

SynthSpec load_synth_spec(const std::filesystem::path& path) {
  try {
    return parse_synth_spec(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.filename().string() + ": " + e.what());
  }
}

}  // namespace legibility
