#pragma once

// JSON configuration (keys mirror the SweepConfig field names) and the
// on-disk output layout: records.csv, series/<point-id>.csv, manifest.json,
// heatmap.csv, profile.csv and metrics.csv.

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "sqws/error.hpp"
#include "sqws/experiments.hpp"

namespace sqws {

inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::json;

namespace detail {

inline void check_keys(const Json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError(where + (where.empty() ? "" : ".") + key + ": unknown field");
    }
  }
}

template <class T>
void read_field(const Json& j, const char* key, const std::string& where, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError((where.empty() ? "" : where + ".") + key + ": wrong type");
  }
}

inline std::string join(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

}  // namespace detail

inline Json to_json(const FamilySpec& s) {
  Json j{{"family", std::string(to_string(s.family))}};
  if (s.n) j["n"] = s.n;
  if (s.m) j["m"] = s.m;
  if (s.d) j["d"] = s.d;
  if (s.k) j["k"] = s.k;
  if (s.rows) j["rows"] = s.rows;
  if (s.cols) j["cols"] = s.cols;
  if (s.family == Family::watts_strogatz) j["p"] = s.p;
  if (s.randomized()) j["seed"] = s.seed;
  return j;
}

inline FamilySpec family_spec_from_json(const Json& j, const std::string& where = "graph") {
  detail::check_keys(j, where, {"family", "n", "m", "d", "k", "rows", "cols", "p", "seed"});
  FamilySpec s;
  std::string family;
  detail::read_field(j, "family", where, family);
  if (family.empty()) throw ConfigError(where + ".family: required");
  try {
    s.family = parse_family(family);
  } catch (const ParameterError& e) {
    throw ConfigError(where + ".family: " + e.what());
  }
  detail::read_field(j, "n", where, s.n);
  detail::read_field(j, "m", where, s.m);
  detail::read_field(j, "d", where, s.d);
  detail::read_field(j, "k", where, s.k);
  detail::read_field(j, "rows", where, s.rows);
  detail::read_field(j, "cols", where, s.cols);
  detail::read_field(j, "p", where, s.p);
  detail::read_field(j, "seed", where, s.seed);
  return s;
}

inline std::string_view to_string(IntegratorMethod m) {
  return m == IntegratorMethod::rk4_fixed ? "rk4_fixed" : "rk4_halving_check";
}

inline Json to_json(const IntegratorConfig& c) {
  return {{"dt", c.dt},
          {"samples", c.samples},
          {"method", std::string(to_string(c.method))},
          {"trace_tolerance", c.trace_tolerance},
          {"hermiticity_tolerance", c.hermiticity_tolerance},
          {"positivity_tolerance", c.positivity_tolerance},
          {"halving_tolerance", c.halving_tolerance}};
}

inline IntegratorConfig integrator_from_json(const Json& j,
                                             const std::string& where = "integrator") {
  detail::check_keys(j, where,
                     {"dt", "t_max", "samples", "method", "trace_tolerance",
                      "hermiticity_tolerance", "positivity_tolerance",
                      "halving_tolerance"});
  IntegratorConfig c;
  detail::read_field(j, "dt", where, c.dt);
  detail::read_field(j, "t_max", where, c.t_max);
  detail::read_field(j, "samples", where, c.samples);
  std::string method;
  detail::read_field(j, "method", where, method);
  if (method == "rk4_fixed" || method.empty()) {
    c.method = IntegratorMethod::rk4_fixed;
  } else if (method == "rk4_halving_check") {
    c.method = IntegratorMethod::rk4_halving_check;
  } else {
    throw ConfigError(where + ".method: expected rk4_fixed or rk4_halving_check");
  }
  detail::read_field(j, "trace_tolerance", where, c.trace_tolerance);
  detail::read_field(j, "hermiticity_tolerance", where, c.hermiticity_tolerance);
  detail::read_field(j, "positivity_tolerance", where, c.positivity_tolerance);
  detail::read_field(j, "halving_tolerance", where, c.halving_tolerance);
  return c;
}

inline Json to_json(const ModelOptions& o) {
  return {{"walk", o.walk == WalkNormalization::laplacian ? "laplacian" : "complement"},
          {"convention", o.convention == JumpConvention::all_entries ? "all_entries"
                                                                     : "off_diagonal_only"},
          {"sqrt_rates", o.sqrt_rates}};
}

inline ModelOptions model_from_json(const Json& j, const std::string& where = "model") {
  detail::check_keys(j, where, {"walk", "convention", "sqrt_rates"});
  ModelOptions o;
  std::string walk = "laplacian";
  std::string convention = "all_entries";
  detail::read_field(j, "walk", where, walk);
  detail::read_field(j, "convention", where, convention);
  detail::read_field(j, "sqrt_rates", where, o.sqrt_rates);
  if (walk == "laplacian") {
    o.walk = WalkNormalization::laplacian;
  } else if (walk == "complement") {
    o.walk = WalkNormalization::complement;
  } else {
    throw ConfigError(where + ".walk: expected laplacian or complement");
  }
  if (convention == "all_entries") {
    o.convention = JumpConvention::all_entries;
  } else if (convention == "off_diagonal_only") {
    o.convention = JumpConvention::off_diagonal_only;
  } else {
    throw ConfigError(where + ".convention: expected all_entries or off_diagonal_only");
  }
  return o;
}

inline Json to_json(const SweepConfig& c) {
  Json targets = Json::array();
  for (const auto& t : c.targets) targets.push_back(t.id());
  return {{"graph", to_json(c.graph)},
          {"targets", targets},
          {"omegas", c.omegas},
          {"gammas", c.gammas},
          {"sink_rate", c.sink_rate},
          {"t_max", c.t_max},
          {"integrator", to_json(c.integrator)},
          {"record_series", c.record_series},
          {"seed", c.seed},
          {"model", to_json(c.model)}};
}

// Missing keys keep their defaults; `base` supplies them.
inline SweepConfig sweep_config_from_json(const Json& j, SweepConfig base = {}) {
  detail::check_keys(j, "",
                     {"graph", "targets", "omegas", "gammas", "sink_rate", "t_max",
                      "integrator", "record_series", "seed", "model", "preset", "ks"});
  SweepConfig c = std::move(base);
  if (j.contains("graph")) {
    c.graph = family_spec_from_json(j.at("graph"));
    if (j.at("graph").contains("seed") && !j.contains("seed")) c.seed = c.graph.seed;
  }
  if (j.contains("targets")) {
    const Json& t = j.at("targets");
    if (!t.is_array()) throw ConfigError("targets: expected an array");
    c.targets.clear();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].is_number_unsigned()) {
        c.targets.push_back(TargetSelector::at(t[i].get<std::size_t>()));
      } else if (t[i].is_string()) {
        try {
          c.targets.push_back(TargetSelector::parse(t[i].get<std::string>()));
        } catch (const SelectorError& e) {
          throw ConfigError("targets[" + std::to_string(i) + "]: " + e.what());
        }
      } else {
        throw ConfigError("targets[" + std::to_string(i) +
                          "]: expected a vertex index or a tag");
      }
    }
  }
  detail::read_field(j, "omegas", "", c.omegas);
  detail::read_field(j, "gammas", "", c.gammas);
  detail::read_field(j, "sink_rate", "", c.sink_rate);
  detail::read_field(j, "t_max", "", c.t_max);
  if (j.contains("integrator")) c.integrator = integrator_from_json(j.at("integrator"));
  detail::read_field(j, "record_series", "", c.record_series);
  detail::read_field(j, "seed", "", c.seed);
  if (j.contains("model")) c.model = model_from_json(j.at("model"));
  return c;
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(origin + ": invalid JSON (" + e.what() + ")");
  }
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

// ---------------------------------------------------------------------------
// Output directory

class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root) : root_(std::move(root)) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec) throw ConfigError("cannot create output directory '" + root_.string() + "'");
  }

  const std::filesystem::path& root() const noexcept { return root_; }

  template <class Writer>
  std::filesystem::path write(const std::filesystem::path& relative, Writer&& writer) {
    const auto path = root_ / relative;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    writer(out);
    written_.push_back(relative.generic_string());
    return path;
  }

  const std::vector<std::string>& written() const noexcept { return written_; }

 private:
  std::filesystem::path root_;
  std::vector<std::string> written_;
};

inline void write_sweep_outputs(OutputDir& out, const SweepResult& result) {
  out.write("records.csv", [&](std::ostream& os) { write_records_csv(os, result.records); });
  for (std::size_t i = 0; i < result.series.size(); ++i) {
    const auto& rec = result.records[i];
    if (rec.error) continue;
    out.write(std::filesystem::path("series") / (point_id(rec) + ".csv"),
              [&](std::ostream& os) { write_series_csv(os, result.series[i]); });
  }
}

struct ManifestInfo {
  std::string command;
  std::string preset;
  std::size_t workers = 1;
  double wall_time = 0.0;
};

inline Json manifest_json(const ManifestInfo& info, const SweepConfig& cfg,
                          const std::vector<ResultRecord>& records,
                          const std::vector<std::string>& outputs) {
  Json walls = Json::object();
  std::size_t failures = 0;
  for (const auto& r : records) {
    walls[point_id(r)] = r.wall_time;
    if (r.error) ++failures;
  }
  return {{"tool", "sqws"},
          {"version", kVersion},
          {"command", info.command},
          {"preset", info.preset},
          {"config", to_json(cfg)},
          {"seeds", {{"sweep", cfg.seed}, {"graph", cfg.resolved_graph_spec().seed}}},
          {"workers", info.workers},
          {"versions",
           {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                          std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"compiler", __VERSION__}}},
          {"records", records.size()},
          {"failures", failures},
          {"wall_time_total", info.wall_time},
          {"wall_time_per_point", walls},
          {"outputs", outputs}};
}

inline void write_manifest(OutputDir& out, const Json& manifest) {
  out.write("manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
}

}  // namespace sqws
