#pragma once

// Command-line front end. Exit codes: 0 success, 1 configuration error,
// 2 numerical-guard failure in at least one grid point.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqws/config.hpp"
#include "sqws/experiments.hpp"

namespace sqws {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

namespace detail {

struct CommonOptions {
  std::string config;
  std::string out = "sqws-out";
  std::size_t workers = 0;
  std::optional<std::uint64_t> seed;
  bool series = false;
};

inline std::size_t env_workers() {
  if (const char* env = std::getenv("SQWS_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ConfigError("SQWS_WORKERS: expected a positive integer, got '" +
                      std::string(env) + "'");
  }
  return 0;
}

struct LoadedConfig {
  SweepConfig sweep;
  std::string preset;
  PresetKind kind = PresetKind::sweep;
  std::size_t ring_n = 32;
  std::vector<std::size_t> ring_ks;
};

// `--config` names either a JSON file or a preset. A JSON file may itself
// start from a preset via its "preset" key.
inline LoadedConfig load_config(const std::string& source) {
  LoadedConfig out;
  if (source.empty()) return out;
  auto apply_preset = [&](const std::string& name) {
    const auto p = find_preset(name);
    if (!p) {
      throw ConfigError("unknown preset '" + name + "' (run `presets` for the list)");
    }
    out.sweep = p->config;
    out.preset = p->name;
    out.kind = p->kind;
    out.ring_n = p->ring_n;
    out.ring_ks = p->ring_ks;
  };
  if (!std::filesystem::exists(source)) {
    apply_preset(source);
    return out;
  }
  const Json j = read_json_file(source);
  if (!j.is_object()) throw ConfigError(source + ": expected a JSON object");
  if (j.contains("preset")) {
    if (!j.at("preset").is_string()) throw ConfigError("preset: expected a string");
    apply_preset(j.at("preset").get<std::string>());
  }
  out.sweep = sweep_config_from_json(j, out.sweep);
  if (j.contains("ks")) {
    try {
      out.ring_ks = j.at("ks").get<std::vector<std::size_t>>();
    } catch (const Json::exception&) {
      throw ConfigError("ks: expected an array of integers");
    }
  }
  return out;
}

inline void apply_common(LoadedConfig& cfg, const CommonOptions& opt) {
  if (opt.seed) cfg.sweep.seed = *opt.seed;
  if (opt.series) cfg.sweep.record_series = true;
}

inline int report(const std::vector<ResultRecord>& records, const std::string& out) {
  std::size_t failures = 0;
  for (const auto& r : records) {
    if (r.error) {
      ++failures;
      std::cerr << "guard failure at " << point_id(r) << ": " << r.message << '\n';
    }
  }
  std::cout << records.size() << " records written to " << out;
  if (failures) std::cout << " (" << failures << " failed)";
  std::cout << '\n';
  return failures ? kExitNumerical : kExitOk;
}

inline int run_sweep_command(const CommonOptions& opt, const std::string& command) {
  LoadedConfig cfg = load_config(opt.config);
  apply_common(cfg, opt);
  if (cfg.kind == PresetKind::ring_lattice || cfg.kind == PresetKind::metrics) {
    throw ConfigError("preset '" + cfg.preset + "' is a " +
                      std::string(to_string(cfg.kind)) + " preset; use `" +
                      std::string(to_string(cfg.kind)) + "`");
  }
  const std::size_t workers = opt.workers;
  OutputDir out(opt.out);
  SweepResult result = run_sweep(cfg.sweep, workers);
  write_sweep_outputs(out, result);
  write_manifest(out, manifest_json({command, cfg.preset, resolve_workers(workers),
                                     result.wall_time},
                                    cfg.sweep, result.records, out.written()));
  return report(result.records, opt.out);
}

}  // namespace detail

inline int cli_main(int argc, char** argv) {
  CLI::App app{"Stochastic quantum walk search: sweeps, presets and graph metrics"};
  app.require_subcommand(1);
  detail::CommonOptions opt;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opt.config, "JSON config file or preset name");
    if (config_required) c->required();
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--workers", opt.workers,
                    "worker threads (default: $SQWS_WORKERS, else all cores)");
    sub->add_option("--seed", opt.seed, "seed for randomized graph families");
    sub->add_flag("--series", opt.series, "write series/<point-id>.csv per grid point");
  };

  auto* sweep = app.add_subcommand("sweep", "run the targets x omegas x gammas grid");
  add_common(sweep, true);

  auto* point = app.add_subcommand("point", "run a single grid point");
  add_common(point, false);
  std::optional<double> omega;
  std::optional<double> gamma;
  std::optional<std::string> target;
  point->add_option("--omega", omega, "mixing parameter in [0, 1]");
  point->add_option("--gamma", gamma, "oracle strength >= 0");
  point->add_option("--target", target, "target vertex index or tag");

  auto* no_sink = app.add_subcommand("no-sink", "success probability grids without sink");
  add_common(no_sink, true);

  auto* ring = app.add_subcommand("ring-lattice", "ring-lattice sweep over k");
  add_common(ring, false);
  std::optional<std::size_t> ring_n;
  std::vector<std::size_t> ring_ks;
  ring->add_option("--n", ring_n, "ring size");
  ring->add_option("--ks", ring_ks, "values of k")->delimiter(',');

  auto* metrics = app.add_subcommand("metrics", "density, degree centrality, eccentricity");
  add_common(metrics, false);

  auto* list = app.add_subcommand("presets", "list named figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (opt.workers == 0) opt.workers = detail::env_workers();

    if (*list) {
      for (const auto& p : presets()) {
        std::cout << p.name << "  [" << to_string(p.kind) << ", " << p.figure << "]  "
                  << p.description << '\n';
      }
      return kExitOk;
    }

    if (*sweep) return detail::run_sweep_command(opt, "sweep");

    if (*point) {
      detail::LoadedConfig cfg = detail::load_config(opt.config);
      detail::apply_common(cfg, opt);
      if (omega) cfg.sweep.omegas = {*omega};
      if (gamma) cfg.sweep.gammas = {*gamma};
      if (target) {
        try {
          cfg.sweep.targets = {TargetSelector::parse(*target)};
        } catch (const SelectorError& e) {
          throw ConfigError(std::string("--target: ") + e.what());
        }
      }
      if (cfg.sweep.omegas.size() != 1 || cfg.sweep.gammas.size() != 1 ||
          cfg.sweep.targets.size() != 1) {
        // A grid config selects its first point unless flags say otherwise.
        cfg.sweep.omegas.resize(1);
        cfg.sweep.gammas.resize(1);
        cfg.sweep.targets.resize(1);
      }
      OutputDir out(opt.out);
      SweepResult result = run_sweep(cfg.sweep, 1);
      write_sweep_outputs(out, result);
      write_manifest(out, manifest_json({"point", cfg.preset, 1, result.wall_time},
                                        cfg.sweep, result.records, out.written()));
      write_records_csv(std::cout, result.records);
      return detail::report(result.records, opt.out);
    }

    if (*no_sink) {
      detail::LoadedConfig cfg = detail::load_config(opt.config);
      detail::apply_common(cfg, opt);
      OutputDir out(opt.out);
      const NoSinkGrid grid = run_no_sink_grid(cfg.sweep, opt.workers);
      out.write("records.csv",
                [&](std::ostream& os) { write_records_csv(os, grid.sweep.records); });
      out.write("heatmap.csv", [&](std::ostream& os) { write_heatmap_csv(os, grid); });
      if (opt.series || cfg.sweep.record_series) write_sweep_outputs(out, grid.sweep);
      write_manifest(out, manifest_json({"no-sink", cfg.preset,
                                         resolve_workers(opt.workers), grid.sweep.wall_time},
                                        cfg.sweep, grid.sweep.records, out.written()));
      return detail::report(grid.sweep.records, opt.out);
    }

    if (*ring) {
      detail::LoadedConfig cfg = detail::load_config(opt.config);
      detail::apply_common(cfg, opt);
      if (ring_n) cfg.ring_n = *ring_n;
      if (!ring_ks.empty()) cfg.ring_ks = ring_ks;
      if (cfg.ring_ks.empty()) {
        for (std::size_t k = 2; k <= cfg.ring_n; k += 2) cfg.ring_ks.push_back(k);
      }
      OutputDir out(opt.out);
      const RingLatticeStudy study =
          ring_lattice_study(cfg.ring_n, cfg.ring_ks, cfg.sweep, opt.workers);
      const auto records = study.records();
      out.write("records.csv", [&](std::ostream& os) { write_records_csv(os, records); });
      out.write("profile.csv",
                [&](std::ostream& os) { write_profile_csv(os, study.profile); });
      for (const auto& s : study.sweeps) {
        for (std::size_t i = 0; i < s.series.size(); ++i) {
          if (s.records[i].error) continue;
          out.write(std::filesystem::path("series") / (point_id(s.records[i]) + ".csv"),
                    [&](std::ostream& os) { write_series_csv(os, s.series[i]); });
        }
      }
      double wall = 0.0;
      for (const auto& s : study.sweeps) wall += s.wall_time;
      Json manifest = manifest_json({"ring-lattice", cfg.preset,
                                     resolve_workers(opt.workers), wall},
                                    cfg.sweep, records, out.written());
      manifest["ring"] = {{"n", cfg.ring_n}, {"ks", cfg.ring_ks}};
      write_manifest(out, manifest);
      return detail::report(records, opt.out);
    }

    if (*metrics) {
      std::vector<MetricRow> rows;
      if (opt.config.empty() || opt.config == "table1-metrics") {
        rows = table1_rows();
      } else {
        detail::LoadedConfig cfg = detail::load_config(opt.config);
        detail::apply_common(cfg, opt);
        for (const auto& t : cfg.sweep.targets) {
          rows.push_back({std::string(to_string(cfg.sweep.graph.family)),
                          cfg.sweep.resolved_graph_spec(), t});
        }
      }
      const auto table = table1_report(rows);
      OutputDir out(opt.out);
      out.write("metrics.csv", [&](std::ostream& os) { write_metrics_csv(os, table); });
      std::cout << render_metrics_text(table);
      return kExitOk;
    }
  } catch (const NumericalInstabilityError& e) {
    std::cerr << "numerical guard failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace sqws
