#pragma once

// Experiment harness: sweep configuration, grid execution on a bounded
// worker pool, CSV records, no-sink heatmaps, the ring-lattice study,
// graph-metric tables and named figure presets.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sqws/error.hpp"
#include "sqws/graph.hpp"
#include "sqws/observables.hpp"
#include "sqws/operators.hpp"
#include "sqws/propagate.hpp"
#include "sqws/trajectory.hpp"

namespace sqws {

inline std::vector<double> default_omegas() {
  std::vector<double> out;
  for (int i = 0; i <= 10; ++i) out.push_back(static_cast<double>(i) / 10.0);
  return out;
}

inline std::vector<double> default_gammas() {
  return {0.0, 0.1, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0};
}

struct SweepConfig {
  FamilySpec graph = FamilySpec::complete(64);
  std::vector<TargetSelector> targets{TargetSelector::at(0)};
  std::vector<double> omegas = default_omegas();
  std::vector<double> gammas = default_gammas();
  double sink_rate = 1.0;
  // <= 0 selects 10 |V|.
  double t_max = 0.0;
  // integrator.t_max is overridden by the resolved t_max.
  IntegratorConfig integrator;
  bool record_series = false;
  // Seeds randomized graph families; overrides graph.seed.
  std::uint64_t seed = 0;
  ModelOptions model;

  FamilySpec resolved_graph_spec() const {
    FamilySpec spec = graph;
    if (spec.randomized()) spec.seed = seed;
    return spec;
  }

  double resolved_t_max(std::size_t num_vertices) const {
    return t_max > 0.0 ? t_max : 10.0 * static_cast<double>(num_vertices);
  }

  // Throws ConfigError naming the offending field.
  void validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (targets.empty()) fail("targets: must not be empty");
    if (omegas.empty()) fail("omegas: must not be empty");
    if (gammas.empty()) fail("gammas: must not be empty");
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      if (!(omegas[i] >= 0.0 && omegas[i] <= 1.0)) {
        fail("omegas[" + std::to_string(i) + "] = " + std::to_string(omegas[i]) +
             ": omega must lie in [0, 1]");
      }
    }
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      if (!(gammas[i] >= 0.0) || !std::isfinite(gammas[i])) {
        fail("gammas[" + std::to_string(i) + "] = " + std::to_string(gammas[i]) +
             ": gamma must be finite and >= 0");
      }
    }
    if (!(sink_rate >= 0.0) || !std::isfinite(sink_rate)) {
      fail("sink_rate: must be finite and >= 0");
    }
    if (!std::isfinite(t_max)) fail("t_max: must be finite");
    if (integrator.samples < 2) fail("integrator.samples: must be >= 2");
    if (!(integrator.dt >= 0.0) || !std::isfinite(integrator.dt)) {
      fail("integrator.dt: must be finite and >= 0 (0 selects the default)");
    }
    if (t_max > 0.0 && integrator.dt > t_max) {
      fail("integrator.dt: must not exceed t_max");
    }
    for (double tol : {integrator.trace_tolerance, integrator.hermiticity_tolerance,
                       integrator.positivity_tolerance, integrator.halving_tolerance}) {
      if (!(tol > 0.0)) fail("integrator: tolerances must be positive");
    }
  }
};

// One row of records.csv. Field order is the CSV column order; wall_time is
// kept out of the CSV so that records are byte-reproducible.
struct ResultRecord {
  std::string graph_id;
  std::uint64_t graph_seed = 0;
  std::size_t num_vertices = 0;
  std::string target;
  std::size_t target_index = 0;
  double omega = 0.0;
  double gamma = 0.0;
  double sink_rate = 0.0;
  double t_max = 0.0;
  double dt = 0.0;
  double efficiency = 0.0;
  double peak_success = 0.0;
  double peak_success_time = 0.0;
  double entropy_peak_time = 0.0;
  double entropy_peak = 0.0;
  double final_coherence = 0.0;
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  // Largest one-step drop of the sink population.
  double max_sink_decrease = 0.0;
  // Largest increase of the l1 coherence between consecutive samples.
  double max_coherence_increase = 0.0;
  // max_t |tr rho(t)^2 - tr rho(0)^2|
  double max_purity_drift = 0.0;
  bool error = false;
  std::string message;
  double wall_time = 0.0;
};

struct PointSpec {
  TargetSelector target;
  double omega = 0.0;
  double gamma = 0.0;
};

// Stable identifier of a grid point, used for series file names.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

inline std::string point_id(const std::string& graph_id, const PointSpec& p) {
  return graph_id + "__" + p.target.id() + "__w" + format_number(p.omega) + "_g" +
         format_number(p.gamma);
}

inline std::string point_id(const ResultRecord& r) {
  return r.graph_id + "__" + r.target + "__w" + format_number(r.omega) + "_g" +
         format_number(r.gamma);
}

namespace detail {

inline void summarize(ResultRecord& rec, const Trajectory& traj) {
  rec.efficiency = transfer_efficiency(traj);
  const Peak success = peak_success_probability(traj);
  rec.peak_success = success.value;
  rec.peak_success_time = success.time;
  const Peak entropy = entropy_peak_time(series(traj, SeriesKind::entropy));
  rec.entropy_peak_time = entropy.time;
  rec.entropy_peak = entropy.value;
  rec.final_coherence = traj.coherence.back();
  rec.max_trace_drift = traj.diagnostics.max_trace_drift;
  rec.min_eigenvalue = traj.diagnostics.min_eigenvalue;
  rec.max_sink_decrease = traj.diagnostics.max_sink_decrease;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    rec.max_coherence_increase = std::max(rec.max_coherence_increase,
                                          traj.coherence[i] - traj.coherence[i - 1]);
  }
  for (double p : traj.purity) {
    rec.max_purity_drift = std::max(rec.max_purity_drift, std::abs(p - traj.purity.front()));
  }
}

}  // namespace detail

// Runs one grid point on an already generated graph. Guard failures are
// reported through the record's error flag; configuration problems throw.
inline ResultRecord run_point(const SweepConfig& cfg, const Graph& g,
                              const PointSpec& p, Trajectory* keep = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  const FamilySpec spec = cfg.resolved_graph_spec();
  ResultRecord rec;
  rec.graph_id = spec.id();
  rec.graph_seed = spec.randomized() ? spec.seed : 0;
  rec.num_vertices = g.size();
  rec.target = p.target.id();
  rec.target_index = resolve_target(g, p.target);
  rec.omega = p.omega;
  rec.gamma = p.gamma;
  rec.sink_rate = cfg.sink_rate;
  rec.t_max = cfg.resolved_t_max(g.size());

  const SearchInstance inst(g, rec.target_index, p.omega, p.gamma, cfg.sink_rate,
                            cfg.model);
  IntegratorConfig icfg = cfg.integrator;
  icfg.t_max = rec.t_max;
  rec.dt = icfg.resolved_dt(inst);
  try {
    Trajectory traj = integrate(inst, icfg);
    detail::summarize(rec, traj);
    if (keep) {
      traj.final_state.resize(0, 0);
      *keep = std::move(traj);
    }
  } catch (const NumericalInstabilityError& e) {
    rec.error = true;
    rec.message = e.what();
    rec.efficiency = std::numeric_limits<double>::quiet_NaN();
  }
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

// Single-point form: cfg must hold exactly one target, omega and gamma.
inline ResultRecord run_point(const SweepConfig& cfg) {
  cfg.validate();
  if (cfg.targets.size() != 1 || cfg.omegas.size() != 1 || cfg.gammas.size() != 1) {
    throw ConfigError("run_point needs exactly one target, omega and gamma");
  }
  const Graph g = generate(cfg.resolved_graph_spec());
  return run_point(cfg, g, {cfg.targets[0], cfg.omegas[0], cfg.gammas[0]});
}

struct SweepResult {
  FamilySpec graph_spec;
  Graph graph;
  std::vector<ResultRecord> records;
  // Aligned with records when record_series is set, empty otherwise.
  std::vector<Trajectory> series;
  double wall_time = 0.0;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(
        records.begin(), records.end(), [](const ResultRecord& r) { return r.error; }));
  }
};

inline std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Cartesian product targets x omegas x gammas on a worker pool. Output is
// sorted by (target index, target, omega, gamma) independent of scheduling.
inline SweepResult run_sweep(const SweepConfig& cfg, std::size_t workers = 1) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  SweepResult out;
  out.graph_spec = cfg.resolved_graph_spec();
  out.graph = generate(out.graph_spec);

  std::vector<PointSpec> points;
  for (const auto& target : cfg.targets) {
    resolve_target(out.graph, target);  // config errors surface before any work
    for (double omega : cfg.omegas) {
      for (double gamma : cfg.gammas) points.push_back({target, omega, gamma});
    }
  }

  std::vector<ResultRecord> records(points.size());
  std::vector<Trajectory> series(cfg.record_series ? points.size() : 0);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        records[i] = run_point(cfg, out.graph, points[i],
                               cfg.record_series ? &series[i] : nullptr);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next = points.size();
      }
    }
  };
  const std::size_t pool = std::min(resolve_workers(workers), points.size());
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(pool);
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = records[a];
    const auto& y = records[b];
    if (x.target_index != y.target_index) return x.target_index < y.target_index;
    if (x.target != y.target) return x.target < y.target;
    if (x.omega != y.omega) return x.omega < y.omega;
    return x.gamma < y.gamma;
  });
  out.records.reserve(order.size());
  for (std::size_t i : order) out.records.push_back(std::move(records[i]));
  if (cfg.record_series) {
    out.series.reserve(order.size());
    for (std::size_t i : order) out.series.push_back(std::move(series[i]));
  }
  out.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------------------
// CSV output

namespace detail {

inline std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace detail

inline constexpr const char* kRecordColumns =
    "graph_id,graph_seed,num_vertices,target,target_index,omega,gamma,sink_rate,"
    "t_max,dt,efficiency,peak_success,peak_success_time,entropy_peak_time,"
    "entropy_peak,final_coherence,max_trace_drift,min_eigenvalue,"
    "max_sink_decrease,max_coherence_increase,max_purity_drift,error,message";

inline void write_records_csv(std::ostream& os, const std::vector<ResultRecord>& records) {
  using detail::csv_number;
  os << kRecordColumns << '\n';
  for (const auto& r : records) {
    os << detail::csv_text(r.graph_id) << ',' << r.graph_seed << ',' << r.num_vertices
       << ',' << detail::csv_text(r.target) << ',' << r.target_index << ','
       << csv_number(r.omega) << ',' << csv_number(r.gamma) << ','
       << csv_number(r.sink_rate) << ',' << csv_number(r.t_max) << ','
       << csv_number(r.dt) << ',' << csv_number(r.efficiency) << ','
       << csv_number(r.peak_success) << ',' << csv_number(r.peak_success_time) << ','
       << csv_number(r.entropy_peak_time) << ',' << csv_number(r.entropy_peak) << ','
       << csv_number(r.final_coherence) << ',' << csv_number(r.max_trace_drift) << ','
       << csv_number(r.min_eigenvalue) << ',' << csv_number(r.max_sink_decrease) << ','
       << csv_number(r.max_coherence_increase) << ','
       << csv_number(r.max_purity_drift) << ',' << (r.error ? 1 : 0) << ','
       << detail::csv_text(r.message) << '\n';
  }
}

inline constexpr const char* kSeriesColumns = "t,sink_pop,target_pop,entropy,coherence";

inline void write_series_csv(std::ostream& os, const Trajectory& traj) {
  using detail::csv_number;
  os << kSeriesColumns << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << csv_number(traj.times[i]) << ',' << csv_number(traj.sink_pop[i]) << ','
       << csv_number(traj.target_pop[i]) << ',' << csv_number(traj.entropy[i]) << ','
       << csv_number(traj.coherence[i]) << '\n';
  }
}

// ---------------------------------------------------------------------------
// No-sink success-probability grids

struct NoSinkPanel {
  std::string target;
  std::size_t target_index = 0;
  double omega = 0.0;
  // probability[g][k] = <m|rho(times[k])|m> at gammas[g].
  std::vector<std::vector<double>> probability;
};

struct NoSinkGrid {
  std::string graph_id;
  std::vector<double> gammas;
  std::vector<double> times;
  std::vector<NoSinkPanel> panels;
  SweepResult sweep;
};

inline NoSinkGrid run_no_sink_grid(const SweepConfig& cfg, std::size_t workers = 1) {
  if (cfg.sink_rate != 0.0) {
    throw ConfigError("sink_rate: the no-sink grid requires sink_rate = 0");
  }
  SweepConfig run = cfg;
  run.record_series = true;
  NoSinkGrid out;
  out.sweep = run_sweep(run, workers);
  out.graph_id = out.sweep.graph_spec.id();
  out.gammas = cfg.gammas;
  if (!out.sweep.series.empty()) out.times = out.sweep.series.front().times;
  const auto& recs = out.sweep.records;
  const std::size_t ng = cfg.gammas.size();
  for (std::size_t i = 0; i < recs.size(); i += ng) {
    NoSinkPanel panel{recs[i].target, recs[i].target_index, recs[i].omega, {}};
    // records are sorted by gamma inside each (target, omega) block
    std::vector<std::size_t> idx(ng);
    std::iota(idx.begin(), idx.end(), i);
    for (double gamma : cfg.gammas) {
      const auto it = std::find_if(idx.begin(), idx.end(), [&](std::size_t j) {
        return recs[j].gamma == gamma;
      });
      panel.probability.push_back(out.sweep.series[*it].target_pop);
    }
    out.panels.push_back(std::move(panel));
  }
  return out;
}

inline void write_heatmap_csv(std::ostream& os, const NoSinkGrid& grid) {
  using detail::csv_number;
  os << "target,omega,gamma,t,success_probability\n";
  for (const auto& panel : grid.panels) {
    for (std::size_t g = 0; g < grid.gammas.size(); ++g) {
      for (std::size_t k = 0; k < grid.times.size(); ++k) {
        os << detail::csv_text(panel.target) << ',' << csv_number(panel.omega) << ','
           << csv_number(grid.gammas[g]) << ',' << csv_number(grid.times[k]) << ','
           << csv_number(panel.probability[g][k]) << '\n';
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Ring-lattice study: one sweep per k plus the target's metric profile.

struct RingLatticeStudy {
  std::size_t n = 0;
  std::vector<RingLatticeMetrics> profile;
  std::vector<SweepResult> sweeps;

  std::vector<ResultRecord> records() const {
    std::vector<ResultRecord> out;
    for (const auto& s : sweeps) out.insert(out.end(), s.records.begin(), s.records.end());
    return out;
  }
};

// `base` supplies the grids, sink rate, integrator and targets; its graph is
// replaced by ring_lattice(n, k) for every k.
inline RingLatticeStudy ring_lattice_study(std::size_t n, const std::vector<std::size_t>& ks,
                                           const SweepConfig& base,
                                           std::size_t workers = 1) {
  if (ks.empty()) throw ConfigError("ks: must not be empty");
  RingLatticeStudy out;
  out.n = n;
  for (std::size_t k : ks) {
    if (k < 2 || k > n) {
      throw ConfigError("ks: k = " + std::to_string(k) + " must lie in [2, " +
                        std::to_string(n) + "]");
    }
  }
  out.profile = ring_lattice_profile(n, ks);
  for (std::size_t k : ks) {
    SweepConfig cfg = base;
    cfg.graph = FamilySpec::ring_lattice(n, k);
    out.sweeps.push_back(run_sweep(cfg, workers));
  }
  return out;
}

inline void write_profile_csv(std::ostream& os, const std::vector<RingLatticeMetrics>& profile) {
  os << "k,eccentricity,degree_centrality\n";
  for (const auto& p : profile) {
    os << p.k << ',' << p.eccentricity << ',' << detail::csv_number(p.degree_centrality)
       << '\n';
  }
}

// ---------------------------------------------------------------------------
// Graph-metric table

struct MetricRow {
  std::string graph;  // display name
  FamilySpec spec;
  TargetSelector target;
};

struct MetricRecord {
  std::string graph;
  std::string graph_id;
  std::size_t size = 0;
  double density = 0.0;
  std::string target;
  Vertex vertex = 0;
  double degree_centrality = 0.0;
  std::size_t eccentricity = 0;
};

// Truncates (not rounds) to `places` decimals, the convention of the
// metric table (e.g. 2/64 -> 0.0312, 31/63 -> 0.4920).
inline double truncate_decimals(double x, int places) {
  const double scale = std::pow(10.0, places);
  return std::floor(x * scale + 1e-9) / scale;
}

inline std::string fixed_decimals(double x, int places) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", places, truncate_decimals(x, places));
  return buf;
}

inline std::vector<MetricRow> table1_rows() {
  return {
      {"Complete", FamilySpec::complete(64), TargetSelector::at(0)},
      {"Cycle", FamilySpec::cycle(64), TargetSelector::at(0)},
      {"Hypercube", FamilySpec::hypercube(6), TargetSelector::at(0)},
      {"Grid", FamilySpec::grid(9, 9), TargetSelector::named("center")},
      {"Grid", FamilySpec::grid(9, 9), TargetSelector::named("border")},
      {"Star", FamilySpec::star(64), TargetSelector::named("center")},
      {"Star", FamilySpec::star(64), TargetSelector::named("border")},
      {"Wheel", FamilySpec::wheel(64), TargetSelector::named("center")},
      {"Wheel", FamilySpec::wheel(64), TargetSelector::named("border")},
      {"PerfectBinaryTree", FamilySpec::perfect_binary_tree(5), TargetSelector::named("root")},
      {"PerfectBinaryTree", FamilySpec::perfect_binary_tree(5), TargetSelector::at_depth(3)},
      {"PerfectBinaryTree", FamilySpec::perfect_binary_tree(5), TargetSelector::named("leaf")},
      {"Path", FamilySpec::path(65), TargetSelector::named("center")},
      {"Path", FamilySpec::path(65), TargetSelector::named("border")},
      {"Lollipop", FamilySpec::lollipop(32, 32), TargetSelector::named("complete")},
      {"Lollipop", FamilySpec::lollipop(32, 32), TargetSelector::named("shared")},
      {"Lollipop", FamilySpec::lollipop(32, 32), TargetSelector::named("path")},
      {"Tadpole", FamilySpec::tadpole(32, 32), TargetSelector::named("cycle")},
      {"Tadpole", FamilySpec::tadpole(32, 32), TargetSelector::named("shared")},
      {"Tadpole", FamilySpec::tadpole(32, 32), TargetSelector::named("path")},
      {"SmallWorld", FamilySpec::glued_small_world(1), TargetSelector::named("HC")},
      {"SmallWorld", FamilySpec::glued_small_world(1), TargetSelector::named("IC")},
      {"SmallWorld", FamilySpec::glued_small_world(1), TargetSelector::named("LC")},
      {"Maze", FamilySpec::maze(9, 9, 1), TargetSelector::named("exit")},
  };
}

inline std::vector<MetricRecord> table1_report(const std::vector<MetricRow>& rows) {
  std::vector<MetricRecord> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const Graph g = generate(row.spec);
    const Vertex v = resolve_target(g, row.target);
    out.push_back({row.graph, row.spec.id(), g.size(), density(g), row.target.id(), v,
                   degree_centrality(g, v), eccentricity(g, v)});
  }
  return out;
}

inline void write_metrics_csv(std::ostream& os, const std::vector<MetricRecord>& rows) {
  using detail::csv_number;
  os << "graph,graph_id,size,density,density_4dp,target,vertex,degree_centrality,"
        "degree_centrality_4dp,eccentricity\n";
  for (const auto& r : rows) {
    os << detail::csv_text(r.graph) << ',' << r.graph_id << ',' << r.size << ','
       << csv_number(r.density) << ',' << fixed_decimals(r.density, 4) << ','
       << detail::csv_text(r.target) << ',' << r.vertex << ','
       << csv_number(r.degree_centrality) << ',' << fixed_decimals(r.degree_centrality, 4)
       << ',' << r.eccentricity << '\n';
  }
}

// Aligned plain-text rendering.
inline std::string render_metrics_text(const std::vector<MetricRecord>& rows) {
  std::vector<std::vector<std::string>> cells{
      {"graph", "size", "density", "target", "vertex", "centrality", "eccentricity"}};
  for (const auto& r : rows) {
    cells.push_back({r.graph, std::to_string(r.size), fixed_decimals(r.density, 4),
                     r.target, std::to_string(r.vertex),
                     fixed_decimals(r.degree_centrality, 4),
                     std::to_string(r.eccentricity)});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream os;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << line[c];
      if (c + 1 < line.size()) os << std::string(width[c] - line[c].size() + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Presets

enum class PresetKind { sweep, no_sink, ring_lattice, metrics };

inline std::string_view to_string(PresetKind k) {
  switch (k) {
    case PresetKind::sweep: return "sweep";
    case PresetKind::no_sink: return "no-sink";
    case PresetKind::ring_lattice: return "ring-lattice";
    case PresetKind::metrics: return "metrics";
  }
  return "?";
}

struct Preset {
  std::string name;
  std::string figure;
  std::string description;
  PresetKind kind = PresetKind::sweep;
  SweepConfig config;
  // ring_lattice only
  std::size_t ring_n = 0;
  std::vector<std::size_t> ring_ks;
};

namespace detail {

inline std::vector<TargetSelector> tags(std::initializer_list<const char*> names) {
  std::vector<TargetSelector> out;
  for (const char* n : names) out.push_back(TargetSelector::parse(n));
  return out;
}

inline Preset sweep_preset(std::string name, std::string figure, std::string description,
                           FamilySpec spec, std::vector<TargetSelector> targets = {
                                                TargetSelector::at(0)}) {
  Preset p;
  p.name = std::move(name);
  p.figure = std::move(figure);
  p.description = std::move(description);
  p.config.graph = spec;
  p.config.targets = std::move(targets);
  if (spec.randomized()) p.config.seed = 1;
  return p;
}

// Roughly half the vertex count of the same family.
inline FamilySpec halve(FamilySpec s) {
  switch (s.family) {
    case Family::hypercube: s.d = s.d > 1 ? s.d - 1 : s.d; break;
    case Family::perfect_binary_tree: s.d = s.d > 1 ? s.d - 1 : s.d; break;
    case Family::grid:
    case Family::maze:
      s.rows = std::max<std::size_t>(2, (s.rows * 2 + 2) / 3);
      s.cols = std::max<std::size_t>(2, (s.cols * 2 + 2) / 3);
      break;
    case Family::tadpole:
    case Family::lollipop:
      s.m = std::max<std::size_t>(3, s.m / 2);
      s.n = std::max<std::size_t>(1, s.n / 2);
      break;
    case Family::path: s.n = s.n / 2 + 1; break;
    case Family::watts_strogatz:
    case Family::glued_small_world:
    case Family::ring_lattice:
    default: s.n = std::max<std::size_t>(4, s.n / 2); break;
  }
  return s;
}

}  // namespace detail

// Full-size presets, one per reproduced figure.
inline std::vector<Preset> full_presets() {
  using detail::sweep_preset;
  using detail::tags;
  std::vector<Preset> out;
  out.push_back(sweep_preset("fig2-complete", "Fig. 2", "complete graph K_64",
                             FamilySpec::complete(64)));
  {
    Preset p = sweep_preset("fig2-hypercube", "Fig. 2", "hypercube Q_6",
                            FamilySpec::hypercube(6));
    p.config.gammas = {0.0, 0.1, 0.3, 0.43, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0};
    out.push_back(p);
  }
  out.push_back(sweep_preset("fig2-cycle", "Fig. 2", "cycle C_64", FamilySpec::cycle(64)));
  out.push_back(sweep_preset("fig2-path", "Fig. 2", "path P_65, center and border targets",
                             FamilySpec::path(65), tags({"center", "border"})));
  out.push_back(sweep_preset("fig2-maze", "Fig. 2", "9x9 DFS maze, exit target",
                             FamilySpec::maze(9, 9, 1), tags({"exit"})));
  out.push_back(sweep_preset("fig2-tadpole", "Fig. 2",
                             "tadpole T_32,32, cycle/shared/path targets",
                             FamilySpec::tadpole(32, 32), tags({"cycle", "shared", "path"})));
  {
    Preset p = sweep_preset("fig4-entropy", "Fig. 4",
                            "entropy series on K_64 (series output enabled)",
                            FamilySpec::complete(64));
    p.config.gammas = {0.0, 0.5, 1.0, 2.0, 5.0};
    p.config.record_series = true;
    out.push_back(p);
  }
  {
    Preset p = sweep_preset("fig4-cycle", "Fig. 4", "entropy series on C_64",
                            FamilySpec::cycle(64));
    p.config.gammas = {0.0, 0.5, 1.0, 2.0, 5.0};
    p.config.record_series = true;
    out.push_back(p);
  }
  {
    Preset p = sweep_preset("fig5-ts", "Fig. 5", "entropy peak time t_S versus gamma on K_64",
                            FamilySpec::complete(64));
    p.config.gammas = {0.0, 0.1, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0};
    p.config.omegas = {0.0, 0.1, 0.2, 0.5, 1.0};
    out.push_back(p);
  }
  {
    Preset p = sweep_preset("fig5-ts-hypercube", "Fig. 5",
                            "entropy peak time t_S versus gamma on Q_6",
                            FamilySpec::hypercube(6));
    p.config.gammas = {0.0, 0.1, 0.3, 0.43, 0.5, 0.75, 1.0, 2.0, 5.0};
    p.config.omegas = {0.0, 0.1, 0.2, 0.5, 1.0};
    out.push_back(p);
  }
  for (auto [name, spec, label] :
       {std::tuple{"figA-complete", FamilySpec::complete(64), "K_64"},
        std::tuple{"figA-hypercube", FamilySpec::hypercube(6), "Q_6"},
        std::tuple{"figA-cycle", FamilySpec::cycle(64), "C_64"}}) {
    Preset p = sweep_preset(name, "Figs. A1-A3",
                            std::string("no-sink success probability heatmaps on ") + label,
                            spec);
    p.kind = PresetKind::no_sink;
    p.config.sink_rate = 0.0;
    p.config.record_series = true;
    out.push_back(p);
  }
  out.push_back(sweep_preset("figB-lollipop", "Fig. 6", "lollipop L_32,32",
                             FamilySpec::lollipop(32, 32),
                             tags({"complete", "shared", "path"})));
  out.push_back(sweep_preset("figB-star", "Fig. 6", "star S_63", FamilySpec::star(64),
                             tags({"center", "border"})));
  out.push_back(sweep_preset("figB-wheel", "Fig. 6", "wheel W_64", FamilySpec::wheel(64),
                             tags({"center", "border"})));
  out.push_back(sweep_preset("figB-grid", "Fig. 6", "9x9 grid", FamilySpec::grid(9, 9),
                             tags({"center", "border"})));
  out.push_back(sweep_preset("figB-pbt", "Fig. 6", "perfect binary tree of depth 5",
                             FamilySpec::perfect_binary_tree(5),
                             tags({"root", "depth3", "leaf"})));
  out.push_back(sweep_preset("figB-smallworld", "Figs. 6-7",
                             "three glued Watts-Strogatz components of 22 vertices",
                             FamilySpec::glued_small_world(1), tags({"HC", "IC", "LC"})));
  {
    Preset p = sweep_preset("figB-ring", "Figs. 8-9",
                            "ring lattices N=32 for k = 2..32 plus metric profile",
                            FamilySpec::ring_lattice(32, 2));
    p.kind = PresetKind::ring_lattice;
    p.ring_n = 32;
    for (std::size_t k = 2; k <= 32; k += 2) p.ring_ks.push_back(k);
    out.push_back(p);
  }
  {
    Preset p = sweep_preset("table1-metrics", "Table I",
                            "density, degree centrality and eccentricity per target",
                            FamilySpec::complete(64));
    p.kind = PresetKind::metrics;
    out.push_back(p);
  }
  return out;
}

// Desk-scale variant: vertex count roughly halved, t = 10 N.
inline Preset desk_variant(Preset p) {
  p.name += "-desk";
  p.config.graph = detail::halve(p.config.graph);
  p.config.t_max = 0.0;
  if (p.kind == PresetKind::ring_lattice) {
    p.ring_n /= 2;
    p.ring_ks.clear();
    for (std::size_t k = 2; k <= p.ring_n; k += 2) p.ring_ks.push_back(k);
    p.config.graph = FamilySpec::ring_lattice(p.ring_n, 2);
    p.description = "ring lattices N=" + std::to_string(p.ring_n) + " for k = 2.." +
                    std::to_string(p.ring_n) + " plus metric profile";
  }
  p.description += " [desk scale: " + p.config.graph.id() + "]";
  return p;
}

inline std::vector<Preset> presets() {
  std::vector<Preset> out;
  for (const auto& p : full_presets()) {
    out.push_back(p);
    if (p.kind != PresetKind::metrics) out.push_back(desk_variant(p));
  }
  return out;
}

inline std::optional<Preset> find_preset(std::string_view name) {
  for (auto& p : presets()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace sqws
