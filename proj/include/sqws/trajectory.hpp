#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace sqws {

// Worst values seen by the integrator guards over one run.
struct GuardDiagnostics {
  double max_trace_drift = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double max_hermiticity_error = 0.0;
  // Largest one-step drop of the sink population (0 when monotone).
  double max_sink_decrease = 0.0;
  // Max change of any sampled observable when dt is halved; NaN if unchecked.
  double halving_delta = std::numeric_limits<double>::quiet_NaN();
  std::size_t steps = 0;
};

struct TrajectoryMetadata {
  std::size_t num_vertices = 0;
  std::size_t marked = 0;
  double omega = 0.0;
  double gamma = 0.0;
  double sink_rate = 0.0;
  double dt = 0.0;
  double t_max = 0.0;
};

// Observables sampled on a uniform grid over [0, t_max].
struct Trajectory {
  std::vector<double> times;
  std::vector<double> sink_pop;
  std::vector<double> target_pop;
  std::vector<double> entropy;
  std::vector<double> coherence;
  std::vector<double> purity;
  Eigen::MatrixXcd final_state;
  // Filled only when IntegratorConfig::keep_states is set.
  std::vector<Eigen::MatrixXcd> states;
  GuardDiagnostics diagnostics;
  TrajectoryMetadata metadata;

  std::size_t size() const noexcept { return times.size(); }
};

enum class SeriesKind { sink_pop, target_pop, entropy, coherence, efficiency_cumulative };

struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> values;
  SeriesKind kind = SeriesKind::entropy;
};

inline ObservableSeries series(const Trajectory& traj, SeriesKind kind) {
  ObservableSeries out{traj.times, {}, kind};
  switch (kind) {
    case SeriesKind::sink_pop: out.values = traj.sink_pop; break;
    case SeriesKind::target_pop: out.values = traj.target_pop; break;
    case SeriesKind::entropy: out.values = traj.entropy; break;
    case SeriesKind::coherence: out.values = traj.coherence; break;
    case SeriesKind::efficiency_cumulative: {
      // Running time average of the sink population (trapezoid).
      out.values.resize(traj.size(), 0.0);
      double integral = 0.0;
      for (std::size_t i = 1; i < traj.size(); ++i) {
        integral += 0.5 * (traj.sink_pop[i] + traj.sink_pop[i - 1]) *
                    (traj.times[i] - traj.times[i - 1]);
        out.values[i] = traj.times[i] > 0.0 ? integral / traj.times[i] : 0.0;
      }
      if (!out.values.empty() && traj.size() > 0) out.values[0] = traj.sink_pop[0];
      break;
    }
  }
  return out;
}

}  // namespace sqws
