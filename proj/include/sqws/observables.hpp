#pragma once

// Measured quantities: transfer efficiency, success probability, Von Neumann
// entropy, l1-norm coherence and the time of the entropy peak.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "sqws/error.hpp"
#include "sqws/operators.hpp"
#include "sqws/trajectory.hpp"

namespace sqws {

inline constexpr double kEigenvalueFloor = 1e-12;

inline double hermiticity_error(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols()) {
    throw ShapeError("density matrix must be square");
  }
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

inline Eigen::VectorXd state_eigenvalues(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

// -sum l ln l with l <= 1e-12 contributing nothing.
inline double entropy_from_eigenvalues(const Eigen::VectorXd& lambdas) {
  double s = 0.0;
  for (double l : lambdas) {
    if (l > kEigenvalueFloor) s -= l * std::log(l);
  }
  return std::max(s, 0.0);
}

inline double von_neumann_entropy(const ComplexMatrix& rho,
                                  double hermiticity_tolerance = 1e-10) {
  if (hermiticity_error(rho) > hermiticity_tolerance) {
    throw StateError("entropy of a non-Hermitian matrix");
  }
  return entropy_from_eigenvalues(state_eigenvalues(rho));
}

inline double l1_coherence(const ComplexMatrix& rho) {
  return rho.cwiseAbs().sum() - rho.diagonal().cwiseAbs().sum();
}

inline double purity(const ComplexMatrix& rho) {
  return rho.cwiseAbs2().sum();
}

inline double population(const ComplexMatrix& rho, Vertex v) {
  const auto i = static_cast<Eigen::Index>(v);
  return rho(i, i).real();
}

// (1/t_max) * integral of the sink population, composite trapezoid on the
// trajectory's sample grid.
inline double transfer_efficiency(const Trajectory& traj) {
  if (traj.size() < 2) {
    throw InputError("transfer efficiency needs at least 2 samples");
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    integral += 0.5 * (traj.sink_pop[i] + traj.sink_pop[i - 1]) *
                (traj.times[i] - traj.times[i - 1]);
  }
  const double span = traj.times.back() - traj.times.front();
  return span > 0.0 ? integral / span : traj.sink_pop.front();
}

struct Peak {
  double time;
  double value;
};

// Global maximum on the grid; first index wins ties.
inline Peak series_peak(std::span<const double> times,
                        std::span<const double> values) {
  if (values.empty() || times.size() != values.size()) {
    throw InputError("peak of an empty or mismatched series");
  }
  const auto it = std::max_element(values.begin(), values.end());
  const auto i = static_cast<std::size_t>(it - values.begin());
  return {times[i], *it};
}

inline Peak entropy_peak_time(const ObservableSeries& s) {
  if (s.kind != SeriesKind::entropy) {
    throw InputError("entropy_peak_time expects an entropy series");
  }
  return series_peak(s.times, s.values);
}

// <m|rho|m>; meaningful as a success probability on sink-free (G = 0) runs.
inline Peak peak_success_probability(const Trajectory& traj) {
  return series_peak(traj.times, traj.target_pop);
}

}  // namespace sqws
