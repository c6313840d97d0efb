#pragma once

// Time evolution: fixed-step RK4 with guards, an exact dense-Liouvillian
// propagator for small systems, and the classical absorbing random walk.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#if defined(__SSE__) || defined(_M_X64)
#include <xmmintrin.h>
#define SQWS_HAS_MXCSR 1
#endif

#include "sqws/error.hpp"
#include "sqws/observables.hpp"
#include "sqws/operators.hpp"
#include "sqws/trajectory.hpp"

namespace sqws {

enum class IntegratorMethod { rk4_fixed, rk4_halving_check };

struct IntegratorConfig {
  // dt <= 0 selects default_dt() for the instance.
  double dt = 0.0;
  double t_max = 1.0;
  std::size_t samples = 1024;
  IntegratorMethod method = IntegratorMethod::rk4_fixed;
  double trace_tolerance = 1e-8;
  double hermiticity_tolerance = 1e-10;
  double positivity_tolerance = 1e-8;
  double halving_tolerance = 1e-6;
  bool keep_states = false;

  // Generator norm grows with gamma and the sink rate.
  static double default_dt(double gamma, double sink_rate) {
    return std::min(0.01, 0.1 / (1.0 + gamma + sink_rate));
  }

  double resolved_dt(const SearchInstance& inst) const {
    return dt > 0.0 ? dt : default_dt(inst.gamma(), inst.sink_rate());
  }

  void validate() const {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
      throw ParameterError("t_max must be positive");
    }
    if (dt > t_max) throw ParameterError("dt must not exceed t_max");
    if (samples < 2) throw ParameterError("samples must be >= 2");
    if (!std::isfinite(dt)) throw ParameterError("dt must be finite");
  }
};

namespace detail {

// Coherences decay exponentially under the dissipator and would otherwise
// spend most of a long run in subnormal arithmetic. Flushes subnormals to
// zero for the lifetime of the guard on the current thread.
class FlushDenormals {
 public:
#ifdef SQWS_HAS_MXCSR
  FlushDenormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040u); }
  ~FlushDenormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#else
  FlushDenormals() = default;
#endif
  FlushDenormals(const FlushDenormals&) = delete;
  FlushDenormals& operator=(const FlushDenormals&) = delete;
};

inline void record_sample(Trajectory& traj, const DensityMatrix& rho, double t,
                          Eigen::Index marked, Eigen::Index sink,
                          const IntegratorConfig& cfg) {
  const double herm = hermiticity_error(rho);
  traj.diagnostics.max_hermiticity_error =
      std::max(traj.diagnostics.max_hermiticity_error, herm);
  if (herm > cfg.hermiticity_tolerance) {
    throw NumericalInstabilityError(
        "hermiticity error " + std::to_string(herm) + " exceeds tolerance", t);
  }
  const Eigen::VectorXd lambdas = state_eigenvalues(rho);
  const double min_eig = lambdas.minCoeff();
  traj.diagnostics.min_eigenvalue = std::min(traj.diagnostics.min_eigenvalue, min_eig);
  if (min_eig < -cfg.positivity_tolerance) {
    throw NumericalInstabilityError(
        "negative eigenvalue " + std::to_string(min_eig) + " of the state", t);
  }
  traj.times.push_back(t);
  traj.sink_pop.push_back(rho(sink, sink).real());
  traj.target_pop.push_back(rho(marked, marked).real());
  traj.entropy.push_back(entropy_from_eigenvalues(lambdas));
  traj.coherence.push_back(l1_coherence(rho));
  traj.purity.push_back(purity(rho));
  if (cfg.keep_states) traj.states.push_back(rho);
}

inline Trajectory integrate_rk4(const SearchInstance& inst,
                                const SqwsGenerator& gen,
                                const IntegratorConfig& cfg, double dt) {
  const Eigen::Index marked = static_cast<Eigen::Index>(inst.marked());
  const Eigen::Index sink = static_cast<Eigen::Index>(inst.sink());
  const Eigen::Index d = inst.dim();
  const FlushDenormals ftz;

  Trajectory traj;
  traj.metadata = {inst.num_vertices(), inst.marked(), inst.omega(),
                   inst.gamma(), inst.sink_rate(), dt, cfg.t_max};
  traj.times.reserve(cfg.samples);

  // State kept stacked as z = [re; im] with rho = re + i im.
  DensityMatrix rho = initial_state(inst.graph());
  RealMatrix z(2 * d, d);
  z.topRows(d) = rho.real();
  z.bottomRows(d) = rho.imag();
  RealMatrix k1(2 * d, d), k2(2 * d, d), k3(2 * d, d), k4(2 * d, d), tmp(2 * d, d);
  SqwsGenerator::Workspace ws;

  record_sample(traj, rho, 0.0, marked, sink, cfg);

  const double interval = cfg.t_max / static_cast<double>(cfg.samples - 1);
  const auto substeps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(interval / dt - 1e-9)));
  const double h = interval / static_cast<double>(substeps);
  double previous_sink = z(sink, sink);
  double t = 0.0;

  for (std::size_t sample = 1; sample < cfg.samples; ++sample) {
    for (std::size_t step = 0; step < substeps; ++step) {
      gen.apply_split(z, k1, ws);
      tmp = z + (0.5 * h) * k1;
      gen.apply_split(tmp, k2, ws);
      tmp = z + (0.5 * h) * k2;
      gen.apply_split(tmp, k3, ws);
      tmp = z + h * k3;
      gen.apply_split(tmp, k4, ws);
      z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ++traj.diagnostics.steps;
      t = (static_cast<double>(sample - 1) +
           static_cast<double>(step + 1) / static_cast<double>(substeps)) *
          interval;

      // The trace is never renormalized.
      const double drift = std::abs(z.topRows(d).trace() - 1.0);
      traj.diagnostics.max_trace_drift =
          std::max(traj.diagnostics.max_trace_drift, drift);
      if (drift > cfg.trace_tolerance || !std::isfinite(drift)) {
        throw NumericalInstabilityError(
            "trace drift " + std::to_string(drift) + " exceeds tolerance", t);
      }
      const double sink_pop = z(sink, sink);
      traj.diagnostics.max_sink_decrease =
          std::max(traj.diagnostics.max_sink_decrease, previous_sink - sink_pop);
      previous_sink = sink_pop;
    }
    const double t_sample = static_cast<double>(sample) * interval;
    rho.real() = z.topRows(d);
    rho.imag() = z.bottomRows(d);
    record_sample(traj, rho, t_sample, marked, sink, cfg);
  }
  traj.final_state = std::move(rho);
  return traj;
}

// Purely coherent runs (omega = 0). Plain RK4 damps the fast coherences at
// frequency ~gamma and breaks positivity of an almost pure state, so this
// path uses integrating-factor RK4 in the eigenbasis of H restricted to V:
// the commutator is carried exactly as phases and RK4 only sees the sink
// dissipator. Coherences between V and the sink start at zero and stay zero,
// so the state is the V block u (eigenbasis) plus the sink population s.
inline Trajectory integrate_coherent(const SearchInstance& inst,
                                     const IntegratorConfig& cfg, double dt) {
  const Eigen::Index marked = static_cast<Eigen::Index>(inst.marked());
  const Eigen::Index sink = static_cast<Eigen::Index>(inst.sink());
  const Eigen::Index d = inst.dim();
  const Eigen::Index n = d - 1;
  const double rate = inst.sink_rate();
  const FlushDenormals ftz;

  Trajectory traj;
  traj.metadata = {inst.num_vertices(), inst.marked(), inst.omega(),
                   inst.gamma(), inst.sink_rate(), dt, cfg.t_max};
  traj.times.reserve(cfg.samples);

  const Eigen::SelfAdjointEigenSolver<RealMatrix> eig(
      search_hamiltonian(inst).topLeftCorner(n, n));
  const RealMatrix& basis = eig.eigenvectors();
  const Eigen::VectorXd& energy = eig.eigenvalues();
  const Eigen::VectorXcd v = basis.row(marked).transpose().cast<Complex>();

  DensityMatrix rho = initial_state(inst.graph());
  ComplexMatrix u = (basis.transpose() * RealMatrix(rho.real().topLeftCorner(n, n)) * basis).cast<Complex>();
  double s = rho(sink, sink).real();

  const double interval = cfg.t_max / static_cast<double>(cfg.samples - 1);
  const auto substeps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(interval / dt - 1e-9)));
  const double h = interval / static_cast<double>(substeps);

  ComplexMatrix half(n, n), full(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) {
      const double w = -(1.0 - inst.omega()) * (energy(a) - energy(b));
      half(a, b) = std::polar(1.0, 0.5 * h * w);
      full(a, b) = std::polar(1.0, h * w);
    }
  }

  // Sink dissipator in the eigenbasis: du = -rate/2 (v v^T u + u v v^T),
  // ds = rate v^T u v.
  ComplexMatrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), stage(n, n), base(n, n);
  auto dissipate = [&](const ComplexMatrix& x, ComplexMatrix& out) -> double {
    const Eigen::RowVectorXcd r = v.transpose() * x;
    const Eigen::VectorXcd q = x * v;
    out.noalias() = (-0.5 * rate) * (v * r + q * v.transpose());
    return rate * (r * v).value().real();
  };
  auto to_site = [&](const ComplexMatrix& x, double sink_pop) {
    DensityMatrix out = DensityMatrix::Zero(d, d);
    out.real().topLeftCorner(n, n) = basis * x.real() * basis.transpose();
    out.imag().topLeftCorner(n, n) = basis * x.imag() * basis.transpose();
    out(sink, sink) = sink_pop;
    return out;
  };

  record_sample(traj, rho, 0.0, marked, sink, cfg);
  double t = 0.0;

  for (std::size_t sample = 1; sample < cfg.samples; ++sample) {
    for (std::size_t step = 0; step < substeps; ++step) {
      const double g1 = dissipate(u, k1);
      base = half.cwiseProduct(u);
      stage = base + half.cwiseProduct((0.5 * h) * k1);
      const double g2 = dissipate(stage, k2);
      stage = base + (0.5 * h) * k2;
      const double g3 = dissipate(stage, k3);
      stage = full.cwiseProduct(u) + half.cwiseProduct(h * k3);
      const double g4 = dissipate(stage, k4);
      u = full.cwiseProduct(u + (h / 6.0) * k1) +
          half.cwiseProduct((h / 3.0) * (k2 + k3)) + (h / 6.0) * k4;
      u = (0.5 * (u + u.adjoint())).eval();
      s += (h / 6.0) * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
      ++traj.diagnostics.steps;
      t = (static_cast<double>(sample - 1) +
           static_cast<double>(step + 1) / static_cast<double>(substeps)) *
          interval;

      const double drift = std::abs(u.trace().real() + s - 1.0);
      traj.diagnostics.max_trace_drift =
          std::max(traj.diagnostics.max_trace_drift, drift);
      if (drift > cfg.trace_tolerance || !std::isfinite(drift)) {
        throw NumericalInstabilityError(
            "trace drift " + std::to_string(drift) + " exceeds tolerance", t);
      }
      // Each sink increment is rate * <m|rho|m> >= 0 up to rounding.
      traj.diagnostics.max_sink_decrease = std::max(
          traj.diagnostics.max_sink_decrease,
          -(h / 6.0) * (g1 + 2.0 * g2 + 2.0 * g3 + g4));
    }
    const double t_sample = static_cast<double>(sample) * interval;
    rho = to_site(u, s);
    record_sample(traj, rho, t_sample, marked, sink, cfg);
  }
  traj.final_state = std::move(rho);
  return traj;
}

inline Trajectory integrate_path(const SearchInstance& inst,
                                 const IntegratorConfig& cfg, double dt) {
  if (inst.omega() == 0.0) return integrate_coherent(inst, cfg, dt);
  return integrate_rk4(inst, SqwsGenerator(inst), cfg, dt);
}

inline double max_series_delta(const Trajectory& a, const Trajectory& b) {
  double worst = 0.0;
  auto cmp = [&](const std::vector<double>& x, const std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      worst = std::max(worst, std::abs(x[i] - y[i]));
    }
  };
  cmp(a.sink_pop, b.sink_pop);
  cmp(a.target_pop, b.target_pop);
  cmp(a.entropy, b.entropy);
  cmp(a.coherence, b.coherence);
  return worst;
}

}  // namespace detail

// Fixed-step RK4 from the uniform initial state, stepping exactly onto each
// sample time (integrating-factor form when omega = 0). Throws
// NumericalInstabilityError when a guard trips.
inline Trajectory integrate(const SearchInstance& inst, const IntegratorConfig& cfg) {
  cfg.validate();
  const double dt = cfg.resolved_dt(inst);
  Trajectory traj = detail::integrate_path(inst, cfg, dt);
  if (cfg.method == IntegratorMethod::rk4_halving_check) {
    IntegratorConfig fine = cfg;
    fine.keep_states = false;
    const Trajectory refined = detail::integrate_path(inst, fine, 0.5 * dt);
    const double delta = detail::max_series_delta(traj, refined);
    traj.diagnostics.halving_delta = delta;
    if (delta > cfg.halving_tolerance) {
      throw NumericalInstabilityError(
          "halving dt changed observables by " + std::to_string(delta), cfg.t_max);
    }
  }
  return traj;
}

// <m|rho(t)|m>, integrating from rho(0) to t.
inline double success_probability(const SearchInstance& inst, double t,
                                  IntegratorConfig cfg = {}) {
  if (t == 0.0) return population(initial_state(inst.graph()), inst.marked());
  cfg.t_max = t;
  cfg.samples = 2;
  return integrate(inst, cfg).target_pop.back();
}

// ---------------------------------------------------------------------------
// Exact propagation via the dense Liouvillian superoperator.
//
// Column stacking: vec(A X B) = (B^T kron A) vec(X).

inline constexpr Eigen::Index kMaxExactDim = 12;

namespace detail {

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Adds rate * D[L] for the jump operator L.
inline void add_dissipator(ComplexMatrix& super, const ComplexMatrix& jump,
                           double weight) {
  const Eigen::Index d = jump.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix ldl = jump.adjoint() * jump;
  super += weight * (kron(jump.conjugate(), jump) - 0.5 * kron(id, ldl) -
                     0.5 * kron(ldl.transpose(), id));
}

}  // namespace detail

inline ComplexMatrix vectorize(const ComplexMatrix& m) {
  return m.reshaped(m.size(), 1);
}

inline ComplexMatrix unvectorize(const ComplexMatrix& v, Eigen::Index d) {
  return v.reshaped(d, d);
}

// Literal operator sum: one dissipator per jump, no closed-form shortcut.
inline ComplexMatrix liouvillian(const SearchInstance& inst) {
  const Eigen::Index d = inst.dim();
  if (d > kMaxExactDim) {
    throw CapacityError("dense Liouvillian limited to |V|+1 <= " +
                        std::to_string(kMaxExactDim) + ", got " + std::to_string(d));
  }
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix h = search_hamiltonian(inst).cast<Complex>();
  ComplexMatrix super =
      Complex(0.0, -(1.0 - inst.omega())) * (detail::kron(id, h) - detail::kron(h.transpose(), id));
  if (inst.omega() > 0.0) {
    for (const auto& jump : classical_jump_operators(inst)) {
      ComplexMatrix op = ComplexMatrix::Zero(d, d);
      op(static_cast<Eigen::Index>(jump.target), static_cast<Eigen::Index>(jump.source)) =
          jump.coefficient;
      detail::add_dissipator(super, op, inst.omega());
    }
  }
  if (inst.sink_rate() > 0.0) {
    ComplexMatrix op = ComplexMatrix::Zero(d, d);
    op(static_cast<Eigen::Index>(inst.sink()), static_cast<Eigen::Index>(inst.marked())) = 1.0;
    detail::add_dissipator(super, op, inst.sink_rate());
  }
  return super;
}

// rho(t) = unvec(exp(L t) vec(rho(0))), Pade scaling-and-squaring.
inline DensityMatrix exact_propagate(const SearchInstance& inst, double t) {
  if (!(t >= 0.0)) throw ParameterError("time must be nonnegative");
  const DensityMatrix rho0 = initial_state(inst.graph());
  const ComplexMatrix super = liouvillian(inst);
  if (t == 0.0) return rho0;
  const ComplexMatrix propagator = (super * Complex(t, 0.0)).exp();
  return unvectorize(propagator * vectorize(rho0), inst.dim());
}

// p(t) = exp(-L^ t) p(0) over V; the trailing sink entry stays 0.
inline Eigen::VectorXd classical_propagate(const Graph& g, Vertex m, double t) {
  if (!(t >= 0.0)) throw ParameterError("time must be nonnegative");
  const RealMatrix lhat = absorbing_laplacian(g, m);
  Eigen::VectorXd p = classical_initial_distribution(g);
  const auto n = static_cast<Eigen::Index>(g.size());
  if (t == 0.0) return p;
  const RealMatrix propagator = (-lhat * t).exp();
  p.head(n) = propagator * p.head(n);
  return p;
}

}  // namespace sqws
