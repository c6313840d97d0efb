#pragma once

// Generator terms of the stochastic quantum walk search master equation on
// the (|V|+1)-dimensional space spanned by the graph vertices and the sink:
//
//   drho/dt = (1-w) (-i[H, rho])
//           + w sum_ij (L_ij rho L_ij^+ - 1/2 {L_ij^+ L_ij, rho})
//           + G (|s><m| rho |m><s| - 1/2 {|m><m|, rho})
//
// with H = L/lambda_max - gamma |m><m| (or the complement I - L/lambda_max as
// the walk term) and L_ij rank-one jumps built
// from the absorbing Laplacian. The sink index is always |V|.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sqws/error.hpp"
#include "sqws/graph.hpp"

namespace sqws {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

enum class JumpConvention {
  all_entries,        // every nonzero L^_ij, diagonal terms dephase
  off_diagonal_only,  // drop i == j
};

// Walk term of the search Hamiltonian.
//   laplacian:  L/lambda_max (spectrum in [0, 1]); the oracle -gamma|m><m| is
//               resonant at gamma = 1 on K_N.
//   complement: I - L/lambda_max, the same spectrum reflected.
enum class WalkNormalization { laplacian, complement };

// Model conventions. Rates of the incoherent part are R_ij = |c_ij|^2. With
// `sqrt_rates` the coefficients are c_ij = sqrt(|L^_ij|), so the w = 1
// population dynamics coincide with the classical walk dp/dt = -L^ p.
// Without it c_ij = -L^_ij and the rates become (L^_ij)^2.
struct ModelOptions {
  WalkNormalization walk = WalkNormalization::laplacian;
  JumpConvention convention = JumpConvention::all_entries;
  bool sqrt_rates = true;

  friend bool operator==(const ModelOptions&, const ModelOptions&) = default;
};

class SearchInstance {
 public:
  SearchInstance(Graph graph, Vertex marked, double omega, double gamma,
                 double sink_rate, ModelOptions options = {})
      : graph_(std::move(graph)),
        marked_(marked),
        omega_(omega),
        gamma_(gamma),
        sink_rate_(sink_rate),
        options_(options) {
    if (!(omega >= 0.0 && omega <= 1.0)) {
      throw ParameterError("omega must lie in [0, 1], got " + std::to_string(omega));
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      throw ParameterError("gamma must be a finite nonnegative real, got " +
                           std::to_string(gamma));
    }
    if (!(sink_rate >= 0.0) || !std::isfinite(sink_rate)) {
      throw ParameterError("sink_rate must be a finite nonnegative real, got " +
                           std::to_string(sink_rate));
    }
    if (marked >= graph_.size()) {
      throw ParameterError("marked vertex " + std::to_string(marked) +
                           " out of range for |V| = " + std::to_string(graph_.size()));
    }
  }

  const Graph& graph() const noexcept { return graph_; }
  Vertex marked() const noexcept { return marked_; }
  double omega() const noexcept { return omega_; }
  double gamma() const noexcept { return gamma_; }
  double sink_rate() const noexcept { return sink_rate_; }
  const ModelOptions& options() const noexcept { return options_; }

  std::size_t num_vertices() const noexcept { return graph_.size(); }
  Vertex sink() const noexcept { return graph_.size(); }
  Eigen::Index dim() const noexcept {
    return static_cast<Eigen::Index>(graph_.size() + 1);
  }

  SearchInstance with(double omega, double gamma, double sink_rate) const {
    return {graph_, marked_, omega, gamma, sink_rate, options_};
  }

 private:
  Graph graph_;
  Vertex marked_;
  double omega_;
  double gamma_;
  double sink_rate_;
  ModelOptions options_;
};

// Largest singular value.
inline double spectral_norm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return svd.singularValues()(0);
}

// L/lambda_max (or its complement I - L/lambda_max) on V with L = D - A,
// embedded with a zero sink row and column.
inline RealMatrix normalized_walk_operator(
    const Graph& g, WalkNormalization mode = WalkNormalization::laplacian) {
  if (g.num_edges() == 0) {
    throw DegeneracyError("normalized walk operator needs at least one edge");
  }
  const auto n = static_cast<Eigen::Index>(g.size());
  const RealMatrix lap = g.laplacian();
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(lap, Eigen::EigenvaluesOnly);
  const double lambda_max = eig.eigenvalues().maxCoeff();
  if (!(lambda_max > 0.0)) {
    throw DegeneracyError("laplacian has zero spectral radius");
  }
  RealMatrix out = RealMatrix::Zero(n + 1, n + 1);
  if (mode == WalkNormalization::laplacian) {
    out.topLeftCorner(n, n) = lap / lambda_max;
  } else {
    out.topLeftCorner(n, n) = RealMatrix::Identity(n, n) - lap / lambda_max;
  }
  return out;
}

inline RealMatrix search_hamiltonian(const SearchInstance& inst) {
  RealMatrix h = normalized_walk_operator(inst.graph(), inst.options().walk);
  const auto m = static_cast<Eigen::Index>(inst.marked());
  h(m, m) -= inst.gamma();
  return h;
}

// L^ = (D^ - A^)/||D^ - A^||_2 where A^ is A with column m replaced by e_m
// and D^ holds the column sums of A^. Columns sum to zero; column m is zero.
inline RealMatrix absorbing_laplacian(const Graph& g, Vertex m) {
  if (m >= g.size()) {
    throw IndexError("marked vertex " + std::to_string(m) + " out of range");
  }
  if (!is_connected(g)) {
    throw ConnectivityError("absorbing laplacian requires a connected graph");
  }
  const auto mi = static_cast<Eigen::Index>(m);
  RealMatrix a_hat = g.adjacency();
  a_hat.col(mi).setZero();
  a_hat(mi, mi) = 1.0;
  RealMatrix raw = -a_hat;
  raw.diagonal() += a_hat.colwise().sum().transpose();
  const double norm = spectral_norm(raw);
  if (!(norm > 0.0)) {
    throw DegeneracyError("absorbing laplacian has zero norm");
  }
  return raw / norm;
}

// L_ij = coefficient * |target><source|
struct JumpOperator {
  double coefficient;
  Vertex target;
  Vertex source;
};

inline std::vector<JumpOperator> classical_jump_operators(
    const SearchInstance& inst) {
  const RealMatrix lhat = absorbing_laplacian(inst.graph(), inst.marked());
  const bool keep_diagonal =
      inst.options().convention == JumpConvention::all_entries;
  std::vector<JumpOperator> out;
  for (Eigen::Index j = 0; j < lhat.cols(); ++j) {
    for (Eigen::Index i = 0; i < lhat.rows(); ++i) {
      const double value = lhat(i, j);
      if (value == 0.0) continue;
      if (i == j && !keep_diagonal) continue;
      const double c =
          inst.options().sqrt_rates ? std::sqrt(std::abs(value)) : -value;
      out.push_back({c, static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  }
  return out;
}

// rho(0) = |psi0><psi0| with psi0 uniform over V and zero on the sink.
inline DensityMatrix initial_state(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0) throw ParameterError("initial state needs at least one vertex");
  DensityMatrix rho = DensityMatrix::Zero(n + 1, n + 1);
  rho.topLeftCorner(n, n).setConstant(Complex(1.0 / static_cast<double>(n), 0.0));
  return rho;
}

inline Eigen::VectorXd classical_initial_distribution(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0) throw ParameterError("distribution needs at least one vertex");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n + 1);
  p.head(n).setConstant(1.0 / static_cast<double>(n));
  return p;
}

// Precomputed, immutable generator of the master equation. Each rank-one
// jump |i><j| maps rho to rho_jj |i><i|, so the incoherent part reduces to
// a rate matrix acting on the diagonal plus an elementwise decay of every
// entry: O(|V|^2) per evaluation instead of one product per jump.
class SqwsGenerator {
 public:
  // Scratch buffers; one per integrating thread.
  struct Workspace {
    RealMatrix product;
    RealMatrix transposed;
  };

  explicit SqwsGenerator(const SearchInstance& inst)
      : dim_(inst.dim()),
        coherent_(1.0 - inst.omega()),
        omega_(inst.omega()),
        sink_rate_(inst.sink_rate()),
        marked_(static_cast<Eigen::Index>(inst.marked())),
        sink_(static_cast<Eigen::Index>(inst.sink())),
        hamiltonian_(search_hamiltonian(inst)) {
    const Eigen::Index nnz = (hamiltonian_.array() != 0.0).count();
    use_sparse_ = nnz * 4 < dim_ * dim_;
    if (use_sparse_) sparse_hamiltonian_ = hamiltonian_.sparseView();

    Eigen::VectorXd loss = Eigen::VectorXd::Zero(dim_);
    if (omega_ > 0.0) {
      for (const auto& jump : classical_jump_operators(inst)) {
        const double rate = omega_ * jump.coefficient * jump.coefficient;
        rates_.push_back({static_cast<Eigen::Index>(jump.target),
                          static_cast<Eigen::Index>(jump.source), rate});
        loss(static_cast<Eigen::Index>(jump.source)) += rate;
      }
    }
    loss(marked_) += sink_rate_;
    decay_ = 0.5 * (loss.replicate(1, dim_) + loss.transpose().replicate(dim_, 1));
  }

  Eigen::Index dim() const noexcept { return dim_; }
  const RealMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  bool uses_sparse_hamiltonian() const noexcept { return use_sparse_; }

  // out = E[rho] for any square rho of matching dimension.
  ComplexMatrix apply(const ComplexMatrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
      throw ShapeError("density matrix is " + std::to_string(rho.rows()) + "x" +
                       std::to_string(rho.cols()) + ", expected " +
                       std::to_string(dim_) + "x" + std::to_string(dim_));
    }
    const ComplexMatrix h = hamiltonian_.cast<Complex>();
    ComplexMatrix out = Complex(0.0, -coherent_) * (h * rho - rho * h);
    out.array() -= decay_.array() * rho.array();
    for (const auto& r : rates_) {
      out(r.target, r.target) += r.value * rho(r.source, r.source);
    }
    out(sink_, sink_) += sink_rate_ * rho(marked_, marked_);
    return out;
  }

  // Hermitian fast path on the stacked real form z = [re; im] (2d x d) of
  // rho = re + i im, re symmetric and im antisymmetric. With
  // M = rho H = A + iB (one product z H = [A; B]) and H rho = M^+, the
  // commutator splits into
  //   d re/dt = -(1-w) (B + B^T) - decay o re + gains
  //   d im/dt =  (1-w) (A - A^T) - decay o im
  // Symmetry of the outputs is exact in floating point.
  void apply_split(const RealMatrix& z, RealMatrix& dz, Workspace& ws) const {
    const Eigen::Index d = dim_;
    if (use_sparse_) {
      ws.product.noalias() = z * sparse_hamiltonian_;
    } else {
      ws.product.noalias() = z * hamiltonian_;
    }
    dz.resize(2 * d, d);
    const double c = coherent_;
    const double* p = ws.product.data();
    const double* x = z.data();
    const double* k = decay_.data();
    double* out = dz.data();
    const Eigen::Index ld = 2 * d;
    // Fused pass over the upper triangle, mirrored into the lower one.
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index i = 0; i <= j; ++i) {
        const Eigen::Index ij = j * ld + i;
        const Eigen::Index ji = i * ld + j;
        const double kij = k[j * d + i];
        const double re = -c * (p[ij + d] + p[ji + d]) - kij * x[ij];
        const double im = c * (p[ij] - p[ji]) - kij * x[ij + d];
        out[ji] = re;
        out[ji + d] = -im;
        out[ij] = re;
        out[ij + d] = im;
      }
    }
    for (const auto& r : rates_) {
      dz(r.target, r.target) += r.value * z(r.source, r.source);
    }
    dz(sink_, sink_) += sink_rate_ * z(marked_, marked_);
  }

 private:
  struct Rate {
    Eigen::Index target;
    Eigen::Index source;
    double value;
  };

  Eigen::Index dim_;
  double coherent_;
  double omega_;
  double sink_rate_;
  Eigen::Index marked_;
  Eigen::Index sink_;
  RealMatrix hamiltonian_;
  Eigen::SparseMatrix<double> sparse_hamiltonian_;
  bool use_sparse_ = false;
  std::vector<Rate> rates_;
  RealMatrix decay_;
};

inline ComplexMatrix sqws_rhs(const SqwsGenerator& gen, const ComplexMatrix& rho) {
  return gen.apply(rho);
}

inline ComplexMatrix sqws_rhs(const SearchInstance& inst, const ComplexMatrix& rho) {
  if (rho.rows() != inst.dim() || rho.cols() != inst.dim()) {
    throw ShapeError("density matrix dimension does not match |V|+1");
  }
  return sqws_rhs(SqwsGenerator(inst), rho);
}

}  // namespace sqws
