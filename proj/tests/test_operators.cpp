#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sqws/observables.hpp"
#include "sqws/operators.hpp"

using namespace sqws;

namespace {

// Random density matrix on `d` levels: A A^+ / tr.
ComplexMatrix random_state(Eigen::Index d, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  ComplexMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(nd(gen), nd(gen));
  }
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

// Independent construction of the absorbing Laplacian from the adjacency.
RealMatrix oracle_absorbing_laplacian(const Graph& g, Vertex m) {
  const auto n = static_cast<Eigen::Index>(g.size());
  RealMatrix a = g.adjacency();
  for (Eigen::Index i = 0; i < n; ++i) a(i, static_cast<Eigen::Index>(m)) = 0.0;
  a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) = 1.0;
  RealMatrix raw = -a;
  for (Eigen::Index j = 0; j < n; ++j) raw(j, j) += a.col(j).sum();
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(raw.transpose() * raw);
  return raw / std::sqrt(eig.eigenvalues().maxCoeff());
}

// Literal operator sum of the master equation, one jump matrix at a time.
ComplexMatrix literal_rhs(const SearchInstance& inst, const ComplexMatrix& rho) {
  const Graph& g = inst.graph();
  const auto n = static_cast<Eigen::Index>(g.size());
  const Eigen::Index d = n + 1;
  const auto m = static_cast<Eigen::Index>(inst.marked());
  RealMatrix lap = g.laplacian();
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(lap);
  const double lmax = eig.eigenvalues().maxCoeff();
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  if (inst.options().walk == WalkNormalization::laplacian) {
    h.topLeftCorner(n, n) = (lap / lmax).cast<Complex>();
  } else {
    h.topLeftCorner(n, n) = (RealMatrix::Identity(n, n) - lap / lmax).cast<Complex>();
  }
  h(m, m) -= inst.gamma();
  const Complex i(0.0, 1.0);
  ComplexMatrix out = (1.0 - inst.omega()) * (-i) * (h * rho - rho * h);

  auto dissipate = [&](const ComplexMatrix& l, double w) {
    const ComplexMatrix ldl = l.adjoint() * l;
    out += w * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  };
  const RealMatrix lhat = oracle_absorbing_laplacian(g, inst.marked());
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (lhat(a, b) == 0.0) continue;
      if (a == b && inst.options().convention == JumpConvention::off_diagonal_only) continue;
      ComplexMatrix l = ComplexMatrix::Zero(d, d);
      l(a, b) = inst.options().sqrt_rates ? std::sqrt(std::abs(lhat(a, b))) : -lhat(a, b);
      dissipate(l, inst.omega());
    }
  }
  ComplexMatrix sink = ComplexMatrix::Zero(d, d);
  sink(n, m) = 1.0;
  dissipate(sink, inst.sink_rate());
  return out;
}

std::vector<Graph> small_graphs() {
  std::vector<Graph> out{generate(FamilySpec::path(2)),        generate(FamilySpec::cycle(4)),
                         generate(FamilySpec::path(4)),        generate(FamilySpec::complete(4)),
                         generate(FamilySpec::star(5)),        generate(FamilySpec::tadpole(4, 3)),
                         generate(FamilySpec::hypercube(3)),   generate(FamilySpec::wheel(6))};
  return out;
}

}  // namespace

TEST(WalkOperator, LaplacianForm) {
  const RealMatrix k = normalized_walk_operator(generate(FamilySpec::complete(5)));
  RealMatrix expect = RealMatrix::Identity(5, 5) - RealMatrix::Constant(5, 5, 0.2);
  EXPECT_TRUE(k.topLeftCorner(5, 5).isApprox(expect, 1e-14));

  const RealMatrix c4 = normalized_walk_operator(generate(FamilySpec::cycle(4)));
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(c4(i, i), 0.5, 1e-14);
    EXPECT_NEAR(c4(i, (i + 1) % 4), -0.25, 1e-14);
    EXPECT_NEAR(c4(i, (i + 2) % 4), 0.0, 1e-14);
  }

  const RealMatrix p2 = normalized_walk_operator(generate(FamilySpec::path(2)));
  EXPECT_NEAR(p2(0, 0), 0.5, 1e-14);
  EXPECT_NEAR(p2(0, 1), -0.5, 1e-14);
}

TEST(WalkOperator, ComplementForm) {
  const auto mode = WalkNormalization::complement;
  const RealMatrix k = normalized_walk_operator(generate(FamilySpec::complete(6)), mode);
  EXPECT_TRUE(k.topLeftCorner(6, 6).isApprox(RealMatrix::Constant(6, 6, 1.0 / 6.0), 1e-14));

  const RealMatrix c4 = normalized_walk_operator(generate(FamilySpec::cycle(4)), mode);
  EXPECT_NEAR(c4(1, 1), 0.5, 1e-14);
  EXPECT_NEAR(c4(1, 2), 0.25, 1e-14);

  const RealMatrix p2 = normalized_walk_operator(generate(FamilySpec::path(2)), mode);
  EXPECT_TRUE(p2.topLeftCorner(2, 2).isApprox(RealMatrix::Constant(2, 2, 0.5), 1e-14));
}

TEST(WalkOperator, SpectrumAndSinkEmbedding) {
  for (auto mode : {WalkNormalization::laplacian, WalkNormalization::complement}) {
    for (const auto& g : small_graphs()) {
      const RealMatrix w = normalized_walk_operator(g, mode);
      const auto n = static_cast<Eigen::Index>(g.size());
      EXPECT_EQ(w.row(n).cwiseAbs().sum(), 0.0);
      EXPECT_EQ(w.col(n).cwiseAbs().sum(), 0.0);
      Eigen::SelfAdjointEigenSolver<RealMatrix> eig(w.topLeftCorner(n, n));
      EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
      EXPECT_LE(eig.eigenvalues().maxCoeff(), 1.0 + 1e-12);
    }
  }
  EXPECT_THROW(normalized_walk_operator(Graph(3)), DegeneracyError);
}

TEST(SearchHamiltonian, OracleTerm) {
  const Graph g = generate(FamilySpec::grid(3, 3));
  const SearchInstance free(g, 4, 0.0, 0.0, 1.0);
  EXPECT_TRUE(search_hamiltonian(free).isApprox(normalized_walk_operator(g)));
  const SearchInstance strong(g, 4, 0.0, 30.0, 1.0);
  const RealMatrix h = search_hamiltonian(strong);
  EXPECT_NEAR(h(4, 4), normalized_walk_operator(g)(4, 4) - 30.0, 1e-14);
  EXPECT_TRUE(h.isApprox(h.transpose()));
}

TEST(SearchHamiltonian, CompleteGraphResonance) {
  const Graph g = generate(FamilySpec::complete(64));
  const SearchInstance inst(g, 0, 0.0, 1.0, 1.0);
  const RealMatrix h = search_hamiltonian(inst);
  RealMatrix expect = RealMatrix::Identity(64, 64) - RealMatrix::Constant(64, 64, 1.0 / 64.0);
  expect(0, 0) -= 1.0;
  EXPECT_TRUE(h.topLeftCorner(64, 64).isApprox(expect, 1e-13));
}

TEST(SearchInstance, Validation) {
  const Graph g = generate(FamilySpec::cycle(4));
  EXPECT_THROW(SearchInstance(g, 0, 1.5, 0.0, 1.0), ParameterError);
  EXPECT_THROW(SearchInstance(g, 0, -0.1, 0.0, 1.0), ParameterError);
  EXPECT_THROW(SearchInstance(g, 0, 0.5, -1.0, 1.0), ParameterError);
  EXPECT_THROW(SearchInstance(g, 0, 0.5, 1.0, -1.0), ParameterError);
  EXPECT_THROW(SearchInstance(g, 4, 0.5, 1.0, 1.0), ParameterError);
  const SearchInstance ok(g, 3, 0.5, 1.0, 1.0);
  EXPECT_EQ(ok.sink(), 4u);
  EXPECT_EQ(ok.dim(), 5);
}

TEST(AbsorbingLaplacian, TwoVertexExample) {
  const RealMatrix l = absorbing_laplacian(generate(FamilySpec::path(2)), 1);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(l(0, 0), r, 1e-14);
  EXPECT_NEAR(l(1, 0), -r, 1e-14);
  EXPECT_EQ(l(0, 1), 0.0);
  EXPECT_EQ(l(1, 1), 0.0);
}

TEST(AbsorbingLaplacian, ColumnStructure) {
  for (const auto& g : small_graphs()) {
    for (Vertex m = 0; m < g.size(); ++m) {
      const RealMatrix l = absorbing_laplacian(g, m);
      EXPECT_LT(l.colwise().sum().cwiseAbs().maxCoeff(), 1e-14);
      EXPECT_EQ(l.col(static_cast<Eigen::Index>(m)).cwiseAbs().sum(), 0.0);
      for (Eigen::Index i = 0; i < l.rows(); ++i) {
        for (Eigen::Index j = 0; j < l.cols(); ++j) {
          if (i != j) { EXPECT_LE(l(i, j), 0.0); }
        }
      }
      EXPECT_TRUE(l.isApprox(oracle_absorbing_laplacian(g, m), 1e-12));
    }
  }
  Graph disconnected(4);
  disconnected.add_edge(0, 1);
  disconnected.add_edge(2, 3);
  EXPECT_THROW(absorbing_laplacian(disconnected, 0), ConnectivityError);
}

TEST(JumpOperators, CycleCounts) {
  const Graph g = generate(FamilySpec::cycle(4));
  const SearchInstance all(g, 0, 0.5, 1.0, 1.0);
  EXPECT_EQ(classical_jump_operators(all).size(), 9u);
  ModelOptions off;
  off.convention = JumpConvention::off_diagonal_only;
  const SearchInstance offdiag(g, 0, 0.5, 1.0, 1.0, off);
  EXPECT_EQ(classical_jump_operators(offdiag).size(), 6u);
  for (const auto& j : classical_jump_operators(all)) {
    EXPECT_NE(j.source, 0u);
    EXPECT_LT(j.target, 4u);
  }
}

TEST(JumpOperators, CoefficientConventions) {
  const Graph g = generate(FamilySpec::star(5));
  const RealMatrix lhat = absorbing_laplacian(g, 2);
  ModelOptions literal;
  literal.sqrt_rates = false;
  for (const auto& j : classical_jump_operators(SearchInstance(g, 2, 1.0, 0.0, 1.0, literal))) {
    const double value = lhat(static_cast<Eigen::Index>(j.target), static_cast<Eigen::Index>(j.source));
    EXPECT_DOUBLE_EQ(j.coefficient, -value);
    if (j.target != j.source) { EXPECT_GE(j.coefficient, 0.0); }
  }
  for (const auto& j : classical_jump_operators(SearchInstance(g, 2, 1.0, 0.0, 1.0))) {
    const double value = lhat(static_cast<Eigen::Index>(j.target), static_cast<Eigen::Index>(j.source));
    EXPECT_DOUBLE_EQ(j.coefficient * j.coefficient, std::abs(value));
  }
}

TEST(Generator, ClosedFormMatchesLiteralOperatorSum) {
  unsigned seed = 1;
  for (const auto& g : small_graphs()) {
    for (double omega : {0.0, 0.1, 0.5, 1.0}) {
      for (double gamma : {0.0, 1.0, 5.0}) {
        for (double sink : {0.0, 1.0}) {
          for (bool sqrt_rates : {true, false}) {
            for (auto conv : {JumpConvention::all_entries, JumpConvention::off_diagonal_only}) {
              ModelOptions opt;
              opt.sqrt_rates = sqrt_rates;
              opt.convention = conv;
              const Vertex m = g.size() - 1;
              const SearchInstance inst(g, m, omega, gamma, sink, opt);
              const ComplexMatrix rho = random_state(inst.dim(), seed++);
              const ComplexMatrix diff = sqws_rhs(inst, rho) - literal_rhs(inst, rho);
              EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-12)
                  << g.size() << " w=" << omega << " g=" << gamma;
            }
          }
        }
      }
    }
  }
}

TEST(Generator, ComplementWalkMatchesLiteral) {
  ModelOptions opt;
  opt.walk = WalkNormalization::complement;
  const SearchInstance inst(generate(FamilySpec::path(4)), 1, 0.3, 2.0, 1.0, opt);
  const ComplexMatrix rho = random_state(inst.dim(), 99);
  EXPECT_LT((sqws_rhs(inst, rho) - literal_rhs(inst, rho)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Generator, TraceFreeAndHermitian) {
  for (const auto& g : small_graphs()) {
    const SearchInstance inst(g, 0, 0.4, 1.0, 1.0);
    const ComplexMatrix rho = random_state(inst.dim(), 7);
    const ComplexMatrix out = sqws_rhs(inst, rho);
    EXPECT_LT(std::abs(out.trace()), 1e-12);
    EXPECT_LT(hermiticity_error(out), 1e-13);
  }
}

TEST(Generator, PureSchrodingerLimit) {
  const SearchInstance inst(generate(FamilySpec::cycle(5)), 2, 0.0, 1.0, 0.0);
  const ComplexMatrix rho = random_state(inst.dim(), 3);
  const ComplexMatrix h = search_hamiltonian(inst).cast<Complex>();
  const ComplexMatrix expect = Complex(0.0, -1.0) * (h * rho - rho * h);
  EXPECT_LT((sqws_rhs(inst, rho) - expect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Generator, SinkInflow) {
  const SearchInstance inst(generate(FamilySpec::cycle(4)), 1, 0.5, 1.0, 0.7);
  const ComplexMatrix rho = random_state(inst.dim(), 5);
  const ComplexMatrix out = sqws_rhs(inst, rho);
  EXPECT_NEAR(out(4, 4).real(), 0.7 * rho(1, 1).real(), 1e-14);
  EXPECT_NEAR(out(4, 4).imag(), 0.0, 1e-15);
}

TEST(Generator, ClassicalLimitPreservesDiagonalStates) {
  const SearchInstance inst(generate(FamilySpec::grid(2, 3)), 0, 1.0, 3.0, 1.0);
  ComplexMatrix rho = ComplexMatrix::Zero(inst.dim(), inst.dim());
  for (Eigen::Index i = 0; i < inst.dim(); ++i) rho(i, i) = 1.0 / static_cast<double>(inst.dim());
  const ComplexMatrix out = sqws_rhs(inst, rho);
  ComplexMatrix off = out;
  off.diagonal().setZero();
  EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
  // Populations follow dp/dt = -L^ p on V.
  const RealMatrix lhat = absorbing_laplacian(inst.graph(), 0);
  const Eigen::VectorXd p = rho.diagonal().real().head(6);
  const Eigen::VectorXd expect = -lhat * p;
  for (Eigen::Index i = 1; i < 6; ++i) EXPECT_NEAR(out(i, i).real(), expect(i), 1e-14);
}

TEST(Generator, SplitKernelMatchesComplexForm) {
  for (const auto& spec : {FamilySpec::cycle(40), FamilySpec::complete(9)}) {
    const Graph g = generate(spec);
    const SearchInstance inst(g, 0, 0.3, 2.0, 1.0);
    const SqwsGenerator gen(inst);
    EXPECT_EQ(gen.uses_sparse_hamiltonian(), spec.family == Family::cycle);
    const ComplexMatrix rho = random_state(inst.dim(), 11);
    const Eigen::Index d = inst.dim();
    RealMatrix z(2 * d, d), dz;
    z.topRows(d) = rho.real();
    z.bottomRows(d) = rho.imag();
    SqwsGenerator::Workspace ws;
    gen.apply_split(z, dz, ws);
    const ComplexMatrix ref = gen.apply(rho);
    EXPECT_LT((dz.topRows(d) - ref.real()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((dz.bottomRows(d) - ref.imag()).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Generator, ShapeMismatch) {
  const SearchInstance inst(generate(FamilySpec::cycle(4)), 0, 0.5, 1.0, 1.0);
  EXPECT_THROW(sqws_rhs(inst, ComplexMatrix::Zero(4, 4)), ShapeError);
}

TEST(InitialState, UniformSuperposition) {
  const Graph g = generate(FamilySpec::cycle(7));
  const DensityMatrix rho = initial_state(g);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(rho), 0.0, 1e-12);
  EXPECT_NEAR(l1_coherence(rho), 6.0, 1e-13);
  EXPECT_EQ(rho(7, 7), Complex(0.0, 0.0));
  EXPECT_NEAR(purity(rho), 1.0, 1e-14);

  const Eigen::VectorXd p = classical_initial_distribution(g);
  EXPECT_NEAR(p.sum(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(p(3), 1.0 / 7.0);
  EXPECT_EQ(p(7), 0.0);
}
