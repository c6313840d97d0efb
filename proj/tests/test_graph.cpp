#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "sqws/graph.hpp"

using namespace sqws;

namespace {

std::vector<FamilySpec> all_families() {
  return {FamilySpec::complete(8),
          FamilySpec::cycle(9),
          FamilySpec::path(7),
          FamilySpec::star(6),
          FamilySpec::wheel(7),
          FamilySpec::hypercube(4),
          FamilySpec::perfect_binary_tree(3),
          FamilySpec::grid(3, 4),
          FamilySpec::maze(5, 5, 7),
          FamilySpec::tadpole(6, 4),
          FamilySpec::lollipop(5, 3),
          FamilySpec::ring_lattice(12, 4),
          FamilySpec::watts_strogatz(20, 4, 0.3, 11),
          FamilySpec::glued_small_world(3)};
}

}  // namespace

TEST(Graph, AddEdgeRejectsSelfLoopsAndDuplicates) {
  Graph g(3);
  EXPECT_TRUE(g.add_edge(0, 1));
  EXPECT_FALSE(g.add_edge(1, 0));
  EXPECT_THROW(g.add_edge(2, 2), ParameterError);
  EXPECT_THROW(g.add_edge(0, 3), IndexError);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_TRUE(g.remove_edge(0, 1));
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(Graph, AdjacencyIsSymmetricZeroOne) {
  for (const auto& spec : all_families()) {
    const Graph g = generate(spec);
    const Eigen::MatrixXd a = g.adjacency();
    EXPECT_TRUE(a.isApprox(a.transpose())) << spec.id();
    EXPECT_EQ(a.diagonal().cwiseAbs().sum(), 0.0) << spec.id();
    EXPECT_TRUE((a.array() == 0.0 || a.array() == 1.0).all()) << spec.id();
    EXPECT_EQ(a.sum(), 2.0 * static_cast<double>(g.num_edges())) << spec.id();
    EXPECT_TRUE(is_connected(g)) << spec.id();
  }
}

TEST(Graph, CompleteEdgeCount) {
  EXPECT_EQ(generate(FamilySpec::complete(64)).num_edges(), 2016u);
}

TEST(Graph, RingLatticeEndpoints) {
  EXPECT_EQ(generate(FamilySpec::ring_lattice(32, 2)), generate(FamilySpec::cycle(32)));
  EXPECT_EQ(generate(FamilySpec::ring_lattice(32, 32)), generate(FamilySpec::complete(32)));
  EXPECT_EQ(generate(FamilySpec::ring_lattice(31, 30)), generate(FamilySpec::complete(31)));
  // Odd k connects floor(k/2) neighbours per side.
  EXPECT_EQ(generate(FamilySpec::ring_lattice(10, 3)), generate(FamilySpec::ring_lattice(10, 2)));
}

TEST(Graph, TadpoleShape) {
  const Graph g = generate(FamilySpec::tadpole(8, 8));
  EXPECT_EQ(g.size(), 16u);
  EXPECT_EQ(g.num_edges(), 16u);
  std::vector<Vertex> deg3;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.degree(v) == 3) deg3.push_back(v);
  }
  ASSERT_EQ(deg3.size(), 1u);
  EXPECT_EQ(resolve_target(g, TargetSelector::named("shared")), deg3.front());
  EXPECT_EQ(g.degree(resolve_target(g, TargetSelector::named("path"))), 1u);
}

TEST(Graph, LollipopShape) {
  const Graph g = generate(FamilySpec::lollipop(5, 3));
  EXPECT_EQ(g.size(), 8u);
  EXPECT_EQ(g.num_edges(), 10u + 3u);
  EXPECT_EQ(g.degree(resolve_target(g, TargetSelector::named("shared"))), 5u);
}

TEST(Graph, MazeIsSpanningTreeForEverySeed) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Graph g = generate(FamilySpec::maze(9, 9, seed));
    EXPECT_EQ(g.size(), 81u);
    EXPECT_EQ(g.num_edges(), 80u);
    EXPECT_TRUE(is_connected(g));
    // Every edge joins grid neighbours.
    for (const auto& e : g.edges()) {
      const auto r1 = e.u / 9, c1 = e.u % 9, r2 = e.v / 9, c2 = e.v % 9;
      const auto dist = (r1 > r2 ? r1 - r2 : r2 - r1) + (c1 > c2 ? c1 - c2 : c2 - c1);
      EXPECT_EQ(dist, 1u);
    }
  }
}

TEST(Graph, MazeExitIsFarthestCellFromStart) {
  const Graph g = generate(FamilySpec::maze(9, 9, 1));
  const Vertex exit = resolve_target(g, TargetSelector::named("exit"));
  const auto dist = bfs_distances(g, 0);
  EXPECT_EQ(dist[exit], *std::max_element(dist.begin(), dist.end()));
}

TEST(Graph, RandomFamiliesDeterministicGivenSeed) {
  EXPECT_EQ(generate(FamilySpec::maze(6, 6, 4)), generate(FamilySpec::maze(6, 6, 4)));
  EXPECT_EQ(generate(FamilySpec::watts_strogatz(30, 4, 0.5, 9)),
            generate(FamilySpec::watts_strogatz(30, 4, 0.5, 9)));
  EXPECT_EQ(generate(FamilySpec::glued_small_world(2)),
            generate(FamilySpec::glued_small_world(2)));
  EXPECT_FALSE(generate(FamilySpec::maze(6, 6, 4)) == generate(FamilySpec::maze(6, 6, 5)));
}

TEST(Graph, WattsStrogatzKeepsEdgeCount) {
  const Graph g = generate(FamilySpec::watts_strogatz(40, 6, 0.4, 3));
  EXPECT_EQ(g.num_edges(), 40u * 3u);
}

TEST(Graph, GluedSmallWorldStructure) {
  const Graph g = generate(FamilySpec::glued_small_world(1));
  EXPECT_EQ(g.size(), 66u);
  EXPECT_TRUE(is_connected(g));
  const Vertex hc = *g.label("HC");
  const Vertex ic = *g.label("IC");
  const Vertex lc = *g.label("LC");
  EXPECT_LT(hc, 22u);
  EXPECT_GE(ic, 22u);
  EXPECT_LT(ic, 44u);
  EXPECT_GE(lc, 44u);
  // Bridges: removing intra-component edges leaves exactly two edges.
  std::size_t bridges = 0;
  for (const auto& e : g.edges()) {
    if (e.u / 22 != e.v / 22) ++bridges;
  }
  EXPECT_EQ(bridges, 2u);
}

TEST(Graph, InvalidParametersThrow) {
  EXPECT_THROW(generate(FamilySpec::watts_strogatz(20, 4, 1.5, 0)), ParameterError);
  EXPECT_THROW(generate(FamilySpec::cycle(2)), ParameterError);
  EXPECT_THROW(generate(FamilySpec::complete(0)), ParameterError);
  EXPECT_THROW(generate(FamilySpec::ring_lattice(10, 1)), ParameterError);
  EXPECT_THROW(parse_family("dodecahedron"), ParameterError);
}

TEST(Metrics, Density) {
  EXPECT_DOUBLE_EQ(density(generate(FamilySpec::complete(64))), 1.0);
  EXPECT_NEAR(density(generate(FamilySpec::cycle(64))), 2.0 / 63.0, 1e-15);
  EXPECT_NEAR(density(generate(FamilySpec::hypercube(6))), 6.0 / 63.0, 1e-15);
  EXPECT_THROW(density(Graph(1)), ParameterError);
}

TEST(Metrics, DegreeCentrality) {
  const Graph k = generate(FamilySpec::complete(64));
  EXPECT_DOUBLE_EQ(degree_centrality(k, 17), 1.0);
  const Graph p = generate(FamilySpec::path(65));
  EXPECT_NEAR(degree_centrality(p, resolve_target(p, TargetSelector::named("border"))),
              1.0 / 64.0, 1e-15);
  const Graph s = generate(FamilySpec::star(64));
  EXPECT_DOUBLE_EQ(degree_centrality(s, resolve_target(s, TargetSelector::named("center"))), 1.0);
  EXPECT_THROW(degree_centrality(k, 64), IndexError);
}

TEST(Metrics, Eccentricity) {
  EXPECT_EQ(eccentricity(generate(FamilySpec::cycle(64)), 5), 32u);
  EXPECT_EQ(eccentricity(generate(FamilySpec::hypercube(6)), 9), 6u);
  const Graph t = generate(FamilySpec::tadpole(32, 32));
  EXPECT_EQ(eccentricity(t, resolve_target(t, TargetSelector::named("shared"))), 32u);
  Graph disconnected(4);
  disconnected.add_edge(0, 1);
  disconnected.add_edge(2, 3);
  EXPECT_THROW(eccentricity(disconnected, 0), ConnectivityError);
}

TEST(Metrics, VertexTransitiveFamiliesAreUniform) {
  for (const auto& spec : {FamilySpec::complete(12), FamilySpec::cycle(13),
                           FamilySpec::hypercube(4), FamilySpec::ring_lattice(14, 6)}) {
    const Graph g = generate(spec);
    for (Vertex v = 1; v < g.size(); ++v) {
      EXPECT_EQ(eccentricity(g, v), eccentricity(g, 0)) << spec.id();
      EXPECT_EQ(degree_centrality(g, v), degree_centrality(g, 0)) << spec.id();
    }
  }
}

TEST(Metrics, RingLatticeProfile) {
  const std::vector<std::size_t> ks{2, 32};
  const auto prof = ring_lattice_profile(32, ks);
  EXPECT_EQ(prof[0].eccentricity, 16u);
  EXPECT_NEAR(prof[0].degree_centrality, 2.0 / 31.0, 1e-15);
  EXPECT_EQ(prof[1].eccentricity, 1u);
  EXPECT_DOUBLE_EQ(prof[1].degree_centrality, 1.0);
  const std::vector<std::size_t> k4{4};
  const auto small = ring_lattice_profile(8, k4);
  EXPECT_EQ(small[0].eccentricity, 2u);
  EXPECT_NEAR(small[0].degree_centrality, 4.0 / 7.0, 1e-15);
}

TEST(Selectors, PathBorderAndCenter) {
  const Graph g = generate(FamilySpec::path(65));
  EXPECT_EQ(g.degree(resolve_target(g, TargetSelector::named("border"))), 1u);
  EXPECT_EQ(resolve_target(g, TargetSelector::named("center")), 32u);
}

TEST(Selectors, TreeDepths) {
  const Graph g = generate(FamilySpec::perfect_binary_tree(5));
  EXPECT_EQ(g.size(), 63u);
  EXPECT_EQ(resolve_target(g, TargetSelector::named("root")), 0u);
  EXPECT_EQ(eccentricity(g, resolve_target(g, TargetSelector::at_depth(3))), 8u);
  EXPECT_EQ(eccentricity(g, resolve_target(g, TargetSelector::named("leaf"))), 10u);
  EXPECT_THROW(resolve_target(g, TargetSelector::at_depth(6)), SelectorError);
  EXPECT_THROW(resolve_target(generate(FamilySpec::cycle(5)), TargetSelector::at_depth(1)),
               SelectorError);
}

TEST(Selectors, IndexAndUnknownTags) {
  const Graph k = generate(FamilySpec::complete(64));
  EXPECT_EQ(resolve_target(k, TargetSelector::at(13)), 13u);
  EXPECT_THROW(resolve_target(k, TargetSelector::at(64)), SelectorError);
  try {
    resolve_target(generate(FamilySpec::star(6)), TargetSelector::named("exit"));
    FAIL() << "expected SelectorError";
  } catch (const SelectorError& e) {
    EXPECT_NE(std::string(e.what()).find("center"), std::string::npos);
  }
}

TEST(Selectors, ParseRoundTrip) {
  for (const auto& sel : {TargetSelector::at(3), TargetSelector::named("center"),
                          TargetSelector::at_depth(3)}) {
    EXPECT_EQ(TargetSelector::parse(sel.id()), sel);
  }
  EXPECT_EQ(TargetSelector::parse("7"), TargetSelector::at(7));
  EXPECT_EQ(TargetSelector::parse("depth:2"), TargetSelector::at_depth(2));
  EXPECT_THROW(TargetSelector::parse(""), SelectorError);
  EXPECT_THROW(TargetSelector::parse("depthx"), SelectorError);
}

TEST(EdgeList, RoundTrip) {
  for (const auto& spec : all_families()) {
    const Graph g = generate(spec);
    const std::string text = to_edge_list(g);
    const Graph back = parse_edge_list(text);
    EXPECT_EQ(back, g) << spec.id();
    EXPECT_EQ(back.labels(), g.labels()) << spec.id();
    EXPECT_EQ(to_edge_list(back), text) << spec.id();
  }
}

TEST(EdgeList, Format) {
  Graph g(3);
  g.add_edge(2, 1);
  g.add_edge(0, 2);
  g.set_label("center", 2);
  EXPECT_EQ(to_edge_list(g), "3\n0 2\n1 2\n# label 2 center\n");
  EXPECT_THROW(parse_edge_list("2\n0 5\n"), InputError);
  EXPECT_THROW(parse_edge_list("x\n"), InputError);
}
