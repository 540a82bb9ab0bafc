#include <gtest/gtest.h>

#include <random>

#include <fptedit/generators.hpp>
#include <fptedit/oracle.hpp>
#include <fptedit/treewidth.hpp>

#include "support/reference.hpp"

using namespace fptedit;

TEST(Decomposition, SingleBagHoldsEverything) {
  const WeightedGraph g = gen::complete(4);
  const TreeDecomposition td{{{0, {0, 1, 2, 3}}}, {}};
  EXPECT_TRUE(validate_decomposition(g, td));
  EXPECT_EQ(td.width(), 3);
}

TEST(Decomposition, PathWithTwoBags) {
  const TreeDecomposition td{{{1, {0, 1}}, {2, {1, 2}}}, {{1, 2}}};
  EXPECT_TRUE(validate_decomposition(gen::path(3), td));
  EXPECT_EQ(td.width(), 1);
}

TEST(Decomposition, InvalidShapes) {
  const WeightedGraph tri = gen::cycle(3);
  // Edge 0-2 shares no bag.
  EXPECT_FALSE(validate_decomposition(tri, {{{1, {0, 1}}, {2, {1, 2}}}, {{1, 2}}}));
  // Vertex 1 occurs in two bags that are not connected through bags holding it.
  EXPECT_FALSE(validate_decomposition(gen::path(3), {{{1, {0, 1}}, {2, {0}}, {3, {1, 2}}}, {{1, 2}, {2, 3}}}));
  // Not a tree: a cycle of bags.
  EXPECT_FALSE(validate_decomposition(gen::path(3), {{{1, {0, 1}}, {2, {1, 2}}, {3, {1}}}, {{1, 2}, {2, 3}, {3, 1}}}));
  // Disconnected bags.
  EXPECT_FALSE(validate_decomposition(gen::path(3), {{{1, {0, 1}}, {2, {1, 2}}}, {}}));
  // Unknown vertex, missing vertex.
  EXPECT_FALSE(validate_decomposition(gen::path(2), {{{1, {0, 1, 7}}}, {}}));
  EXPECT_FALSE(validate_decomposition(gen::path(3), {{{1, {0, 1}}}, {}}));
  // Empty decomposition only fits the empty graph.
  EXPECT_TRUE(validate_decomposition(WeightedGraph{}, {}));
  EXPECT_FALSE(validate_decomposition(gen::path(1), {}));
}

TEST(GreedyDecomposition, Widths) {
  EXPECT_EQ(greedy_decomposition(gen::path(7)).width(), 1);
  EXPECT_EQ(greedy_decomposition(gen::star(6)).width(), 1);
  for (int n : {3, 4, 8})
    EXPECT_EQ(greedy_decomposition(gen::cycle(n)).width(), 2);
  for (int n : {1, 2, 5})
    EXPECT_EQ(greedy_decomposition(gen::complete(n)).width(), n - 1);
  EXPECT_EQ(greedy_decomposition(WeightedGraph{}).width(), -1);
}

// Property: the heuristic always yields a valid decomposition.
TEST(GreedyDecomposition, AlwaysValid) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightedGraph g = gen::random_graph(1 + static_cast<int>(rng() % 12), 0.1 + 0.08 * (trial % 10), rng());
    EXPECT_TRUE(validate_decomposition(g, greedy_decomposition(g)));
  }
}

TEST(NiceDecomposition, IntroducesEveryEdgeOnce) {
  const WeightedGraph g = gen::petersen();
  const NiceDecomposition nice = make_nice(g, greedy_decomposition(g));
  std::size_t edges = 0;
  for (const NiceNode& node : nice.nodes) {
    EXPECT_LE(static_cast<int>(node.bag.size()) - 1, nice.width);
    if (node.kind == NiceKind::IntroduceEdge) {
      ++edges;
      EXPECT_TRUE(g.has_edge(node.v, node.w));
    }
    if (node.kind == NiceKind::Join)
      EXPECT_EQ(nice.nodes[node.children[0]].bag, nice.nodes[node.children[1]].bag);
  }
  EXPECT_EQ(edges, g.num_edges());
  EXPECT_TRUE(nice.nodes[nice.root].bag.empty());
  EXPECT_THROW(make_nice(g, {{{0, {0, 1}}}, {}}), DecompositionError);
}

TEST(RegularSubgraph, Examples) {
  WeightedGraph k4_pendant = gen::complete(4);
  k4_pendant.add_vertex(4);
  k4_pendant.add_edge(3, 4);
  EXPECT_TRUE(solve_induced_regular(k4_pendant, 3, greedy_decomposition(k4_pendant)));

  WeightedGraph forest = gen::path(4);
  forest.add_vertex(4);
  forest.add_vertex(5);
  forest.add_edge(4, 5);
  EXPECT_FALSE(solve_induced_regular(forest, 2, greedy_decomposition(forest)));
  EXPECT_FALSE(solve_regular_subgraph(forest, 2, greedy_decomposition(forest)));

  const WeightedGraph k4 = gen::complete(4);
  EXPECT_TRUE(solve_regular_subgraph(k4, 2, greedy_decomposition(k4)));
  EXPECT_FALSE(solve_induced_regular(gen::star(3), 2, greedy_decomposition(gen::star(3))));
  EXPECT_TRUE(solve_regular_subgraph(gen::path(5), 1, greedy_decomposition(gen::path(5))));
  EXPECT_FALSE(solve_regular_subgraph(gen::cycle(3), 3, greedy_decomposition(gen::cycle(3))));
  // An induced 1-regular subgraph of the 5-cycle is any single edge.
  EXPECT_TRUE(solve_induced_regular(gen::cycle(5), 1, greedy_decomposition(gen::cycle(5))));
  // Petersen: 3-regular itself, no triangles, 5-cycles induced.
  const WeightedGraph p = gen::petersen();
  const TreeDecomposition ptd = greedy_decomposition(p);
  EXPECT_TRUE(solve_induced_regular(p, 3, ptd));
  EXPECT_TRUE(solve_induced_regular(p, 2, ptd));
}

TEST(RegularSubgraph, ZeroRegularMeansNonempty) {
  EXPECT_FALSE(solve_induced_regular(WeightedGraph{}, 0, TreeDecomposition{}));
  for (int n = 1; n <= 4; ++n)
    for_each_labeled_graph(n, [](const WeightedGraph& g) {
      const TreeDecomposition td = greedy_decomposition(g);
      EXPECT_TRUE(solve_induced_regular(g, 0, td));
      EXPECT_TRUE(solve_regular_subgraph(g, 0, td));
    });
}

TEST(RegularSubgraph, RejectsBadInput) {
  WeightedGraph g = gen::cycle(4);
  const TreeDecomposition td = greedy_decomposition(g);
  EXPECT_THROW(solve_induced_regular(g, -1, td), std::invalid_argument);
  EXPECT_THROW(solve_induced_regular(g, 1, {{{0, {0, 1}}}, {}}), DecompositionError);
  g.set_edge_weight(0, 1, 2);
  EXPECT_THROW(solve_regular_subgraph(g, 1, td), std::invalid_argument);
}

TEST(WithAddition, CountsVertices) {
  EXPECT_TRUE(solve_with_addition(gen::empty_graph(5), 3));
  EXPECT_FALSE(solve_with_addition(gen::path(4), 5));
  EXPECT_TRUE(solve_with_addition(gen::path(4), 3));
  EXPECT_FALSE(solve_with_addition(WeightedGraph{}, 0));
}

// Property: both DPs match subset enumeration on every graph with at most
// 5 vertices, and the width guard never answers against it.
TEST(RegularSubgraph, AgreesWithEnumerationOnSmallGraphs) {
  for (int n = 0; n <= 5; ++n)
    for_each_labeled_graph(n, [](const WeightedGraph& g) {
      const TreeDecomposition td = greedy_decomposition(g);
      for (int r = 0; r <= 4; ++r) {
        const bool induced = reference::induced_regular(g, r);
        const bool sub = reference::regular_subgraph(g, r);
        EXPECT_EQ(solve_induced_regular(g, r, td), induced);
        EXPECT_EQ(solve_regular_subgraph(g, r, td), sub);
        if (r > td.width()) {
          EXPECT_FALSE(induced);
          EXPECT_FALSE(sub);
        }
      }
    });
}

// Property: the answer does not depend on the decomposition used.
TEST(RegularSubgraph, IndependentOfTheDecomposition) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const WeightedGraph g = gen::random_graph(n, 0.5, rng());
    const TreeDecomposition greedy = greedy_decomposition(g);
    const TreeDecomposition single{{{0, g.vertices()}}, {}};
    // The whole vertex set at the centre, with one leaf bag per vertex
    // holding everything but that vertex.
    TreeDecomposition star{{{0, g.vertices()}}, {}};
    int next = 1;
    for (VertexId v : g.vertices()) {
      std::vector<VertexId> bag;
      for (VertexId u : g.vertices())
        if (u != v)
          bag.push_back(u);
      star.bags[next] = bag;
      star.tree.emplace_back(0, next);
      ++next;
    }
    ASSERT_TRUE(validate_decomposition(g, star));
    for (int r = 0; r <= 3; ++r)
      for (bool induced : {true, false}) {
        auto run = [&](const TreeDecomposition& td) {
          return induced ? solve_induced_regular(g, r, td) : solve_regular_subgraph(g, r, td);
        };
        const bool a = run(greedy);
        EXPECT_EQ(run(single), a);
        EXPECT_EQ(run(star), a);
      }
  }
}
