#include <gtest/gtest.h>

#include <random>

#include <fptedit/edit_script.hpp>
#include <fptedit/generators.hpp>

using namespace fptedit;

TEST(EditScript, DeletingTheStarCentreLeavesIsolatedLeaves) {
  const auto res = apply_edit_script(gen::star(3), {{EditOp::delete_vertex(0)}});
  EXPECT_EQ(res.cost, 1);
  EXPECT_EQ(res.graph.num_vertices(), 3u);
  EXPECT_EQ(res.graph.num_edges(), 0u);
}

TEST(EditScript, EmptyScriptIsTheIdentity) {
  WeightedGraph g = gen::petersen();
  g.set_vertex_weight(4, 3);
  const auto res = apply_edit_script(g, {});
  EXPECT_EQ(res.cost, 0);
  EXPECT_EQ(res.graph, g);
}

TEST(EditScript, AddedEdgeHasUnitWeightAndCost) {
  const auto res = apply_edit_script(gen::path(3), {{EditOp::add_edge(2, 0)}});
  EXPECT_EQ(res.cost, 1);
  EXPECT_EQ(res.graph, gen::cycle(3));
  EXPECT_EQ(res.graph.edge_weight(0, 2), 1);
}

TEST(EditScript, DeletionCostsTheFullWeight) {
  WeightedGraph g = gen::path(3);
  g.set_vertex_weight(1, 4);
  g.set_edge_weight(0, 1, 3);
  EXPECT_EQ(apply_edit_script(g, {{EditOp::delete_edge(0, 1)}}).cost, 3);
  EXPECT_EQ(apply_edit_script(g, {{EditOp::delete_vertex(1)}}).cost, 4);
}

TEST(EditScript, ErrorsNameTheFailingStep) {
  const WeightedGraph g = gen::path(3);
  try {
    apply_edit_script(g, {{EditOp::delete_vertex(0), EditOp::delete_edge(0, 1)}});
    FAIL() << "expected EditError";
  } catch (const EditError& e) {
    EXPECT_EQ(e.step(), 1u);
  }
  EXPECT_THROW(apply_edit_script(g, {{EditOp::add_edge(0, 1)}}), EditError);
  EXPECT_THROW(apply_edit_script(g, {{EditOp::delete_vertex(9)}}), EditError);
  EXPECT_THROW(apply_edit_script(g, {{EditOp::delete_edge(0, 2)}}), EditError);
  try {
    apply_edit_script(g, {{EditOp::delete_edge(1, 2), EditOp::add_edge(0, 2)}}, kVdelEdel);
    FAIL() << "expected EditError";
  } catch (const EditError& e) {
    EXPECT_EQ(e.step(), 1u);
  }
}

TEST(EditScript, CanonicalOrderPutsVertexDeletionsFirst) {
  const EditScript s{{EditOp::add_edge(3, 1), EditOp::delete_edge(2, 0), EditOp::delete_vertex(5)}};
  const EditScript c = canonical(s);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.ops[0], EditOp::delete_vertex(5));
  EXPECT_EQ(c.ops[1], EditOp::delete_edge(0, 2));
  EXPECT_EQ(c.ops[2], EditOp::add_edge(1, 3));
  EXPECT_EQ(to_string(c.ops[2]), "eadd 1 3");
}

// Property: applying a then b equals applying their concatenation, and the
// costs add up.
TEST(EditScript, ApplicationComposes) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    WeightedGraph g = gen::random_graph(6, 0.5, rng());
    for (VertexId v : g.vertices())
      g.set_vertex_weight(v, 1 + static_cast<Weight>(rng() % 3));
    for (Edge e : g.edges())
      g.set_edge_weight(e.u, e.v, 1 + static_cast<Weight>(rng() % 3));

    // Draw a random legal script by simulating it.
    EditScript full;
    WeightedGraph h = g;
    for (int step = 0; step < 5; ++step) {
      const auto vs = h.vertices();
      if (vs.size() < 2)
        break;
      const VertexId a = vs[rng() % vs.size()];
      const VertexId b = vs[rng() % vs.size()];
      EditOp op;
      switch (rng() % 3) {
      case 0:
        op = EditOp::delete_vertex(a);
        break;
      default:
        if (a == b)
          continue;
        op = h.has_edge(a, b) ? EditOp::delete_edge(a, b) : EditOp::add_edge(a, b);
      }
      h = apply_edit_script(h, {{op}}).graph;
      full.ops.push_back(op);
    }
    const std::size_t cut = full.size() == 0 ? 0 : rng() % (full.size() + 1);
    const EditScript first{{full.ops.begin(), full.ops.begin() + static_cast<std::ptrdiff_t>(cut)}};
    const EditScript second{{full.ops.begin() + static_cast<std::ptrdiff_t>(cut), full.ops.end()}};
    const auto a = apply_edit_script(g, first);
    const auto b = apply_edit_script(a.graph, second);
    const auto whole = apply_edit_script(g, concat(first, second));
    EXPECT_EQ(whole.graph, b.graph);
    EXPECT_EQ(whole.graph, h);
    EXPECT_EQ(whole.cost, a.cost + b.cost);
  }
}
