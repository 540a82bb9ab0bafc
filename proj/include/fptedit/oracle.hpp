#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "detail/dense_graph.hpp"
#include "edit_script.hpp"
#include "instance.hpp"

namespace fptedit {

struct OracleResult {
  bool answer = false;
  // Minimum-cost satisfying script, lexicographically least among those
  // under the canonical op order. Present iff answer is true.
  std::optional<EditScript> witness;
  Weight cost = 0;
  std::uint64_t scripts_examined = 0;
  std::optional<std::string> warning;
};

inline constexpr std::size_t kOracleVertexEnvelope = 10;
inline constexpr std::int64_t kOracleBudgetEnvelope = 6;

// Exhaustive search over every set of legal edits with total cost <= k.
// Edit sets are visited in lexicographic order of their canonical
// sequences, so the first set found at a given cost is the canonical one.
inline OracleResult brute_force_solve(const ProblemInstance& inst) {
  OracleResult result;
  if (inst.graph.num_vertices() > kOracleVertexEnvelope || inst.k > kOracleBudgetEnvelope)
    result.warning = "instance exceeds the exhaustive solver's intended envelope (|V| <= " +
                     std::to_string(kOracleVertexEnvelope) + ", k <= " + std::to_string(kOracleBudgetEnvelope) +
                     "); this may be slow";
  if (inst.k < 0)
    return result;

  detail::DenseGraph g(inst.graph);
  detail::CompiledConstraints cc(inst, g);
  const int n = g.size();

  struct Element {
    EditOp op;
    Weight cost;
    int a;
    int b;
  };
  std::vector<Element> elements;
  if (inst.ops.contains(EditKind::DeleteVertex))
    for (int i = 0; i < n; ++i)
      elements.push_back({EditOp::delete_vertex(g.id(i)), g.vertex_weight(i), i, i});
  if (inst.ops.contains(EditKind::DeleteEdge))
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (g.adjacent(i, j))
          elements.push_back({EditOp::delete_edge(g.id(i), g.id(j)), g.edge_weight(i, j), i, j});
  if (inst.ops.contains(EditKind::AddEdge))
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!g.originally_adjacent(i, j))
          elements.push_back({EditOp::add_edge(g.id(i), g.id(j)), 1, i, j});

  std::vector<int> chosen;
  std::vector<int> best;
  Weight best_cost = -1;
  const Weight budget = inst.k;

  std::function<void(std::size_t, Weight)> visit = [&](std::size_t start, Weight cost) {
    ++result.scripts_examined;
    if (cc.satisfied(g) && (best_cost < 0 || cost < best_cost)) {
      best_cost = cost;
      best = chosen;
    }
    for (std::size_t t = start; t < elements.size(); ++t) {
      const Element& e = elements[t];
      const Weight next = cost + e.cost;
      if (next > budget || (best_cost >= 0 && next >= best_cost))
        continue;
      switch (e.op.kind) {
      case EditKind::DeleteVertex:
        g.delete_vertex(e.a);
        chosen.push_back(static_cast<int>(t));
        visit(t + 1, next);
        chosen.pop_back();
        g.restore_vertex(e.a);
        break;
      case EditKind::DeleteEdge:
        if (!g.alive(e.a) || !g.alive(e.b))
          break;
        g.delete_edge(e.a, e.b);
        chosen.push_back(static_cast<int>(t));
        visit(t + 1, next);
        chosen.pop_back();
        g.restore_edge(e.a, e.b);
        break;
      case EditKind::AddEdge:
        if (!g.alive(e.a) || !g.alive(e.b))
          break;
        g.add_edge(e.a, e.b, 1);
        chosen.push_back(static_cast<int>(t));
        visit(t + 1, next);
        chosen.pop_back();
        g.remove_added_edge(e.a, e.b);
        break;
      }
    }
  };
  visit(0, 0);

  if (best_cost >= 0) {
    result.answer = true;
    result.cost = best_cost;
    EditScript script;
    for (int t : best)
      script.ops.push_back(elements[t].op);
    result.witness = script;
  }
  return result;
}

inline constexpr int kMaxLabeledGraphVertices = 6;

// Calls f on every unit-weight labelled graph with vertex set {0..n-1}.
// Graph number m has edge {i,j} iff bit t of m is set, where t indexes the
// pairs (0,1), (0,2), ..., (n-2,n-1).
template <typename F> void for_each_labeled_graph(int n, F&& f) {
  if (n < 0 || n > kMaxLabeledGraphVertices)
    throw std::invalid_argument("labelled graph enumeration is limited to 0 <= n <= " +
                                std::to_string(kMaxLabeledGraphVertices));
  std::vector<Edge> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      pairs.push_back({i, j});
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    WeightedGraph g;
    for (int i = 0; i < n; ++i)
      g.add_vertex(i);
    for (std::size_t t = 0; t < pairs.size(); ++t)
      if ((mask >> t) & 1u)
        g.add_edge(pairs[t].u, pairs[t].v);
    f(g);
  }
}

inline std::vector<WeightedGraph> enumerate_labeled_graphs(int n) {
  std::vector<WeightedGraph> out;
  for_each_labeled_graph(n, [&](const WeightedGraph& g) { out.push_back(g); });
  return out;
}

} // namespace fptedit
