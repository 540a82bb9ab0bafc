#pragma once

#include <optional>
#include <string>

#include "graph.hpp"
#include "instance.hpp"

namespace fptedit {

// First constraint violated by g under the instance's constraints, as a
// human-readable message, or nullopt if g satisfies every clause of the
// instance's problem kind. Elements without a list never satisfy.
inline std::optional<std::string> first_violation(const ProblemInstance& inst, const WeightedGraph& g) {
  const ConstraintSet& c = inst.constraints;
  const auto num = [](auto x) { return std::to_string(x); };

  if (inst.kind == ProblemKind::WEDCE) {
    for (Edge e : g.edges()) {
      const Weight d = weighted_edge_degree(g, e.u, e.v);
      const ValueSet* list = c.edge_list(e);
      if (!list || !list->contains(d))
        return "edge " + WeightedGraph::describe(e) + " has edge-degree " + num(d) +
               (list ? " not in " + list->to_string() : " and no list");
    }
    return std::nullopt;
  }

  for (VertexId v : g.vertices()) {
    const Weight d = weighted_degree(g, v);
    const ValueSet* list = c.vertex_list(v);
    if (!list || !list->contains(d))
      return "vertex " + num(v) + " has degree " + num(d) + (list ? " not in " + list->to_string() : " and no list");
  }
  if (inst.kind == ProblemKind::WDCE)
    return std::nullopt;

  for (Edge e : g.edges()) {
    const auto count = common_neighbour_count(g, e.u, e.v);
    const ValueSet& list = c.nu_for(e.u, e.v);
    if (!list.contains(static_cast<std::int64_t>(count)))
      return "edge " + WeightedGraph::describe(e) + " has " + num(count) + " common neighbours, nu allows " +
             list.to_string();
  }
  if (inst.kind == ProblemKind::WERE)
    return std::nullopt;

  const auto vertices = g.vertices();
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const VertexId a = vertices[i];
      const VertexId b = vertices[j];
      if (g.has_edge(a, b))
        continue;
      const auto count = common_neighbour_count(g, a, b);
      const ValueSet& list = c.xi_for(a, b);
      if (!list.contains(static_cast<std::int64_t>(count)))
        return "non-adjacent pair " + num(a) + "," + num(b) + " has " + num(count) + " common neighbours, xi allows " +
               list.to_string();
    }
  return std::nullopt;
}

inline bool check_constraints(const ProblemInstance& inst, const WeightedGraph& g) {
  return !first_violation(inst, g).has_value();
}

} // namespace fptedit
