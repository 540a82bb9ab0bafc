#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "instance.hpp"

namespace fptedit {

// One edit. For vertex deletions u == v. Edge endpoints are stored with
// u < v, so the defaulted ordering is the canonical one: kind, then ids.
struct EditOp {
  EditKind kind = EditKind::DeleteVertex;
  VertexId u = 0;
  VertexId v = 0;

  static EditOp delete_vertex(VertexId x) { return {EditKind::DeleteVertex, x, x}; }
  static EditOp delete_edge(VertexId a, VertexId b) {
    Edge e = make_edge(a, b);
    return {EditKind::DeleteEdge, e.u, e.v};
  }
  static EditOp add_edge(VertexId a, VertexId b) {
    Edge e = make_edge(a, b);
    return {EditKind::AddEdge, e.u, e.v};
  }

  auto operator<=>(const EditOp&) const = default;
  bool operator==(const EditOp&) const = default;
};

inline std::string to_string(const EditOp& op) {
  if (op.kind == EditKind::DeleteVertex)
    return "vdel " + std::to_string(op.u);
  return to_string(op.kind) + " " + std::to_string(op.u) + " " + std::to_string(op.v);
}

struct EditScript {
  std::vector<EditOp> ops;

  bool empty() const { return ops.empty(); }
  std::size_t size() const { return ops.size(); }
  bool operator==(const EditScript&) const = default;
};

// Canonical serialization order.
inline EditScript canonical(EditScript s) {
  std::sort(s.ops.begin(), s.ops.end());
  return s;
}

inline EditScript concat(const EditScript& a, const EditScript& b) {
  EditScript out = a;
  out.ops.insert(out.ops.end(), b.ops.begin(), b.ops.end());
  return out;
}

class EditError : public std::runtime_error {
public:
  EditError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const { return step_; }

private:
  std::size_t step_;
};

struct EditResult {
  WeightedGraph graph;
  Weight cost = 0;
};

// Added edges get weight 1 and cost 1; deletions cost the full weight of
// the removed element.
inline EditResult apply_edit_script(const WeightedGraph& g, const EditScript& script,
                                    std::optional<OpSet> allowed = std::nullopt) {
  EditResult result{g, 0};
  WeightedGraph& h = result.graph;
  for (std::size_t i = 0; i < script.ops.size(); ++i) {
    const EditOp& op = script.ops[i];
    if (allowed && !allowed->contains(op.kind))
      throw EditError(i, to_string(op.kind) + " is not an allowed operation");
    switch (op.kind) {
    case EditKind::DeleteVertex:
      if (!h.has_vertex(op.u))
        throw EditError(i, "vertex " + std::to_string(op.u) + " is not present");
      result.cost += h.vertex_weight(op.u);
      h.remove_vertex(op.u);
      break;
    case EditKind::DeleteEdge:
      if (op.u == op.v || !h.has_vertex(op.u) || !h.has_vertex(op.v) || !h.has_edge(op.u, op.v))
        throw EditError(i, "edge " + std::to_string(op.u) + "-" + std::to_string(op.v) + " is not present");
      result.cost += h.edge_weight(op.u, op.v);
      h.remove_edge(op.u, op.v);
      break;
    case EditKind::AddEdge:
      if (op.u == op.v || !h.has_vertex(op.u) || !h.has_vertex(op.v))
        throw EditError(i, "edge addition needs two surviving vertices");
      if (h.has_edge(op.u, op.v))
        throw EditError(i, "vertices " + std::to_string(op.u) + " and " + std::to_string(op.v) + " are already adjacent");
      h.add_edge(op.u, op.v, 1);
      result.cost += 1;
      break;
    }
  }
  return result;
}

} // namespace fptedit
