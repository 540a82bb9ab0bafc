#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "graph.hpp"
#include "value_set.hpp"

namespace fptedit {

enum class ProblemKind { WDCE, WEDCE, WERE, WSRE };

inline std::string to_string(ProblemKind kind) {
  switch (kind) {
  case ProblemKind::WDCE: return "WDCE";
  case ProblemKind::WEDCE: return "WEDCE";
  case ProblemKind::WERE: return "WERE";
  case ProblemKind::WSRE: return "WSRE";
  }
  return "?";
}

inline std::optional<ProblemKind> parse_problem_kind(const std::string& s) {
  if (s == "WDCE") return ProblemKind::WDCE;
  if (s == "WEDCE") return ProblemKind::WEDCE;
  if (s == "WERE") return ProblemKind::WERE;
  if (s == "WSRE") return ProblemKind::WSRE;
  return std::nullopt;
}

// Declaration order is the canonical script order: vdel < edel < eadd.
enum class EditKind : std::uint8_t { DeleteVertex, DeleteEdge, AddEdge };

inline std::string to_string(EditKind kind) {
  switch (kind) {
  case EditKind::DeleteVertex: return "vdel";
  case EditKind::DeleteEdge: return "edel";
  case EditKind::AddEdge: return "eadd";
  }
  return "?";
}

inline std::optional<EditKind> parse_edit_kind(const std::string& s) {
  if (s == "vdel") return EditKind::DeleteVertex;
  if (s == "edel") return EditKind::DeleteEdge;
  if (s == "eadd") return EditKind::AddEdge;
  return std::nullopt;
}

// Subset of {vdel, edel, eadd}.
class OpSet {
public:
  constexpr OpSet() = default;
  constexpr OpSet(std::initializer_list<EditKind> kinds) {
    for (EditKind k : kinds)
      bits_ |= bit(k);
  }

  constexpr bool contains(EditKind k) const { return (bits_ & bit(k)) != 0; }
  constexpr void insert(EditKind k) { bits_ |= bit(k); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool subset_of(OpSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool operator==(const OpSet&) const = default;

  std::string to_string() const {
    std::string out;
    for (EditKind k : {EditKind::DeleteVertex, EditKind::DeleteEdge, EditKind::AddEdge})
      if (contains(k)) {
        if (!out.empty())
          out += ' ';
        out += fptedit::to_string(k);
      }
    return out;
  }

private:
  static constexpr std::uint8_t bit(EditKind k) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); }
  std::uint8_t bits_ = 0;
};

inline constexpr OpSet kVdel{EditKind::DeleteVertex};
inline constexpr OpSet kEdel{EditKind::DeleteEdge};
inline constexpr OpSet kVdelEdel{EditKind::DeleteVertex, EditKind::DeleteEdge};

// The constraint functions of all four problem kinds. delta_v is used by
// WDCE/WERE/WSRE, delta_e by WEDCE, nu by WERE/WSRE (adjacent pairs) and xi
// by WSRE (non-adjacent pairs). Pairs missing from nu/xi take the default.
struct ConstraintSet {
  int r = 0;
  std::optional<int> lambda;
  std::optional<int> mu;
  std::map<VertexId, ValueSet> delta_v;
  std::map<Edge, ValueSet> delta_e;
  std::map<Edge, ValueSet> nu;
  std::map<Edge, ValueSet> xi;
  ValueSet nu_default;
  ValueSet xi_default;

  const ValueSet* vertex_list(VertexId v) const {
    auto it = delta_v.find(v);
    return it == delta_v.end() ? nullptr : &it->second;
  }

  const ValueSet* edge_list(Edge e) const {
    auto it = delta_e.find(e);
    return it == delta_e.end() ? nullptr : &it->second;
  }

  const ValueSet& nu_for(VertexId a, VertexId b) const {
    auto it = nu.find(make_edge(a, b));
    return it == nu.end() ? nu_default : it->second;
  }

  const ValueSet& xi_for(VertexId a, VertexId b) const {
    auto it = xi.find(make_edge(a, b));
    return it == xi.end() ? xi_default : it->second;
  }

  bool operator==(const ConstraintSet&) const = default;
};

struct ProblemInstance {
  ProblemKind kind = ProblemKind::WDCE;
  WeightedGraph graph;
  ConstraintSet constraints;
  OpSet ops;
  std::int64_t k = 0;
  bool unit_weights = true;

  bool operator==(const ProblemInstance&) const = default;
};

class InstanceError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline bool uses_vertex_lists(ProblemKind kind) { return kind != ProblemKind::WEDCE; }
inline bool uses_nu(ProblemKind kind) { return kind == ProblemKind::WERE || kind == ProblemKind::WSRE; }
inline bool uses_xi(ProblemKind kind) { return kind == ProblemKind::WSRE; }

// Largest value any degree or neighbourhood list can demand, at least r.
// Equals r on freshly loaded instances; kernelization patches may exceed it.
inline int effective_bound(const ConstraintSet& c) {
  int bound = c.r;
  for (const auto& [v, s] : c.delta_v)
    if (!s.empty()) bound = std::max(bound, s.max());
  for (const auto& [e, s] : c.delta_e)
    if (!s.empty()) bound = std::max(bound, s.max());
  for (const auto& [e, s] : c.nu)
    if (!s.empty()) bound = std::max(bound, s.max());
  if (!c.nu_default.empty())
    bound = std::max(bound, c.nu_default.max());
  return bound;
}

// All constraint lists that the problem kind consults are singletons.
inline bool is_star_variant(const ProblemInstance& inst) {
  const ConstraintSet& c = inst.constraints;
  if (inst.kind == ProblemKind::WEDCE) {
    for (const auto& [e, s] : c.delta_e)
      if (!s.is_singleton()) return false;
    return true;
  }
  for (const auto& [v, s] : c.delta_v)
    if (!s.is_singleton()) return false;
  if (uses_nu(inst.kind)) {
    if (!c.nu_default.is_singleton()) return false;
    for (const auto& [e, s] : c.nu)
      if (!s.is_singleton()) return false;
  }
  if (uses_xi(inst.kind)) {
    if (!c.xi_default.is_singleton()) return false;
    for (const auto& [e, s] : c.xi)
      if (!s.is_singleton()) return false;
  }
  return true;
}

// Structural invariants of a problem instance. Range checks against r,
// lambda and mu are the parser's job, since kernelization may legitimately
// patch lists beyond the declared bounds.
inline void validate(const ProblemInstance& inst) {
  const ConstraintSet& c = inst.constraints;
  const WeightedGraph& g = inst.graph;
  if (inst.ops.empty())
    throw InstanceError("operation set is empty");
  if (inst.kind == ProblemKind::WEDCE && inst.ops.contains(EditKind::AddEdge))
    throw InstanceError("edge addition is not defined for WEDCE");
  if (inst.unit_weights && !is_unit_weight(g))
    throw InstanceError("instance is flagged unit-weight but carries weights other than 1");
  if (c.r < 0)
    throw InstanceError("r must be non-negative");
  if (c.lambda && *c.lambda > c.r)
    throw InstanceError("lambda exceeds r");
  if (c.mu && *c.mu > c.r)
    throw InstanceError("mu exceeds r");
  if (uses_nu(inst.kind) && !c.lambda)
    throw InstanceError(to_string(inst.kind) + " needs lambda");
  if (uses_xi(inst.kind) && !c.mu)
    throw InstanceError("WSRE needs mu");
  auto check_nonempty = [](const ValueSet& s, const std::string& what) {
    if (s.empty())
      throw InstanceError("empty list on " + what);
  };
  if (uses_vertex_lists(inst.kind)) {
    for (VertexId v : g.vertices()) {
      const ValueSet* s = c.vertex_list(v);
      if (!s)
        throw InstanceError("vertex " + std::to_string(v) + " has no degree list");
      check_nonempty(*s, "vertex " + std::to_string(v));
    }
  } else {
    for (Edge e : g.edges()) {
      const ValueSet* s = c.edge_list(e);
      if (!s)
        throw InstanceError("edge " + WeightedGraph::describe(e) + " has no edge-degree list");
      check_nonempty(*s, "edge " + WeightedGraph::describe(e));
    }
  }
  if (uses_nu(inst.kind))
    check_nonempty(c.nu_default, "default nu");
  if (uses_xi(inst.kind))
    check_nonempty(c.xi_default, "default xi");
}

// Instance whose every list is the singleton {r} (or {lambda}, {mu}). WEDCE
// instances drop isolated vertices, which carry no constraint.
inline ProblemInstance uniform_instance(WeightedGraph g, ProblemKind kind, OpSet ops, std::int64_t k, int r,
                                        int lambda = 0, int mu = 0) {
  ProblemInstance inst;
  inst.kind = kind;
  inst.ops = ops;
  inst.k = k;
  inst.constraints.r = r;
  if (kind == ProblemKind::WEDCE) {
    for (VertexId v : g.vertices())
      if (g.neighbours(v).empty())
        g.remove_vertex(v);
    for (Edge e : g.edges())
      inst.constraints.delta_e[e] = ValueSet::singleton(r);
  } else {
    for (VertexId v : g.vertices())
      inst.constraints.delta_v[v] = ValueSet::singleton(r);
  }
  if (uses_nu(kind)) {
    inst.constraints.lambda = lambda;
    inst.constraints.nu_default = ValueSet::singleton(lambda);
  }
  if (uses_xi(kind)) {
    inst.constraints.mu = mu;
    inst.constraints.xi_default = ValueSet::singleton(mu);
  }
  inst.graph = std::move(g);
  inst.unit_weights = is_unit_weight(inst.graph);
  return inst;
}

} // namespace fptedit
