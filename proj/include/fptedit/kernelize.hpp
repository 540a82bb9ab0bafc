#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "clean_region.hpp"
#include "graph.hpp"
#include "instance.hpp"

namespace fptedit {

struct TraceStep {
  int rule = 0;
  std::vector<VertexId> affected;
  std::int64_t k_before = 0;
  std::int64_t k_after = 0;
  std::string note;

  bool operator==(const TraceStep&) const = default;
};

struct KernelTrace {
  std::vector<TraceStep> steps;
  ProblemInstance final_instance;
};

struct RuleApplication {
  ProblemInstance instance;
  TraceStep step;
};

inline std::string to_string(const TraceStep& s) {
  std::string out = "RR" + std::to_string(s.rule) + " [";
  for (std::size_t i = 0; i < s.affected.size(); ++i)
    out += (i ? " " : "") + std::to_string(s.affected[i]);
  out += "] k " + std::to_string(s.k_before) + " -> " + std::to_string(s.k_after);
  if (!s.note.empty())
    out += " : " + s.note;
  return out;
}

namespace detail {

// Removes v and every constraint entry that mentions it.
inline void erase_vertex(ProblemInstance& inst, VertexId v) {
  ConstraintSet& c = inst.constraints;
  for (const auto& [u, w] : inst.graph.neighbours(v))
    c.delta_e.erase(make_edge(u, v));
  inst.graph.remove_vertex(v);
  c.delta_v.erase(v);
  const auto mentions = [v](const Edge& e) { return e.u == v || e.v == v; };
  std::erase_if(c.nu, [&](const auto& entry) { return mentions(entry.first); });
  std::erase_if(c.xi, [&](const auto& entry) { return mentions(entry.first); });
}

inline bool deletions_only(OpSet ops) { return ops.subset_of(kVdelEdel); }

inline void require_rule_scope(const ProblemInstance& inst, const char* rule) {
  require_star_kind(inst, rule);
  if (!deletions_only(inst.ops))
    throw std::invalid_argument(std::string(rule) + ": reduction rules cover vdel/edel only");
}

inline bool is_clique(const WeightedGraph& g, const std::vector<VertexId>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.has_edge(vs[i], vs[j]))
        return false;
  return true;
}

inline void complete_clique(WeightedGraph& g, const std::vector<VertexId>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.has_edge(vs[i], vs[j]))
        g.add_edge(vs[i], vs[j], 1);
}

inline Weight clamp_weight(std::int64_t k, Weight w) { return std::min<Weight>(k + 1, w); }

// Widens r, lambda and mu so every stored list lies within its declared
// range again. RR1 and the branching solvers already work from the
// effective bound, so widening changes no answers.
inline void widen_bounds(ProblemInstance& inst) {
  ConstraintSet& c = inst.constraints;
  int r = c.r;
  for (const auto& [v, s] : c.delta_v) r = std::max(r, s.max());
  for (const auto& [e, s] : c.delta_e) r = std::max(r, s.max());
  if (c.lambda) {
    int lambda = *c.lambda;
    for (const auto& [e, s] : c.nu) lambda = std::max(lambda, s.max());
    if (!c.nu_default.empty()) lambda = std::max(lambda, c.nu_default.max());
    r = std::max(r, lambda);
    c.lambda = lambda;
  }
  if (c.mu) {
    int mu = *c.mu;
    for (const auto& [e, s] : c.xi) mu = std::max(mu, s.max());
    if (!c.xi_default.empty()) mu = std::max(mu, c.xi_default.max());
    r = std::max(r, mu);
    c.mu = mu;
  }
  c.r = r;
}

} // namespace detail

// Isolated vertices carry no constraint in a WEDCE instance and are dropped
// for free; RR1 can leave some behind.
inline std::optional<RuleApplication> discard_isolated_wedce(const ProblemInstance& inst) {
  if (inst.kind != ProblemKind::WEDCE)
    throw std::invalid_argument("discard_isolated_wedce: WEDCE only");
  std::vector<VertexId> isolated;
  for (VertexId v : inst.graph.vertices())
    if (inst.graph.neighbours(v).empty())
      isolated.push_back(v);
  if (isolated.empty())
    return std::nullopt;
  RuleApplication app{inst, {}};
  for (VertexId v : isolated)
    detail::erase_vertex(app.instance, v);
  app.step = {0, isolated, inst.k, inst.k, "discard isolated vertices"};
  return app;
}

// RR1: a vertex with more than k + r neighbours must be deleted.
inline std::optional<RuleApplication> rr1_high_degree(const ProblemInstance& inst) {
  detail::require_rule_scope(inst, "rr1_high_degree");
  if (!inst.ops.contains(EditKind::DeleteVertex))
    throw std::invalid_argument("rr1_high_degree: needs vertex deletion");
  if (inst.k < 0)
    return std::nullopt;
  const std::int64_t bound = inst.k + effective_bound(inst.constraints);
  for (VertexId v : inst.graph.vertices()) {
    if (static_cast<std::int64_t>(inst.graph.neighbours(v).size()) <= bound)
      continue;
    RuleApplication app{inst, {}};
    const Weight cost = inst.graph.vertex_weight(v);
    detail::erase_vertex(app.instance, v);
    app.instance.k -= cost;
    app.step = {1, {v}, inst.k, app.instance.k, "delete vertex " + std::to_string(v)};
    return app;
  }
  return std::nullopt;
}

// RR2: a clean region with empty boundary is removed without cost.
inline std::optional<RuleApplication> rr2_isolated_clean(const ProblemInstance& inst) {
  detail::require_rule_scope(inst, "rr2_isolated_clean");
  for (const CleanRegion& region : find_clean_regions(inst)) {
    if (!region.boundary.empty())
      continue;
    RuleApplication app{inst, {}};
    for (VertexId v : region.vertices)
      detail::erase_vertex(app.instance, v);
    app.step = {2, region.vertices, inst.k, inst.k, "remove isolated clean region"};
    return app;
  }
  return std::nullopt;
}

// RR3 (WEDCE): cut a clean region below layer L = max(1, 3k) and pin the
// lists of the edges whose edge-degree the cut changes. Layer 0 is the
// boundary. Deletions that matter start next to the boundary, and two of
// them only interact when they lie within distance 3, so a solution of cost
// at most k changes degrees no deeper than layer 3k-1. The edges from layer
// L-1 to layer L therefore have to survive the cut.
inline std::size_t rr3_depth(std::int64_t k) { return std::max<std::size_t>(1, 3 * static_cast<std::size_t>(k)); }

inline std::optional<RuleApplication> rr3_deep_clean_wedce(const ProblemInstance& inst) {
  detail::require_rule_scope(inst, "rr3_deep_clean_wedce");
  if (inst.kind != ProblemKind::WEDCE)
    throw std::invalid_argument("rr3_deep_clean_wedce: WEDCE only");
  if (inst.k < 0)
    return std::nullopt;
  const std::size_t keep = rr3_depth(inst.k);
  for (const CleanRegion& region : find_clean_regions(inst)) {
    if (region.boundary.empty() || region.depth() <= keep)
      continue;
    RuleApplication app{inst, {}};
    std::vector<VertexId> removed;
    for (std::size_t i = keep + 1; i <= region.depth(); ++i)
      for (VertexId v : region.layer(i)) {
        detail::erase_vertex(app.instance, v);
        removed.push_back(v);
      }
    const WeightedGraph& g = app.instance.graph;
    std::set<VertexId> near(region.layer(keep).begin(), region.layer(keep).end());
    near.insert(region.layer(keep - 1).begin(), region.layer(keep - 1).end());
    for (VertexId u : region.layer(keep))
      for (const auto& [v, w] : g.neighbours(u))
        if (near.count(v))
          app.instance.constraints.delta_e[make_edge(u, v)] = ValueSet::singleton(
              static_cast<int>(weighted_edge_degree(g, u, v)));
    std::sort(removed.begin(), removed.end());
    app.step = {3, removed, inst.k, inst.k, "cut layers >= " + std::to_string(keep + 1)};
    return app;
  }
  return std::nullopt;
}

namespace detail {

// A two-vertex region hanging off its boundary by one vertex, with an
// internal edge already clamped, is what contraction produces.
inline bool already_contracted(const ProblemInstance& inst, const CleanRegion& region) {
  if (region.vertices.size() != 2)
    return false;
  const WeightedGraph& g = inst.graph;
  const VertexId a = region.vertices[0];
  const VertexId b = region.vertices[1];
  const bool a_out = g.neighbours(a).size() > 1;
  const bool b_out = g.neighbours(b).size() > 1;
  return !(a_out && b_out) && g.edge_weight(a, b) <= inst.k + 1;
}

} // namespace detail

// RR4 (WEDCE, edel only): contract a clean region to a single edge uv, with
// every boundary vertex attached to u.
inline std::optional<RuleApplication> rr4_contract_clean_wedce_edel(const ProblemInstance& inst) {
  detail::require_rule_scope(inst, "rr4_contract_clean_wedce_edel");
  if (inst.kind != ProblemKind::WEDCE || !(inst.ops == kEdel))
    throw std::invalid_argument("rr4_contract_clean_wedce_edel: WEDCE with edel only");
  if (inst.k < 0)
    return std::nullopt;
  for (const CleanRegion& region : find_clean_regions(inst)) {
    if (region.vertices.size() < 2 || detail::already_contracted(inst, region))
      continue;
    RuleApplication app{inst, {}};
    WeightedGraph& g = app.instance.graph;
    const VertexId u = g.fresh_id();
    const VertexId v = u + 1;

    Weight inside = 0;
    for (VertexId x : region.vertices)
      for (const auto& [y, w] : inst.graph.neighbours(x))
        if (x < y && region.contains(y))
          inside += w;
    std::vector<std::pair<VertexId, Weight>> attach;
    for (VertexId b : region.boundary) {
      Weight sum = 0;
      for (const auto& [y, w] : inst.graph.neighbours(b))
        if (region.contains(y))
          sum += w;
      attach.emplace_back(b, sum);
    }

    for (VertexId x : region.vertices)
      detail::erase_vertex(app.instance, x);
    g.add_vertex(u);
    g.add_vertex(v);
    g.add_edge(u, v, detail::clamp_weight(inst.k, inside));
    for (const auto& [b, sum] : attach)
      g.add_edge(b, u, sum);

    auto& lists = app.instance.constraints.delta_e;
    for (const auto& [b, sum] : attach)
      lists[make_edge(b, u)] = ValueSet::singleton(static_cast<int>(weighted_edge_degree(g, b, u)));
    lists[make_edge(u, v)] = ValueSet::singleton(static_cast<int>(weighted_edge_degree(g, u, v)));
    app.instance.unit_weights = is_unit_weight(g);
    app.step = {4, region.vertices, inst.k, inst.k,
                "contract to edge " + std::to_string(u) + "-" + std::to_string(v)};
    return app;
  }
  return std::nullopt;
}

namespace detail {

// Shared body of RR5 and RR6: keep the first `keep_layers` layers of the
// region as a clique, fold the weight of the rest into the lowest kept
// vertex, then pin every list the rewrite can have changed.
inline RuleApplication shrink_region(const ProblemInstance& inst, const CleanRegion& region,
                                     std::size_t keep_layers, int rule) {
  RuleApplication app{inst, {}};
  ProblemInstance& out = app.instance;
  WeightedGraph& g = out.graph;
  ConstraintSet& c = out.constraints;

  std::vector<VertexId> kept;
  std::vector<VertexId> removed;
  for (std::size_t i = 1; i <= region.depth(); ++i)
    for (VertexId v : region.layer(i))
      (i <= keep_layers ? kept : removed).push_back(v);
  std::sort(kept.begin(), kept.end());
  std::sort(removed.begin(), removed.end());

  Weight folded = 0;
  for (VertexId v : removed) {
    folded += g.vertex_weight(v);
    erase_vertex(out, v);
  }
  complete_clique(g, kept);
  const VertexId anchor = kept.front();
  g.set_vertex_weight(anchor, clamp_weight(inst.k, g.vertex_weight(anchor) + folded));

  for (VertexId v : kept)
    c.delta_v[v] = ValueSet::singleton(static_cast<int>(weighted_degree(g, v)));
  const std::set<VertexId> kept_set(kept.begin(), kept.end());
  for (VertexId v : kept) {
    for (VertexId u : g.vertices()) {
      if (u == v)
        continue;
      const auto count = static_cast<int>(common_neighbour_count(g, u, v));
      if (g.has_edge(u, v))
        c.nu[make_edge(u, v)] = ValueSet::singleton(count);
      else if (rule == 6)
        c.xi[make_edge(u, v)] = ValueSet::singleton(count);
    }
  }
  out.unit_weights = is_unit_weight(g);
  std::vector<VertexId> affected = region.vertices;
  app.step = {rule, affected, inst.k, inst.k,
              "keep " + std::to_string(kept.size()) + " as clique, fold " + std::to_string(removed.size()) +
                  " into " + std::to_string(anchor)};
  return app;
}

inline bool shrink_applies(const ProblemInstance& inst, const CleanRegion& region, std::size_t keep_layers) {
  if (region.boundary.empty())
    return false;
  if (region.depth() > keep_layers)
    return true;
  return !is_clique(inst.graph, region.vertices);
}

} // namespace detail

// RR5 (WERE): shrink a clean region to its first layer.
inline std::optional<RuleApplication> rr5_shrink_were(const ProblemInstance& inst) {
  detail::require_rule_scope(inst, "rr5_shrink_were");
  if (inst.kind != ProblemKind::WERE || !inst.ops.contains(EditKind::DeleteVertex))
    throw std::invalid_argument("rr5_shrink_were: WERE with vdel");
  if (inst.k < 0)
    return std::nullopt;
  for (const CleanRegion& region : find_clean_regions(inst))
    if (detail::shrink_applies(inst, region, 1))
      return detail::shrink_region(inst, region, 1, 5);
  return std::nullopt;
}

// RR6 (WSRE): shrink a clean region to its first two layers.
inline std::optional<RuleApplication> rr6_shrink_wsre(const ProblemInstance& inst) {
  detail::require_rule_scope(inst, "rr6_shrink_wsre");
  if (inst.kind != ProblemKind::WSRE || !inst.ops.contains(EditKind::DeleteVertex))
    throw std::invalid_argument("rr6_shrink_wsre: WSRE with vdel");
  if (inst.k < 0)
    return std::nullopt;
  for (const CleanRegion& region : find_clean_regions(inst))
    if (detail::shrink_applies(inst, region, 2))
      return detail::shrink_region(inst, region, 2, 6);
  return std::nullopt;
}

inline std::optional<RuleApplication> apply_rule(int rule, const ProblemInstance& inst) {
  switch (rule) {
  case 0: return discard_isolated_wedce(inst);
  case 1: return rr1_high_degree(inst);
  case 2: return rr2_isolated_clean(inst);
  case 3: return rr3_deep_clean_wedce(inst);
  case 4: return rr4_contract_clean_wedce_edel(inst);
  case 5: return rr5_shrink_were(inst);
  case 6: return rr6_shrink_wsre(inst);
  default: throw std::invalid_argument("unknown reduction rule " + std::to_string(rule));
  }
}

// Rules used by the fixpoint driver, in priority order.
inline std::vector<int> rule_sequence(const ProblemInstance& inst) {
  detail::require_rule_scope(inst, "kernelize");
  const bool vdel = inst.ops.contains(EditKind::DeleteVertex);
  switch (inst.kind) {
  case ProblemKind::WEDCE:
    return vdel ? std::vector<int>{0, 1, 2, 3} : std::vector<int>{0, 2, 4};
  case ProblemKind::WERE:
    if (!vdel)
      throw std::invalid_argument("kernelize: WERE needs vdel");
    return {1, 2, 5};
  case ProblemKind::WSRE:
    if (!vdel)
      throw std::invalid_argument("kernelize: WSRE needs vdel");
    return {1, 2, 6};
  default:
    throw std::invalid_argument("kernelize: unsupported problem kind");
  }
}

// Applies the rules to exhaustion. Stops early once k is negative, which
// already decides the instance.
inline KernelTrace kernelize(const ProblemInstance& inst) {
  const std::vector<int> rules = rule_sequence(inst);
  KernelTrace trace;
  ProblemInstance current = inst;
  bool progress = true;
  while (progress && current.k >= 0) {
    progress = false;
    for (int rule : rules) {
      if (auto app = apply_rule(rule, current)) {
        trace.steps.push_back(app->step);
        current = std::move(app->instance);
        progress = true;
        break;
      }
    }
  }
  detail::widen_bounds(current);
  current.unit_weights = is_unit_weight(current.graph);
  trace.final_instance = std::move(current);
  return trace;
}

// Re-applies a trace to the instance it was produced from.
inline ProblemInstance replay(const ProblemInstance& original, const std::vector<TraceStep>& steps) {
  ProblemInstance current = original;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    auto app = apply_rule(steps[i].rule, current);
    if (!app || !(app->step == steps[i]))
      throw std::runtime_error("trace step " + std::to_string(i) + " does not replay");
    current = std::move(app->instance);
  }
  detail::widen_bounds(current);
  current.unit_weights = is_unit_weight(current.graph);
  return current;
}

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error("kernel bound overflows 64 bits");
  return a * b;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a)
    throw std::overflow_error("kernel bound overflows 64 bits");
  return a + b;
}

} // namespace detail

// Vertex-count bound on reduced yes-instances for the four kernelized
// (kind, ops) combinations.
inline std::uint64_t kernel_bound(ProblemKind kind, OpSet ops, std::int64_t k, int r) {
  if (k < 0 || r < 0)
    throw std::invalid_argument("kernel_bound: k and r must be non-negative");
  using detail::checked_add;
  using detail::checked_mul;
  const auto K = static_cast<std::uint64_t>(k);
  const auto R = static_cast<std::uint64_t>(r);
  const bool vdel_family = ops == kVdel || ops == kVdelEdel;
  if (kind == ProblemKind::WEDCE && vdel_family) {
    std::uint64_t power = 1;
    for (std::uint64_t i = 0; i < K + 1; ++i)
      power = checked_mul(power, R);
    // k(1 + (k+r)(1 + r^{k+1}))
    return checked_mul(K, checked_add(1, checked_mul(K + R, checked_add(1, power))));
  }
  if (kind == ProblemKind::WEDCE && ops == kEdel)
    return checked_add(checked_mul(2, K), checked_mul(4, checked_mul(K, R)));
  if (kind == ProblemKind::WERE && vdel_family)
    return checked_add(checked_add(K, checked_mul(K, K + R)), checked_mul(checked_mul(K, R), K + R));
  if (kind == ProblemKind::WSRE && vdel_family)
    return checked_add(checked_add(K, checked_mul(K, K + R)),
                       checked_mul(checked_mul(checked_mul(K, R), R + 1), K + R));
  throw std::invalid_argument("kernel_bound: no kernel for " + to_string(kind) + "(" + ops.to_string() + ")");
}

} // namespace fptedit
