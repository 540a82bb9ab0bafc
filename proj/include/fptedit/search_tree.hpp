#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "detail/dense_graph.hpp"
#include "edit_script.hpp"
#include "instance.hpp"
#include "kernelize.hpp"
#include "oracle.hpp"

namespace fptedit {

struct SolveReport {
  bool answer = false;
  std::optional<EditScript> witness;
  Weight cost = 0;
  std::uint64_t nodes_visited = 0;
  std::optional<std::uint64_t> tree_bound;
  std::string solver;
};

// Node count of a complete search tree with branching factor b and depth k:
// (b^{k+1} - 1) / (b - 1).
inline std::uint64_t tr(std::uint64_t b, std::uint64_t k) {
  if (b < 2)
    throw std::invalid_argument("tr: branching factor must be at least 2");
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (total > max - power)
      throw std::overflow_error("tr: search tree bound overflows 64 bits");
    total += power;
    if (i < k) {
      if (power > max / b)
        throw std::overflow_error("tr: search tree bound overflows 64 bits");
      power *= b;
    }
  }
  return total;
}

namespace detail {

inline std::optional<std::uint64_t> tree_bound_or_none(std::uint64_t b, std::int64_t k) {
  if (k < 0)
    return 1;
  try {
    return tr(b, static_cast<std::uint64_t>(k));
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

// Collects accepted leaves of a branching search and keeps the canonical
// minimum: least cost, then lexicographically least canonical script.
class WitnessKeeper {
public:
  explicit WitnessKeeper(const DenseGraph& g) : g_(g) {}

  void offer(const std::vector<EditOp>& path) {
    std::vector<EditOp> ops;
    Weight cost = 0;
    for (const EditOp& op : path)
      if (op.kind == EditKind::DeleteVertex) {
        ops.push_back(op);
        cost += g_.vertex_weight(g_.index(op.u));
      }
    for (const EditOp& op : path) {
      if (op.kind != EditKind::DeleteEdge)
        continue;
      const bool endpoint_gone = std::any_of(path.begin(), path.end(), [&](const EditOp& o) {
        return o.kind == EditKind::DeleteVertex && (o.u == op.u || o.u == op.v);
      });
      if (endpoint_gone)
        continue;
      ops.push_back(op);
      cost += g_.edge_weight(g_.index(op.u), g_.index(op.v));
    }
    std::sort(ops.begin(), ops.end());
    if (!best_ || cost < best_cost_ || (cost == best_cost_ && ops < best_->ops)) {
      best_ = EditScript{ops};
      best_cost_ = cost;
    }
  }

  bool found() const { return best_.has_value(); }
  Weight best_cost() const { return best_cost_; }
  const std::optional<EditScript>& best() const { return best_; }

private:
  const DenseGraph& g_;
  std::optional<EditScript> best_;
  Weight best_cost_ = 0;
};

struct Branch {
  EditOp op;
  int a;
  int b;
  Weight cost;
};

inline void require_deletion_ops(const ProblemInstance& inst, ProblemKind kind, const char* who) {
  if (inst.kind != kind)
    throw std::invalid_argument(std::string(who) + ": expected a " + to_string(kind) + " instance");
  if (inst.ops.empty() || !inst.ops.subset_of(kVdelEdel))
    throw std::invalid_argument(std::string(who) + ": operations must be a non-empty subset of {vdel, edel}");
}

// Depth-first exploration shared by both branching solvers. pick_branches
// returns an empty optional when the state satisfies every constraint, and
// the (possibly empty) branching set otherwise.
template <typename Prepare, typename PickBranches>
void explore(DenseGraph& g, std::int64_t budget, std::uint64_t& nodes, WitnessKeeper& keeper, Prepare&& prepare,
             PickBranches&& pick_branches) {
  std::vector<EditOp> path;
  Weight spent = 0;

  auto apply = [&](const Branch& br) {
    if (br.op.kind == EditKind::DeleteVertex)
      g.delete_vertex(br.a);
    else
      g.delete_edge(br.a, br.b);
    path.push_back(br.op);
    spent += br.cost;
  };
  auto undo = [&](const Branch& br) {
    if (br.op.kind == EditKind::DeleteVertex)
      g.restore_vertex(br.a);
    else
      g.restore_edge(br.a, br.b);
    path.pop_back();
    spent -= br.cost;
  };

  std::function<void()> node = [&]() {
    ++nodes;
    std::vector<Branch> forced;
    bool feasible = prepare(budget - spent, forced);
    for (const Branch& br : forced)
      apply(br);
    if (feasible) {
      std::optional<std::vector<Branch>> branches = pick_branches();
      if (!branches) {
        keeper.offer(path);
      } else if (budget - spent > 0) {
        for (const Branch& br : *branches) {
          if (br.cost > budget - spent)
            continue;
          if (keeper.found() && spent + br.cost > keeper.best_cost())
            continue;
          apply(br);
          node();
          undo(br);
        }
      }
    }
    for (auto it = forced.rbegin(); it != forced.rend(); ++it)
      undo(*it);
  };
  node();
}

inline SolveReport finish(const WitnessKeeper& keeper, std::uint64_t nodes, std::optional<std::uint64_t> bound,
                          std::string solver) {
  SolveReport report;
  report.answer = keeper.found();
  report.witness = keeper.best();
  report.cost = keeper.found() ? keeper.best_cost() : 0;
  report.nodes_visited = nodes;
  report.tree_bound = bound;
  report.solver = std::move(solver);
  return report;
}

} // namespace detail

// Bounded search tree for WEDCE with vertex and/or edge deletion. On a
// violating edge uv it branches on deleting u, v, uv, a neighbour x of u or
// v, or one of the first r+1 edges joining {u, v} to the rest of the graph.
// The whole tree is explored so the reported witness is the canonical
// minimum.
inline SolveReport solve_wedce_bst(const ProblemInstance& input) {
  detail::require_deletion_ops(input, ProblemKind::WEDCE, "solve_wedce_bst");
  ProblemInstance inst = input;
  for (VertexId v : input.graph.vertices())
    if (inst.graph.neighbours(v).empty())
      inst.graph.remove_vertex(v);

  const bool vdel = inst.ops.contains(EditKind::DeleteVertex);
  const bool edel = inst.ops.contains(EditKind::DeleteEdge);
  const int bound = effective_bound(inst.constraints);
  const auto branch_width = static_cast<std::size_t>(bound) + 1;
  const std::uint64_t factor = (vdel && !edel) ? static_cast<std::uint64_t>(bound) + 3
                                               : 2 * static_cast<std::uint64_t>(bound) + 5;

  detail::DenseGraph g(inst.graph);
  detail::CompiledConstraints cc(inst, g);
  detail::WitnessKeeper keeper(g);
  std::uint64_t nodes = 0;

  if (inst.k >= 0) {
    auto prepare = [](std::int64_t, std::vector<detail::Branch>&) { return true; };
    auto pick = [&]() -> std::optional<std::vector<detail::Branch>> {
      const int n = g.size();
      for (int u = 0; u < n; ++u) {
        if (!g.alive(u))
          continue;
        int partner = -1;
        g.for_each_neighbour(u, [&](int v) {
          if (partner < 0 && v > u && !cc.edge_ok(g, u, v))
            partner = v;
        });
        if (partner < 0)
          continue;
        const int v = partner;
        // Edges joining {u, v} to other vertices, ordered by far endpoint.
        std::vector<std::pair<int, int>> incident;
        g.for_each_neighbour(u, [&](int x) {
          if (x != v)
            incident.emplace_back(x, u);
        });
        g.for_each_neighbour(v, [&](int x) {
          if (x != u)
            incident.emplace_back(x, v);
        });
        std::sort(incident.begin(), incident.end());
        if (incident.size() > branch_width)
          incident.resize(branch_width);
        std::vector<int> chosen;
        for (const auto& [x, near] : incident)
          if (std::find(chosen.begin(), chosen.end(), x) == chosen.end())
            chosen.push_back(x);

        std::vector<detail::Branch> out;
        if (vdel) {
          out.push_back({EditOp::delete_vertex(g.id(u)), u, u, g.vertex_weight(u)});
          out.push_back({EditOp::delete_vertex(g.id(v)), v, v, g.vertex_weight(v)});
          for (int x : chosen)
            out.push_back({EditOp::delete_vertex(g.id(x)), x, x, g.vertex_weight(x)});
        }
        if (edel) {
          out.push_back({EditOp::delete_edge(g.id(u), g.id(v)), u, v, g.edge_weight(u, v)});
          for (const auto& [x, near] : incident)
            out.push_back({EditOp::delete_edge(g.id(x), g.id(near)), x, near, g.edge_weight(x, near)});
        }
        return out;
      }
      return std::nullopt;
    };
    detail::explore(g, inst.k, nodes, keeper, prepare, pick);
  }
  return detail::finish(keeper, nodes, detail::tree_bound_or_none(factor, inst.k), "wedce-bst");
}

// Bounded search tree for WERE with vertex and/or edge deletion. Vertices
// whose degree is already below every allowed value are deleted without
// branching. A degree violation at v branches on v, up to r+1 neighbours
// of v and the edges to them; a common-neighbour violation on uv branches
// on u, v, uv, up to r+1 common neighbours and their edges to u and v.
inline SolveReport solve_were_bst(const ProblemInstance& inst) {
  detail::require_deletion_ops(inst, ProblemKind::WERE, "solve_were_bst");
  const bool vdel = inst.ops.contains(EditKind::DeleteVertex);
  const bool edel = inst.ops.contains(EditKind::DeleteEdge);
  const int bound = effective_bound(inst.constraints);
  const auto branch_width = static_cast<std::size_t>(bound) + 1;
  const std::uint64_t factor = (vdel && !edel) ? static_cast<std::uint64_t>(bound) + 3
                                               : 3 * static_cast<std::uint64_t>(bound) + 6;

  detail::DenseGraph g(inst.graph);
  detail::CompiledConstraints cc(inst, g);
  detail::WitnessKeeper keeper(g);
  std::uint64_t nodes = 0;

  if (inst.k >= 0) {
    auto prepare = [&](std::int64_t left, std::vector<detail::Branch>& forced) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (int v = 0; v < g.size(); ++v) {
          if (!g.alive(v))
            continue;
          const ValueSet* list = cc.vertex(v);
          if (list && !list->empty() && g.degree(v) >= list->min())
            continue;
          if (!vdel || g.vertex_weight(v) > left) {
            for (auto it = forced.rbegin(); it != forced.rend(); ++it)
              g.restore_vertex(it->a);
            forced.clear();
            return false;
          }
          left -= g.vertex_weight(v);
          forced.push_back({EditOp::delete_vertex(g.id(v)), v, v, g.vertex_weight(v)});
          g.delete_vertex(v);
          changed = true;
        }
      }
      // explore() re-applies the forced deletions itself.
      for (auto it = forced.rbegin(); it != forced.rend(); ++it)
        g.restore_vertex(it->a);
      return true;
    };

    auto pick = [&]() -> std::optional<std::vector<detail::Branch>> {
      const int n = g.size();
      for (int v = 0; v < n; ++v) {
        if (!g.alive(v))
          continue;
        std::vector<detail::Branch> out;
        if (!cc.vertex_ok(g, v)) {
          std::vector<int> chosen;
          g.for_each_neighbour(v, [&](int x) {
            if (chosen.size() < branch_width)
              chosen.push_back(x);
          });
          if (vdel) {
            out.push_back({EditOp::delete_vertex(g.id(v)), v, v, g.vertex_weight(v)});
            for (int x : chosen)
              out.push_back({EditOp::delete_vertex(g.id(x)), x, x, g.vertex_weight(x)});
          }
          if (edel)
            for (int x : chosen)
              out.push_back({EditOp::delete_edge(g.id(v), g.id(x)), v, x, g.edge_weight(v, x)});
          return out;
        }
        int partner = -1;
        g.for_each_neighbour(v, [&](int u) {
          if (partner < 0 && !cc.nu_ok(g, v, u))
            partner = u;
        });
        if (partner < 0)
          continue;
        const int u = std::min(v, partner);
        const int w = std::max(v, partner);
        std::vector<int> chosen;
        g.for_each_common_neighbour(u, w, [&](int x) {
          if (chosen.size() < branch_width)
            chosen.push_back(x);
        });
        if (vdel) {
          out.push_back({EditOp::delete_vertex(g.id(u)), u, u, g.vertex_weight(u)});
          out.push_back({EditOp::delete_vertex(g.id(w)), w, w, g.vertex_weight(w)});
          for (int x : chosen)
            out.push_back({EditOp::delete_vertex(g.id(x)), x, x, g.vertex_weight(x)});
        }
        if (edel) {
          out.push_back({EditOp::delete_edge(g.id(u), g.id(w)), u, w, g.edge_weight(u, w)});
          for (int x : chosen) {
            out.push_back({EditOp::delete_edge(g.id(x), g.id(u)), x, u, g.edge_weight(x, u)});
            out.push_back({EditOp::delete_edge(g.id(x), g.id(w)), x, w, g.edge_weight(x, w)});
          }
        }
        return out;
      }
      return std::nullopt;
    };
    detail::explore(g, inst.k, nodes, keeper, prepare, pick);
  }
  return detail::finish(keeper, nodes, detail::tree_bound_or_none(factor, inst.k), "were-bst");
}

class KernelTooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kExactPhaseVertexLimit = 12;

// WSRE with deletions: kernelize, then solve the kernel exhaustively. The
// kernel witness is lifted back by prefixing the RR1 deletions and kept
// only if it checks out against the original instance.
inline SolveReport solve_wsre(const ProblemInstance& inst) {
  if (inst.kind != ProblemKind::WSRE || !inst.ops.contains(EditKind::DeleteVertex) || !inst.ops.subset_of(kVdelEdel))
    throw std::invalid_argument("solve_wsre: WSRE with {vdel} <= ops <= {vdel, edel}");
  if (!is_star_variant(inst))
    throw std::invalid_argument("solve_wsre: needs singleton constraint lists");
  const KernelTrace trace = kernelize(inst);
  const ProblemInstance& kernel = trace.final_instance;

  SolveReport report;
  report.solver = "wsre-kernel+oracle";
  if (kernel.k < 0)
    return report;
  if (kernel.graph.num_vertices() > kExactPhaseVertexLimit) {
    std::string bound = "n/a";
    try {
      bound = std::to_string(kernel_bound(inst.kind, inst.ops, inst.k, inst.constraints.r));
    } catch (const std::exception&) {
    }
    throw KernelTooLarge("kernel too large for exact phase: " + std::to_string(kernel.graph.num_vertices()) +
                         " vertices (limit " + std::to_string(kExactPhaseVertexLimit) + ", kernel bound " + bound +
                         ")");
  }
  const OracleResult exact = brute_force_solve(kernel);
  report.answer = exact.answer;
  report.nodes_visited = exact.scripts_examined;
  if (!exact.answer)
    return report;

  EditScript lifted;
  for (const TraceStep& step : trace.steps)
    if (step.rule == 1)
      lifted.ops.push_back(EditOp::delete_vertex(step.affected.front()));
  lifted.ops.insert(lifted.ops.end(), exact.witness->ops.begin(), exact.witness->ops.end());
  lifted = canonical(lifted);
  try {
    const EditResult applied = apply_edit_script(inst.graph, lifted, inst.ops);
    if (applied.cost <= inst.k && check_constraints(inst, applied.graph)) {
      report.witness = lifted;
      report.cost = applied.cost;
    }
  } catch (const EditError&) {
  }
  return report;
}

// Picks the strongest applicable solver: the branching algorithms for
// WEDCE and WERE with deletions, kernel + exact search for WSRE*, and the
// exhaustive solver for everything else.
inline SolveReport solve(const ProblemInstance& inst) {
  const bool deletions = !inst.ops.empty() && inst.ops.subset_of(kVdelEdel);
  if (deletions && inst.kind == ProblemKind::WEDCE)
    return solve_wedce_bst(inst);
  if (deletions && inst.kind == ProblemKind::WERE)
    return solve_were_bst(inst);
  if (deletions && inst.kind == ProblemKind::WSRE && inst.ops.contains(EditKind::DeleteVertex) &&
      is_star_variant(inst))
    return solve_wsre(inst);
  const OracleResult exact = brute_force_solve(inst);
  SolveReport report;
  report.answer = exact.answer;
  report.witness = exact.witness;
  report.cost = exact.cost;
  report.nodes_visited = exact.scripts_examined;
  report.solver = "oracle";
  return report;
}

} // namespace fptedit
