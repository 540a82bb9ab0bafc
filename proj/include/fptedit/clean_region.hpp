#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "instance.hpp"

namespace fptedit {

// A maximal connected set of vertices whose local constraints hold with
// equality. layers[i] holds the region vertices at distance i+1 from the
// boundary; it is empty when the boundary is.
struct CleanRegion {
  ProblemKind kind = ProblemKind::WEDCE;
  std::vector<VertexId> vertices;
  std::vector<VertexId> boundary;
  std::vector<std::vector<VertexId>> layers;

  // Layer C_i with 1-based i; C_0 is the boundary.
  const std::vector<VertexId>& layer(std::size_t i) const {
    static const std::vector<VertexId> none;
    if (i == 0)
      return boundary;
    return i <= layers.size() ? layers[i - 1] : none;
  }
  std::size_t depth() const { return layers.size(); }
  bool contains(VertexId v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
};

namespace detail {

inline bool exactly(const ValueSet& list, std::int64_t value) {
  return list.is_singleton() && list.min() == value;
}

inline void require_star_kind(const ProblemInstance& inst, const char* who) {
  if (inst.kind == ProblemKind::WDCE)
    throw std::invalid_argument(std::string(who) + ": clean regions are defined for WEDCE, WERE and WSRE");
  if (!is_star_variant(inst))
    throw std::invalid_argument(std::string(who) + ": reduction rules need singleton constraint lists");
}

} // namespace detail

// Whether v meets the clean-vertex condition of the instance's kind.
inline bool is_clean_vertex(const ProblemInstance& inst, VertexId v) {
  const WeightedGraph& g = inst.graph;
  const ConstraintSet& c = inst.constraints;
  if (inst.kind == ProblemKind::WEDCE) {
    for (const auto& [u, w] : g.neighbours(v)) {
      const ValueSet* list = c.edge_list(make_edge(u, v));
      if (!list || !detail::exactly(*list, weighted_edge_degree(g, u, v)))
        return false;
    }
    return true;
  }
  const ValueSet* list = c.vertex_list(v);
  if (!list || !detail::exactly(*list, weighted_degree(g, v)))
    return false;
  for (const auto& [u, w] : g.neighbours(v))
    if (!detail::exactly(c.nu_for(u, v), static_cast<std::int64_t>(common_neighbour_count(g, u, v))))
      return false;
  if (inst.kind == ProblemKind::WSRE) {
    for (VertexId u : g.vertices())
      if (u != v && !g.has_edge(u, v) &&
          !detail::exactly(c.xi_for(u, v), static_cast<std::int64_t>(common_neighbour_count(g, u, v))))
        return false;
  }
  return true;
}

// Maximal clean regions ordered by smallest vertex id, with boundaries and
// distance layers.
inline std::vector<CleanRegion> find_clean_regions(const ProblemInstance& inst) {
  detail::require_star_kind(inst, "find_clean_regions");
  const WeightedGraph& g = inst.graph;
  std::set<VertexId> clean;
  for (VertexId v : g.vertices())
    if (is_clean_vertex(inst, v))
      clean.insert(v);

  std::vector<CleanRegion> regions;
  std::set<VertexId> seen;
  for (VertexId start : clean) {
    if (seen.count(start))
      continue;
    CleanRegion region;
    region.kind = inst.kind;
    std::set<VertexId> boundary;
    std::deque<VertexId> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      VertexId x = queue.front();
      queue.pop_front();
      region.vertices.push_back(x);
      for (const auto& [y, w] : g.neighbours(x)) {
        if (!clean.count(y)) {
          boundary.insert(y);
        } else if (!seen.count(y)) {
          seen.insert(y);
          queue.push_back(y);
        }
      }
    }
    std::sort(region.vertices.begin(), region.vertices.end());
    region.boundary.assign(boundary.begin(), boundary.end());

    if (!boundary.empty()) {
      std::map<VertexId, std::size_t> dist;
      std::deque<VertexId> frontier;
      for (VertexId b : boundary) {
        dist[b] = 0;
        frontier.push_back(b);
      }
      while (!frontier.empty()) {
        VertexId x = frontier.front();
        frontier.pop_front();
        for (const auto& [y, w] : g.neighbours(x)) {
          if (!region.contains(y) || dist.count(y))
            continue;
          dist[y] = dist[x] + 1;
          frontier.push_back(y);
        }
      }
      for (VertexId v : region.vertices) {
        const std::size_t d = dist.at(v);
        if (region.layers.size() < d)
          region.layers.resize(d);
        region.layers[d - 1].push_back(v);
      }
    }
    regions.push_back(std::move(region));
  }
  return regions;
}

} // namespace fptedit
