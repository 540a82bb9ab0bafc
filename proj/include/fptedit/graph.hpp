#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fptedit {

using VertexId = int;
using Weight = std::int64_t;

// Unordered vertex pair, stored with u < v. Used both for edges and for the
// pairs that carry common-neighbour constraints.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

class GraphError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline Edge make_edge(VertexId a, VertexId b) {
  if (a == b)
    throw GraphError("self-loop on vertex " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Simple undirected graph with positive integer weights on vertices and
// edges. Vertex ids are caller-chosen and stable: removing a vertex never
// frees its id for fresh_id().
class WeightedGraph {
public:
  using Neighbourhood = std::map<VertexId, Weight>;

  void add_vertex(VertexId v, Weight weight = 1) {
    if (weight < 1)
      throw GraphError("vertex " + std::to_string(v) + " needs a positive weight");
    if (has_vertex(v))
      throw GraphError("duplicate vertex " + std::to_string(v));
    vertices_.emplace(v, weight);
    adjacency_.emplace(v, Neighbourhood{});
    next_id_ = std::max(next_id_, v + 1);
  }

  void add_edge(VertexId a, VertexId b, Weight weight = 1) {
    Edge e = make_edge(a, b);
    require_vertex(e.u);
    require_vertex(e.v);
    if (weight < 1)
      throw GraphError("edge " + describe(e) + " needs a positive weight");
    if (has_edge(e.u, e.v))
      throw GraphError("duplicate edge " + describe(e));
    adjacency_[e.u][e.v] = weight;
    adjacency_[e.v][e.u] = weight;
    ++num_edges_;
  }

  // Removes v together with its incident edges.
  void remove_vertex(VertexId v) {
    require_vertex(v);
    for (const auto& [w, weight] : adjacency_.at(v)) {
      adjacency_.at(w).erase(v);
      --num_edges_;
    }
    adjacency_.erase(v);
    vertices_.erase(v);
  }

  void remove_edge(VertexId a, VertexId b) {
    Edge e = make_edge(a, b);
    if (!has_edge(e.u, e.v))
      throw GraphError("no edge " + describe(e));
    adjacency_.at(e.u).erase(e.v);
    adjacency_.at(e.v).erase(e.u);
    --num_edges_;
  }

  bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }

  bool has_edge(VertexId a, VertexId b) const {
    auto it = adjacency_.find(a);
    return it != adjacency_.end() && it->second.count(b) != 0;
  }

  Weight vertex_weight(VertexId v) const {
    require_vertex(v);
    return vertices_.at(v);
  }

  Weight edge_weight(VertexId a, VertexId b) const {
    auto it = adjacency_.find(a);
    if (it == adjacency_.end() || it->second.count(b) == 0)
      throw GraphError("no edge " + std::to_string(a) + "-" + std::to_string(b));
    return it->second.at(b);
  }

  void set_vertex_weight(VertexId v, Weight weight) {
    require_vertex(v);
    if (weight < 1)
      throw GraphError("vertex " + std::to_string(v) + " needs a positive weight");
    vertices_[v] = weight;
  }

  void set_edge_weight(VertexId a, VertexId b, Weight weight) {
    if (!has_edge(a, b))
      throw GraphError("no edge " + std::to_string(a) + "-" + std::to_string(b));
    if (weight < 1)
      throw GraphError("edge weights must be positive");
    adjacency_[a][b] = weight;
    adjacency_[b][a] = weight;
  }

  const Neighbourhood& neighbours(VertexId v) const {
    require_vertex(v);
    return adjacency_.at(v);
  }

  const std::map<VertexId, Weight>& vertex_weights() const { return vertices_; }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(vertices_.size());
    for (const auto& [v, w] : vertices_)
      out.push_back(v);
    return out;
  }

  // Edges in lexicographic (u, v) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (const auto& [u, nbrs] : adjacency_)
      for (auto it = nbrs.upper_bound(u); it != nbrs.end(); ++it)
        out.push_back(Edge{u, it->first});
    return out;
  }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  // An id that has never been used by this graph.
  VertexId fresh_id() const { return next_id_; }

  void require_vertex(VertexId v) const {
    if (!has_vertex(v))
      throw GraphError("unknown vertex " + std::to_string(v));
  }

  // Structural equality: same vertices, edges and weights.
  bool operator==(const WeightedGraph& other) const {
    return vertices_ == other.vertices_ && adjacency_ == other.adjacency_;
  }

  static std::string describe(Edge e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

private:
  std::map<VertexId, Weight> vertices_;
  std::map<VertexId, Neighbourhood> adjacency_;
  std::size_t num_edges_ = 0;
  VertexId next_id_ = 0;
};

inline Weight weighted_degree(const WeightedGraph& g, VertexId v) {
  Weight sum = 0;
  for (const auto& [w, weight] : g.neighbours(v))
    sum += weight;
  return sum;
}

inline Weight weighted_edge_degree(const WeightedGraph& g, VertexId u, VertexId v) {
  if (!g.has_edge(u, v))
    throw GraphError("edge-degree of non-edge " + std::to_string(u) + "-" + std::to_string(v));
  return weighted_degree(g, u) + weighted_degree(g, v);
}

// |N(u) ∩ N(v)|, ignoring weights. u and v need not be adjacent.
inline std::size_t common_neighbour_count(const WeightedGraph& g, VertexId u, VertexId v) {
  if (u == v)
    throw GraphError("common neighbours of a vertex with itself");
  const auto& nu = g.neighbours(u);
  const auto& nv = g.neighbours(v);
  std::size_t count = 0;
  auto a = nu.begin();
  auto b = nv.begin();
  while (a != nu.end() && b != nv.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

inline bool is_unit_weight(const WeightedGraph& g) {
  for (const auto& [v, w] : g.vertex_weights())
    if (w != 1)
      return false;
  for (VertexId v : g.vertices())
    for (const auto& [u, w] : g.neighbours(v))
      if (w != 1)
        return false;
  return true;
}

// Unit-weight line graph. Vertex i corresponds to the i-th edge of g.edges().
inline WeightedGraph line_graph(const WeightedGraph& g) {
  const auto edges = g.edges();
  WeightedGraph out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    out.add_vertex(static_cast<VertexId>(i));
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& a = edges[i];
      const Edge& b = edges[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
        out.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    }
  return out;
}

} // namespace fptedit
