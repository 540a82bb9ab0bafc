#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace fptedit {

struct TreeDecomposition {
  std::map<int, std::vector<VertexId>> bags;
  std::vector<std::pair<int, int>> tree;

  int width() const {
    int w = -1;
    for (const auto& [id, bag] : bags)
      w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
  }

  bool operator==(const TreeDecomposition&) const = default;
};

class DecompositionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline bool validate_decomposition(const WeightedGraph& g, const TreeDecomposition& td) {
  if (td.bags.empty())
    return g.num_vertices() == 0;
  // The tree: right number of edges, known endpoints, connected.
  if (td.tree.size() != td.bags.size() - 1)
    return false;
  std::map<int, std::vector<int>> adj;
  for (const auto& [a, b] : td.tree) {
    if (!td.bags.count(a) || !td.bags.count(b) || a == b)
      return false;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::set<int> reached{td.bags.begin()->first};
  std::vector<int> stack{td.bags.begin()->first};
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int s : adj[t])
      if (reached.insert(s).second)
        stack.push_back(s);
  }
  if (reached.size() != td.bags.size())
    return false;

  std::map<VertexId, std::set<int>> holders;
  for (const auto& [id, bag] : td.bags)
    for (VertexId v : bag) {
      if (!g.has_vertex(v))
        return false;
      holders[v].insert(id);
    }
  for (VertexId v : g.vertices())
    if (!holders.count(v))
      return false;
  for (Edge e : g.edges()) {
    const auto& a = holders[e.u];
    const auto& b = holders[e.v];
    if (std::none_of(a.begin(), a.end(), [&](int t) { return b.count(t) > 0; }))
      return false;
  }
  // Bags holding v must form a connected subtree.
  for (const auto& [v, nodes] : holders) {
    std::set<int> seen{*nodes.begin()};
    std::vector<int> todo{*nodes.begin()};
    while (!todo.empty()) {
      int t = todo.back();
      todo.pop_back();
      for (int s : adj[t])
        if (nodes.count(s) && seen.insert(s).second)
          todo.push_back(s);
    }
    if (seen.size() != nodes.size())
      return false;
  }
  return true;
}

// Minimum-degree elimination. Bag i is the i-th eliminated vertex with its
// neighbours at that time; it hangs below the bag of the earliest-eliminated
// of those neighbours, or below bag i+1 if it has none.
inline TreeDecomposition greedy_decomposition(const WeightedGraph& g) {
  TreeDecomposition td;
  std::map<VertexId, std::set<VertexId>> adj;
  for (VertexId v : g.vertices()) {
    auto& row = adj[v];
    for (const auto& [u, w] : g.neighbours(v))
      row.insert(u);
  }
  std::map<VertexId, int> order;
  std::vector<std::set<VertexId>> later;
  int step = 0;
  while (!adj.empty()) {
    auto pick = adj.begin();
    for (auto it = adj.begin(); it != adj.end(); ++it)
      if (it->second.size() < pick->second.size())
        pick = it;
    const VertexId v = pick->first;
    const std::set<VertexId> nb = pick->second;
    std::vector<VertexId> bag{v};
    bag.insert(bag.end(), nb.begin(), nb.end());
    std::sort(bag.begin(), bag.end());
    td.bags[step] = bag;
    for (VertexId a : nb) {
      adj[a].erase(v);
      for (VertexId b : nb)
        if (a != b)
          adj[a].insert(b);
    }
    adj.erase(pick);
    order[v] = step;
    later.push_back(nb);
    ++step;
  }
  for (int i = 0; i + 1 < step; ++i) {
    int parent = i + 1;
    if (!later[i].empty()) {
      parent = step;
      for (VertexId u : later[i])
        parent = std::min(parent, order.at(u));
    }
    td.tree.emplace_back(i, parent);
  }
  return td;
}

enum class NiceKind { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  std::vector<VertexId> bag;
  VertexId v = -1;
  VertexId w = -1;
  std::vector<int> children;
};

// Rooted nice decomposition with explicit edge introductions. The root and
// leaves have empty bags; every graph edge is introduced exactly once, just
// before the first of its endpoints is forgotten.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;
  int width = -1;
};

inline NiceDecomposition make_nice(const WeightedGraph& g, const TreeDecomposition& td) {
  if (!validate_decomposition(g, td))
    throw DecompositionError("invalid tree decomposition");
  NiceDecomposition nice;
  nice.width = td.width();
  std::set<Edge> introduced;

  auto add = [&](NiceNode node) {
    nice.nodes.push_back(std::move(node));
    return static_cast<int>(nice.nodes.size()) - 1;
  };
  auto introduce_vertex = [&](int child, VertexId v) {
    NiceNode node{NiceKind::IntroduceVertex, nice.nodes[child].bag, v, -1, {child}};
    node.bag.insert(std::lower_bound(node.bag.begin(), node.bag.end(), v), v);
    return add(std::move(node));
  };
  auto forget = [&](int child, VertexId v) {
    std::vector<VertexId> bag = nice.nodes[child].bag;
    for (VertexId u : bag) {
      if (u == v || !g.has_edge(u, v) || !introduced.insert(make_edge(u, v)).second)
        continue;
      child = add({NiceKind::IntroduceEdge, bag, std::min(u, v), std::max(u, v), {child}});
    }
    bag.erase(std::find(bag.begin(), bag.end(), v));
    return add({NiceKind::Forget, bag, v, -1, {child}});
  };
  // Rewrites the bag of child into target by forgetting, then introducing.
  auto morph = [&](int child, const std::vector<VertexId>& target) {
    const std::vector<VertexId> from = nice.nodes[child].bag;
    for (VertexId v : from)
      if (!std::binary_search(target.begin(), target.end(), v))
        child = forget(child, v);
    for (VertexId v : target)
      if (!std::binary_search(from.begin(), from.end(), v))
        child = introduce_vertex(child, v);
    return child;
  };

  if (td.bags.empty()) {
    nice.root = add({NiceKind::Leaf, {}, -1, -1, {}});
    return nice;
  }
  std::map<int, std::vector<int>> adj;
  for (const auto& [a, b] : td.tree) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::map<int, std::vector<VertexId>> sorted_bags;
  for (const auto& [id, bag] : td.bags) {
    auto s = bag;
    std::sort(s.begin(), s.end());
    sorted_bags[id] = s;
  }

  std::function<int(int, int)> build = [&](int t, int parent) {
    const auto& bag = sorted_bags[t];
    std::vector<int> branches;
    for (int c : adj[t])
      if (c != parent)
        branches.push_back(morph(build(c, t), bag));
    if (branches.empty())
      branches.push_back(morph(add({NiceKind::Leaf, {}, -1, -1, {}}), bag));
    int acc = branches.front();
    for (std::size_t i = 1; i < branches.size(); ++i)
      acc = add({NiceKind::Join, bag, -1, -1, {acc, branches[i]}});
    return acc;
  };
  const int top = td.bags.begin()->first;
  nice.root = morph(build(top, top), {});
  return nice;
}

namespace detail {

// Per-bag DP state: one entry per bag vertex (-1 = not chosen, otherwise the
// number of chosen neighbours counted so far), then a nonempty flag.
using RegularState = std::vector<std::int8_t>;

inline bool regular_subgraph_dp(const WeightedGraph& g, int r, const TreeDecomposition& td, bool induced) {
  if (!is_unit_weight(g))
    throw std::invalid_argument("treewidth solvers need a unit-weight graph");
  if (r < 0)
    throw std::invalid_argument("r must be non-negative");
  if (!validate_decomposition(g, td))
    throw DecompositionError("invalid tree decomposition");
  if (r > td.width())
    return false;
  if (r > 126)
    throw std::invalid_argument("r too large for the dynamic program");
  const NiceDecomposition nice = make_nice(g, td);

  std::vector<std::set<RegularState>> table(nice.nodes.size());
  // Children always precede their parent in nodes, so index order works.
  for (std::size_t t = 0; t < nice.nodes.size(); ++t) {
    const NiceNode& node = nice.nodes[t];
    std::set<RegularState>& out = table[t];
    auto position = [&](const std::vector<VertexId>& bag, VertexId v) {
      return static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    };
    switch (node.kind) {
    case NiceKind::Leaf:
      out.insert(RegularState{0});
      break;
    case NiceKind::IntroduceVertex: {
      const std::size_t p = position(node.bag, node.v);
      for (RegularState s : table[node.children[0]]) {
        s.insert(s.begin() + static_cast<std::ptrdiff_t>(p), -1);
        out.insert(s);
        s[p] = 0;
        s.back() = 1;
        out.insert(s);
      }
      break;
    }
    case NiceKind::IntroduceEdge: {
      const std::size_t a = position(node.bag, node.v);
      const std::size_t b = position(node.bag, node.w);
      for (RegularState s : table[node.children[0]]) {
        if (s[a] < 0 || s[b] < 0) {
          out.insert(s);
          continue;
        }
        if (!induced)
          out.insert(s);
        if (s[a] < r && s[b] < r) {
          ++s[a];
          ++s[b];
          out.insert(s);
        }
      }
      break;
    }
    case NiceKind::Forget: {
      const std::size_t p = position(nice.nodes[node.children[0]].bag, node.v);
      for (RegularState s : table[node.children[0]]) {
        if (s[p] >= 0 && s[p] != r)
          continue;
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(p));
        out.insert(s);
      }
      break;
    }
    case NiceKind::Join: {
      const auto& left = table[node.children[0]];
      const auto& right = table[node.children[1]];
      for (const RegularState& x : left)
        for (const RegularState& y : right) {
          RegularState s(x.size());
          bool ok = true;
          for (std::size_t i = 0; ok && i + 1 < x.size(); ++i) {
            if ((x[i] < 0) != (y[i] < 0))
              ok = false;
            else if (x[i] < 0)
              s[i] = -1;
            else if (x[i] + y[i] > r)
              ok = false;
            else
              s[i] = static_cast<std::int8_t>(x[i] + y[i]);
          }
          if (!ok)
            continue;
          s.back() = static_cast<std::int8_t>(x.back() | y.back());
          out.insert(s);
        }
      break;
    }
    }
    for (int c : node.children)
      table[c].clear();
  }
  return table[nice.root].count(RegularState{1}) > 0;
}

} // namespace detail

// Does g have a nonempty induced subgraph that is r-regular?
inline bool solve_induced_regular(const WeightedGraph& g, int r, const TreeDecomposition& td) {
  return detail::regular_subgraph_dp(g, r, td, true);
}

// Does g have a nonempty r-regular subgraph, edges optional?
inline bool solve_regular_subgraph(const WeightedGraph& g, int r, const TreeDecomposition& td) {
  return detail::regular_subgraph_dp(g, r, td, false);
}

// With edge addition available any r+1 vertices can be turned into K_{r+1}.
inline bool solve_with_addition(const WeightedGraph& g, int r) {
  if (!is_unit_weight(g))
    throw std::invalid_argument("treewidth solvers need a unit-weight graph");
  if (r < 0)
    throw std::invalid_argument("r must be non-negative");
  return g.num_vertices() >= static_cast<std::size_t>(r) + 1;
}

} // namespace fptedit
