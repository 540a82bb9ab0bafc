#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "../graph.hpp"
#include "../instance.hpp"

namespace fptedit::detail {

// Index-based working copy of a WeightedGraph for the exhaustive and
// branching solvers. Adjacency rows are bitsets; every mutation has an
// inverse so searches can undo in LIFO order.
class DenseGraph {
public:
  explicit DenseGraph(const WeightedGraph& g)
      : ids_(g.vertices()), n_(static_cast<int>(ids_.size())), words_((n_ + 63) / 64),
        bits_(static_cast<std::size_t>(n_) * words_, 0), weight_(static_cast<std::size_t>(n_) * n_, 0),
        original_(static_cast<std::size_t>(n_) * n_, 0), vweight_(n_), degree_(n_, 0), alive_(n_, 1) {
    for (int i = 0; i < n_; ++i)
      vweight_[i] = g.vertex_weight(ids_[i]);
    for (Edge e : g.edges()) {
      const int a = index(e.u);
      const int b = index(e.v);
      const Weight w = g.edge_weight(e.u, e.v);
      set_bit(a, b);
      set_bit(b, a);
      weight_[pos(a, b)] = weight_[pos(b, a)] = w;
      original_[pos(a, b)] = original_[pos(b, a)] = 1;
      degree_[a] += w;
      degree_[b] += w;
    }
  }

  int size() const { return n_; }
  VertexId id(int i) const { return ids_[i]; }
  int index(VertexId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    return (it == ids_.end() || *it != v) ? -1 : static_cast<int>(it - ids_.begin());
  }

  bool alive(int i) const { return alive_[i] != 0; }
  bool adjacent(int i, int j) const { return (bits_[row(i) + j / 64] >> (j % 64)) & 1u; }
  bool originally_adjacent(int i, int j) const { return original_[pos(i, j)] != 0; }
  Weight edge_weight(int i, int j) const { return weight_[pos(i, j)]; }
  Weight vertex_weight(int i) const { return vweight_[i]; }
  Weight degree(int i) const { return degree_[i]; }

  int common(int i, int j) const {
    int count = 0;
    for (int w = 0; w < words_; ++w)
      count += std::popcount(bits_[row(i) + w] & bits_[row(j) + w]);
    return count;
  }

  // Neighbours of i in increasing index order.
  template <typename F> void for_each_neighbour(int i, F&& f) const {
    for (int w = 0; w < words_; ++w) {
      std::uint64_t word = bits_[row(i) + w];
      while (word) {
        const int b = std::countr_zero(word);
        word &= word - 1;
        f(w * 64 + b);
      }
    }
  }

  template <typename F> void for_each_common_neighbour(int i, int j, F&& f) const {
    for (int w = 0; w < words_; ++w) {
      std::uint64_t word = bits_[row(i) + w] & bits_[row(j) + w];
      while (word) {
        const int b = std::countr_zero(word);
        word &= word - 1;
        f(w * 64 + b);
      }
    }
  }

  void delete_vertex(int i) {
    saved_rows_.insert(saved_rows_.end(), bits_.begin() + row(i), bits_.begin() + row(i) + words_);
    for_each_neighbour(i, [&](int j) {
      clear_bit(j, i);
      degree_[j] -= weight_[pos(i, j)];
    });
    std::fill(bits_.begin() + row(i), bits_.begin() + row(i) + words_, 0);
    degree_[i] = 0;
    alive_[i] = 0;
  }

  // Undoes the most recent delete_vertex, which must have been on i.
  void restore_vertex(int i) {
    std::copy(saved_rows_.end() - words_, saved_rows_.end(), bits_.begin() + row(i));
    saved_rows_.resize(saved_rows_.size() - words_);
    alive_[i] = 1;
    for_each_neighbour(i, [&](int j) {
      set_bit(j, i);
      degree_[j] += weight_[pos(i, j)];
      degree_[i] += weight_[pos(i, j)];
    });
  }

  void delete_edge(int i, int j) {
    clear_bit(i, j);
    clear_bit(j, i);
    degree_[i] -= weight_[pos(i, j)];
    degree_[j] -= weight_[pos(i, j)];
  }

  void restore_edge(int i, int j) {
    set_bit(i, j);
    set_bit(j, i);
    degree_[i] += weight_[pos(i, j)];
    degree_[j] += weight_[pos(i, j)];
  }

  void add_edge(int i, int j, Weight w) {
    weight_[pos(i, j)] = weight_[pos(j, i)] = w;
    restore_edge(i, j);
  }

  void remove_added_edge(int i, int j) {
    delete_edge(i, j);
    weight_[pos(i, j)] = weight_[pos(j, i)] = 0;
  }

private:
  std::size_t row(int i) const { return static_cast<std::size_t>(i) * words_; }
  std::size_t pos(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  void set_bit(int i, int j) { bits_[row(i) + j / 64] |= std::uint64_t{1} << (j % 64); }
  void clear_bit(int i, int j) { bits_[row(i) + j / 64] &= ~(std::uint64_t{1} << (j % 64)); }

  std::vector<VertexId> ids_;
  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
  std::vector<Weight> weight_;
  std::vector<std::uint8_t> original_;
  std::vector<Weight> vweight_;
  std::vector<Weight> degree_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint64_t> saved_rows_;
};

// Constraint lists resolved to dense indices. Pointers refer into the
// instance's ConstraintSet, which must outlive this object.
class CompiledConstraints {
public:
  CompiledConstraints(const ProblemInstance& inst, const DenseGraph& g)
      : kind_(inst.kind), n_(g.size()), vertex_(n_, nullptr) {
    const ConstraintSet& c = inst.constraints;
    const auto pairs = static_cast<std::size_t>(n_) * n_;
    for (int i = 0; i < n_; ++i)
      vertex_[i] = c.vertex_list(g.id(i));
    if (kind_ == ProblemKind::WEDCE) {
      edge_.assign(pairs, nullptr);
      for (const auto& [e, s] : c.delta_e) {
        const int a = g.index(e.u);
        const int b = g.index(e.v);
        if (a >= 0 && b >= 0)
          edge_[pos(a, b)] = edge_[pos(b, a)] = &s;
      }
    }
    if (uses_nu(kind_))
      fill_pairs(nu_, c.nu, c.nu_default, g);
    if (uses_xi(kind_))
      fill_pairs(xi_, c.xi, c.xi_default, g);
  }

  ProblemKind kind() const { return kind_; }
  const ValueSet* vertex(int i) const { return vertex_[i]; }
  const ValueSet* edge(int i, int j) const { return edge_[pos(i, j)]; }
  const ValueSet& nu(int i, int j) const { return *nu_[pos(i, j)]; }
  const ValueSet& xi(int i, int j) const { return *xi_[pos(i, j)]; }

  bool vertex_ok(const DenseGraph& g, int i) const {
    return vertex_[i] && vertex_[i]->contains(g.degree(i));
  }
  bool edge_ok(const DenseGraph& g, int i, int j) const {
    const ValueSet* s = edge_[pos(i, j)];
    return s && s->contains(g.degree(i) + g.degree(j));
  }
  bool nu_ok(const DenseGraph& g, int i, int j) const { return nu(i, j).contains(g.common(i, j)); }
  bool xi_ok(const DenseGraph& g, int i, int j) const { return xi(i, j).contains(g.common(i, j)); }

  bool satisfied(const DenseGraph& g) const {
    const int n = g.size();
    if (kind_ == ProblemKind::WEDCE) {
      for (int i = 0; i < n; ++i) {
        if (!g.alive(i))
          continue;
        bool ok = true;
        g.for_each_neighbour(i, [&](int j) {
          if (ok && j > i && !edge_ok(g, i, j))
            ok = false;
        });
        if (!ok)
          return false;
      }
      return true;
    }
    for (int i = 0; i < n; ++i)
      if (g.alive(i) && !vertex_ok(g, i))
        return false;
    if (kind_ == ProblemKind::WDCE)
      return true;
    for (int i = 0; i < n; ++i) {
      if (!g.alive(i))
        continue;
      bool ok = true;
      g.for_each_neighbour(i, [&](int j) {
        if (ok && j > i && !nu_ok(g, i, j))
          ok = false;
      });
      if (!ok)
        return false;
    }
    if (kind_ == ProblemKind::WERE)
      return true;
    for (int i = 0; i < n; ++i) {
      if (!g.alive(i))
        continue;
      for (int j = i + 1; j < n; ++j)
        if (g.alive(j) && !g.adjacent(i, j) && !xi_ok(g, i, j))
          return false;
    }
    return true;
  }

private:
  std::size_t pos(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  void fill_pairs(std::vector<const ValueSet*>& out, const std::map<Edge, ValueSet>& entries,
                  const ValueSet& fallback, const DenseGraph& g) {
    out.assign(static_cast<std::size_t>(n_) * n_, &fallback);
    for (const auto& [e, s] : entries) {
      const int a = g.index(e.u);
      const int b = g.index(e.v);
      if (a >= 0 && b >= 0)
        out[pos(a, b)] = out[pos(b, a)] = &s;
    }
  }

  ProblemKind kind_;
  int n_;
  std::vector<const ValueSet*> vertex_;
  std::vector<const ValueSet*> edge_;
  std::vector<const ValueSet*> nu_;
  std::vector<const ValueSet*> xi_;
};

} // namespace fptedit::detail
