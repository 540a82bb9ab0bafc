#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "graph.hpp"

namespace fptedit::gen {

inline WeightedGraph empty_graph(int n) {
  if (n < 0)
    throw std::invalid_argument("negative vertex count");
  WeightedGraph g;
  for (int i = 0; i < n; ++i)
    g.add_vertex(i);
  return g;
}

inline WeightedGraph complete(int n) {
  if (n < 1)
    throw std::invalid_argument("complete graph needs n >= 1");
  WeightedGraph g = empty_graph(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      g.add_edge(i, j);
  return g;
}

inline WeightedGraph cycle(int n) {
  if (n < 3)
    throw std::invalid_argument("cycle needs n >= 3");
  WeightedGraph g = empty_graph(n);
  for (int i = 0; i < n; ++i)
    g.add_edge(i, (i + 1) % n);
  return g;
}

inline WeightedGraph path(int n) {
  if (n < 1)
    throw std::invalid_argument("path needs n >= 1");
  WeightedGraph g = empty_graph(n);
  for (int i = 0; i + 1 < n; ++i)
    g.add_edge(i, i + 1);
  return g;
}

// K_{1,leaves}; the centre is vertex 0.
inline WeightedGraph star(int leaves) {
  if (leaves < 0)
    throw std::invalid_argument("star needs leaves >= 0");
  WeightedGraph g = empty_graph(leaves + 1);
  for (int i = 1; i <= leaves; ++i)
    g.add_edge(0, i);
  return g;
}

// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
inline WeightedGraph petersen() {
  WeightedGraph g = empty_graph(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

// Uniform double in [0,1) from the top 53 bits; std distributions are not
// reproducible across standard libraries.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Erdos-Renyi G(n, p). Deterministic for a given seed.
inline WeightedGraph random_graph(int n, double edge_probability, std::uint64_t seed) {
  if (n < 1)
    throw std::invalid_argument("random graph needs n >= 1");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
    throw std::invalid_argument("edge probability must lie in [0,1]");
  std::mt19937_64 rng(seed);
  WeightedGraph g = empty_graph(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit_draw(rng) < edge_probability)
        g.add_edge(i, j);
  return g;
}

} // namespace fptedit::gen
