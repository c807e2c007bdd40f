#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "nonclash/graph.hpp"

namespace testutil {

using nonclash::Graph;

inline Graph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, n - 1);
  return Graph(n, e);
}

inline Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

inline Graph star(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph(n, e);
}

// Separator vertices 0..x-1, then `copies` copies of a small block. Block
// edges are given on local ids; attach lists (local vertex, separator vertex).
inline Graph twin_graph(int x, const std::vector<std::pair<int, int>>& separator_edges, int block,
                        const std::vector<std::pair<int, int>>& block_edges,
                        const std::vector<std::pair<int, int>>& attach, int copies) {
  std::vector<std::pair<int, int>> e = separator_edges;
  for (int c = 0; c < copies; ++c) {
    const int base = x + c * block;
    for (auto [u, v] : block_edges) e.emplace_back(base + u, base + v);
    for (auto [u, s] : attach) e.emplace_back(s, base + u);
  }
  return Graph(x + copies * block, e);
}

}  // namespace testutil
