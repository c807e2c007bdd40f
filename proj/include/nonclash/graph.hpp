#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nonclash {

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<int>;

inline constexpr int kUnreachable = -1;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
  Graph() = default;

  /// Throws std::invalid_argument on loops, repeated edges or ids out of range.
  Graph(int n, const std::vector<std::pair<int, int>>& edges) : adj_(check_count(n)) {
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") out of range for n=" + std::to_string(n));
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (int v = 0; v < n; ++v) {
      auto& a = adj_[v];
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end())
        throw std::invalid_argument("duplicate edge at vertex " + std::to_string(v));
    }
    m_ = edges.size();
  }

  int vertex_count() const noexcept { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const noexcept { return m_; }

  std::span<const int> neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
  }

  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  /// Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < vertex_count(); ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range [0," +
                              std::to_string(vertex_count()) + ")");
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
  static std::size_t check_count(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    return static_cast<std::size_t>(n);
  }

  std::vector<std::vector<int>> adj_;
  std::size_t m_ = 0;
};

/// Unweighted single-source distances; unreachable vertices get kUnreachable.
inline std::vector<int> bfs_distances(const Graph& g, int source) {
  g.check_vertex(source);
  std::vector<int> dist(g.vertex_count(), kUnreachable);
  std::vector<int> queue;
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// All-pairs distances by repeated BFS. Intended for small graphs.
inline std::vector<std::vector<int>> distance_matrix(const Graph& g) {
  std::vector<std::vector<int>> d(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) d[v] = bfs_distances(g, v);
  return d;
}

struct Ball {
  int center = 0;
  int radius = 0;
  VertexSet members;

  friend bool operator==(const Ball&, const Ball&) = default;
};

inline Ball ball_from_distances(const std::vector<int>& dist, int center, int radius) {
  Ball b{center, radius, {}};
  for (int v = 0; v < static_cast<int>(dist.size()); ++v)
    if (dist[v] != kUnreachable && dist[v] <= radius) b.members.push_back(v);
  return b;
}

inline Ball ball(const Graph& g, int center, int radius) {
  g.check_vertex(center);
  if (radius < 0) throw std::invalid_argument("negative radius " + std::to_string(radius));
  return ball_from_distances(bfs_distances(g, center), center, radius);
}

/// Largest finite distance from v (within its component).
inline int eccentricity(const Graph& g, int v) {
  auto d = bfs_distances(g, v);
  return *std::max_element(d.begin(), d.end());
}

/// Connected components, each sorted, listed by smallest vertex.
inline std::vector<VertexSet> components(const Graph& g) {
  std::vector<VertexSet> out;
  std::vector<char> seen(g.vertex_count(), 0);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    VertexSet comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (int w : g.neighbors(comp[head]))
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

struct DiameterInfo {
  std::vector<int> component_diameters;  // parallel to components(g)
  int max_component_diameter = 0;
  bool infinite = false;  // true when the graph is disconnected
};

inline DiameterInfo diameter(const Graph& g) {
  DiameterInfo info;
  auto comps = components(g);
  for (const auto& c : comps) {
    int best = 0;
    for (int v : c) best = std::max(best, eccentricity(g, v));
    info.component_diameters.push_back(best);
    info.max_component_diameter = std::max(info.max_component_diameter, best);
  }
  info.infinite = comps.size() > 1;
  return info;
}

inline bool is_edgeless(const Graph& g) { return g.edge_count() == 0; }

/// A forest has exactly n - (#components) edges.
inline bool is_acyclic(const Graph& g) {
  return g.edge_count() + components(g).size() == static_cast<std::size_t>(g.vertex_count());
}

struct SplitPartition {
  bool split = false;
  VertexSet clique;
  VertexSet independent;
};

/// Split recognition from the degree sequence: with degrees sorted
/// d1 >= ... >= dn and m = max{i : d_i >= i-1}, the graph is split iff
/// sum_{i<=m} d_i == m(m-1) + sum_{i>m} d_i. The first m vertices form the clique.
inline SplitPartition is_split(const Graph& g) {
  const int n = g.vertex_count();
  SplitPartition out;
  if (n == 0) {
    out.split = true;
    return out;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (g.degree(order[i]) >= i) m = i + 1;
  long long head = 0, tail = 0;
  for (int i = 0; i < n; ++i) (i < m ? head : tail) += g.degree(order[i]);
  out.split = head == static_cast<long long>(m) * (m - 1) + tail;
  if (!out.split) return out;
  out.clique.assign(order.begin(), order.begin() + m);
  out.independent.assign(order.begin() + m, order.end());
  std::sort(out.clique.begin(), out.clique.end());
  std::sort(out.independent.begin(), out.independent.end());
  return out;
}

/// Subgraph induced by `keep` (sorted), relabelled 0..|keep|-1 in order.
inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
  std::vector<int> index(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) index[keep[i]] = i;
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    if (index[u] >= 0 && index[v] >= 0) edges.emplace_back(index[u], index[v]);
  return Graph(static_cast<int>(keep.size()), edges);
}

/// Graph with the vertices in `removed` deleted; ids of the survivors are kept
/// by returning the survivor list alongside.
inline std::pair<Graph, VertexSet> delete_vertices(const Graph& g, const VertexSet& removed) {
  std::vector<char> gone(g.vertex_count(), 0);
  for (int v : removed) gone[v] = 1;
  VertexSet keep;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!gone[v]) keep.push_back(v);
  return {induced_subgraph(g, keep), keep};
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-independent additive set hash; supports incremental growth.
inline std::uint64_t set_hash(std::span<const int> s) {
  std::uint64_t h = 0;
  for (int v : s) h += mix64(static_cast<std::uint64_t>(v));
  return h;
}

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept {
    return static_cast<std::size_t>(set_hash(s));
  }
};

inline bool sorted_contains(const VertexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

}  // namespace nonclash
