#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "nonclash/graph.hpp"

namespace nonclash {

/// Separator X with every component H of G - X satisfying |H| + |X| <= p.
struct ViWitness {
  int p = 0;
  VertexSet separator;
  std::vector<VertexSet> components;  // sorted by smallest vertex
};

namespace detail {

// Components of g - removed, sorted by smallest vertex.
inline std::vector<VertexSet> components_without(const Graph& g, const std::vector<char>& removed) {
  const int n = g.vertex_count();
  std::vector<char> seen(removed);
  std::vector<VertexSet> out;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    VertexSet comp{s};
    seen[s] = 1;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (int w : g.neighbors(comp[h]))
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

class ViSearch {
public:
  ViSearch(const Graph& g, int p) : g_(g), p_(p), in_x_(g.vertex_count(), 0) {}

  std::optional<ViWitness> run() {
    if (!rec()) return std::nullopt;
    ViWitness w;
    w.p = p_;
    w.separator = x_;
    std::sort(w.separator.begin(), w.separator.end());
    w.components = components_without(g_, in_x_);
    return w;
  }

private:
  bool rec() {
    VertexSet key = x_;
    std::sort(key.begin(), key.end());
    if (!visited_.insert(key).second) return false;
    const int room = p_ - static_cast<int>(x_.size());
    auto comps = components_without(g_, in_x_);
    const VertexSet* big = nullptr;
    for (const auto& c : comps)
      if (static_cast<int>(c.size()) > room) {
        big = &c;
        break;
      }
    if (!big) return true;
    if (room <= 0) return false;
    // Any witness extending X must hit every connected set of room+1
    // vertices inside this component.
    VertexSet grow{big->front()};
    std::vector<char> in_grow(g_.vertex_count(), 0);
    in_grow[big->front()] = 1;
    for (std::size_t h = 0; h < grow.size() && static_cast<int>(grow.size()) <= room; ++h)
      for (int w : g_.neighbors(grow[h]))
        if (!in_x_[w] && !in_grow[w] && static_cast<int>(grow.size()) <= room) {
          in_grow[w] = 1;
          grow.push_back(w);
        }
    std::sort(grow.begin(), grow.end());
    for (int v : grow) {
      in_x_[v] = 1;
      x_.push_back(v);
      if (rec()) return true;
      x_.pop_back();
      in_x_[v] = 0;
    }
    return false;
  }

  const Graph& g_;
  int p_;
  std::vector<char> in_x_;
  VertexSet x_;
  std::set<VertexSet> visited_;
};

}  // namespace detail

/// A witness for budget p, or nullopt when the vertex integrity exceeds p.
inline std::optional<ViWitness> vi_witness(const Graph& g, int p) {
  if (p < 0) return std::nullopt;
  return detail::ViSearch(g, p).run();
}

/// Smallest p with a witness; the empty graph has p = 0.
inline ViWitness min_vi_witness(const Graph& g) {
  for (int p = 0;; ++p)
    if (auto w = vi_witness(g, p)) return *w;
}

/// The witness induced by a given separator; p is taken as given.
inline ViWitness witness_from_separator(const Graph& g, int p, VertexSet separator) {
  std::vector<char> in_x(g.vertex_count(), 0);
  for (int v : separator) {
    g.check_vertex(v);
    in_x[v] = 1;
  }
  std::sort(separator.begin(), separator.end());
  separator.erase(std::unique(separator.begin(), separator.end()), separator.end());
  return {p, std::move(separator), detail::components_without(g, in_x)};
}

inline bool is_valid_witness(const Graph& g, const ViWitness& w) {
  std::vector<char> in_x(g.vertex_count(), 0);
  for (int v : w.separator) {
    g.check_vertex(v);
    in_x[v] = 1;
  }
  auto comps = detail::components_without(g, in_x);
  if (comps != w.components) return false;
  for (const auto& c : comps)
    if (c.size() + w.separator.size() > static_cast<std::size_t>(w.p)) return false;
  return true;
}

}  // namespace nonclash
