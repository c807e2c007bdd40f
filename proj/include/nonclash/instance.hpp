#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonclash/family.hpp"

namespace nonclash {

/// Output of a reduction generator: the instance plus the role of every vertex.
struct GeneratedInstance {
  Graph graph;
  BallFamily family;
  int k = 0;
  std::vector<std::string> vertex_roles;  // vertex -> role label
  std::map<std::string, int> roles;       // role label -> vertex
  std::map<std::string, int> radii;       // named radii of the construction

  int vertex(const std::string& role) const {
    auto it = roles.find(role);
    if (it == roles.end()) throw std::out_of_range("no vertex with role '" + role + "'");
    return it->second;
  }
};

namespace detail {

// Incrementally builds a graph whose vertices carry unique role labels.
class LabeledGraphBuilder {
public:
  int add(const std::string& role) {
    int v = static_cast<int>(names_.size());
    if (!roles_.emplace(role, v).second)
      throw std::logic_error("duplicate role label '" + role + "'");
    names_.push_back(role);
    return v;
  }

  void edge(int u, int v) {
    if (u > v) std::swap(u, v);
    if (u != v) edges_.emplace_back(u, v);
  }

  /// Path of `length` edges between u and v through fresh vertices named
  /// `<prefix>#<offset>`, offset counted from u.
  void path(int u, int v, int length, const std::string& prefix) {
    if (length < 1) throw std::logic_error("path length must be positive");
    int prev = u;
    for (int step = 1; step < length; ++step) {
      int w = add(prefix + "#" + std::to_string(step));
      edge(prev, w);
      prev = w;
    }
    edge(prev, v);
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& role(int v) const { return names_.at(v); }

  Graph graph() const {
    auto e = edges_;
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return Graph(size(), e);
  }

  GeneratedInstance finish(BallFamily family, int k) const {
    GeneratedInstance out;
    out.graph = graph();
    out.family = std::move(family);
    out.k = k;
    out.vertex_roles = names_;
    out.roles = roles_;
    return out;
  }

private:
  std::vector<std::string> names_;
  std::map<std::string, int> roles_;
  std::vector<std::pair<int, int>> edges_;
};

}  // namespace detail

}  // namespace nonclash
