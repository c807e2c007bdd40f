#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nonclash/family.hpp"
#include "nonclash/vertex_integrity.hpp"

namespace nonclash {

/// One class of twin-blocks. members[0] is the representative; alpha[i][j]
/// is the image in members[i] of the j-th smallest vertex of the
/// representative, so alpha[0] is the identity on the sorted representative.
struct TwinClass {
  std::vector<int> members;  // component ids, ascending
  std::vector<VertexSet> alpha;
};

/// Twin-block classes of the components of G - X together with the lookup
/// tables every later stage needs.
struct TwinStructure {
  ViWitness witness;
  std::vector<TwinClass> classes;
  std::vector<int> component_of;  // vertex -> component id, -1 on X
  std::vector<int> class_of;      // component -> class
  std::vector<int> slot_of;       // component -> index in its class
  std::vector<int> position_of;   // vertex -> index in the representative order, -1 on X
  CenterIndex centers;

  std::size_t component_count() const { return witness.components.size(); }

  /// The vertex of component `comp` corresponding to v under alpha.
  int counterpart(int v, int comp) const {
    const int c = component_of.at(v);
    if (c < 0) throw std::invalid_argument("vertex lies in the separator");
    const int cls = class_of[c];
    if (class_of.at(comp) != cls) throw std::invalid_argument("components are not twins");
    return classes[cls].alpha[slot_of[comp]][position_of[v]];
  }

  /// [v]: the counterparts of v in every twin of its component.
  VertexSet orbit(int v) const {
    const int c = component_of.at(v);
    if (c < 0) return {v};
    const auto& cls = classes[class_of[c]];
    VertexSet out;
    for (const auto& a : cls.alpha) out.push_back(a[position_of[v]]);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Orbit identifier (class, position); (-1, v) for separator vertices.
  std::pair<int, int> orbit_id(int v) const {
    const int c = component_of.at(v);
    if (c < 0) return {-1, v};
    return {class_of[c], position_of[v]};
  }

  /// Component ids holding a generating center of ball b.
  std::vector<int> center_components(int b) const {
    std::vector<int> out;
    for (auto [u, r] : centers.generators.at(b)) out.push_back(component_of[u]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;  // may contain -1 for centers in X
  }

  bool centered_in(int b, int comp) const {
    for (auto [u, r] : centers.generators.at(b))
      if (component_of[u] == comp) return true;
    return false;
  }
};

namespace detail {

// Per-vertex data a twin isomorphism must preserve besides internal edges.
struct VertexProfile {
  VertexSet x_neighbors;
  int internal_degree = 0;
  int ecc = 0;
  std::vector<char> present;  // radius 0..ecc -> ball in family

  friend auto operator<=>(const VertexProfile&, const VertexProfile&) = default;
};

// Lexicographically least bijection from `rep` (sorted) onto `other` that
// preserves the profiles and the internal edges.
inline std::optional<VertexSet> find_alpha(const Graph& g, const VertexSet& rep,
                                           const VertexSet& other,
                                           const std::vector<VertexProfile>& prof) {
  if (rep.size() != other.size()) return std::nullopt;
  const std::size_t n = rep.size();
  VertexSet image(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || prof[other[j]] != prof[rep[i]]) continue;
      bool ok = true;
      for (std::size_t a = 0; a < i && ok; ++a)
        ok = g.has_edge(rep[a], rep[i]) == g.has_edge(image[a], other[j]);
      if (!ok) continue;
      used[j] = 1;
      image[i] = other[j];
      if (self(self, i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return image;
}

}  // namespace detail

/// Partitions the components of G - X into twin-block classes. Candidates
/// are bucketed by a profile signature and then matched against each class
/// representative by backtracking over bijections.
inline TwinStructure twin_classes(const Graph& g, const ViWitness& witness,
                                  const BallFamily& family) {
  const int n = g.vertex_count();
  TwinStructure ts;
  ts.witness = witness;
  ts.component_of.assign(n, -1);
  ts.position_of.assign(n, -1);
  const auto& comps = witness.components;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) ts.component_of[v] = static_cast<int>(c);
  ts.centers = index_centers(g, family);

  std::vector<detail::VertexProfile> prof(n);
  for (int v = 0; v < n; ++v) {
    if (ts.component_of[v] < 0) continue;
    auto& p = prof[v];
    for (int w : g.neighbors(v)) {
      if (ts.component_of[w] < 0)
        p.x_neighbors.push_back(w);
      else
        ++p.internal_degree;
    }
    p.ecc = ts.centers.ecc[v];
    p.present.assign(p.ecc + 1, 0);
    for (auto [r, b] : ts.centers.present[v]) p.present[r] = 1;
  }

  std::map<std::vector<detail::VertexProfile>, std::vector<int>> buckets;  // signature -> classes
  ts.class_of.assign(comps.size(), -1);
  ts.slot_of.assign(comps.size(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<detail::VertexProfile> sig;
    for (int v : comps[c]) sig.push_back(prof[v]);
    std::sort(sig.begin(), sig.end());
    auto& cands = buckets[sig];
    bool placed = false;
    for (int cls : cands) {
      auto& tc = ts.classes[cls];
      if (auto a = detail::find_alpha(g, comps[tc.members[0]], comps[c], prof)) {
        ts.class_of[c] = cls;
        ts.slot_of[c] = static_cast<int>(tc.members.size());
        tc.members.push_back(static_cast<int>(c));
        tc.alpha.push_back(std::move(*a));
        placed = true;
        break;
      }
    }
    if (!placed) {
      const int cls = static_cast<int>(ts.classes.size());
      ts.classes.push_back({{static_cast<int>(c)}, {comps[c]}});
      ts.class_of[c] = cls;
      ts.slot_of[c] = 0;
      cands.push_back(cls);
    }
  }
  for (const auto& tc : ts.classes)
    for (const auto& a : tc.alpha)
      for (std::size_t j = 0; j < a.size(); ++j) ts.position_of[a[j]] = static_cast<int>(j);
  return ts;
}

/// Replays the twin-block conditions for a proposed bijection from the
/// sorted vertices of component h to those listed in `image`: internal
/// edges, X-adjacency and ball presence at every radius, recomputed from
/// scratch.
inline bool is_twin_isomorphism(const Graph& g, const BallFamily& family, const ViWitness& w,
                                const VertexSet& h, const VertexSet& image) {
  if (h.size() != image.size()) return false;
  VertexSet sorted_image = image;
  std::sort(sorted_image.begin(), sorted_image.end());
  if (std::adjacent_find(sorted_image.begin(), sorted_image.end()) != sorted_image.end())
    return false;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = 0; j < h.size(); ++j)
      if (g.has_edge(h[i], h[j]) != g.has_edge(image[i], image[j])) return false;
    for (int x : w.separator)
      if (g.has_edge(h[i], x) != g.has_edge(image[i], x)) return false;
    const int n = g.vertex_count();
    for (int r = 0; r <= n; ++r) {
      bool a = family.find(ball(g, h[i], r).members).has_value();
      bool b = family.find(ball(g, image[i], r).members).has_value();
      if (a != b) return false;
    }
  }
  return true;
}

}  // namespace nonclash
