#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nonclash/error.hpp"
#include "nonclash/family.hpp"

namespace nonclash {

/// Positive teaching map: one teaching set per ball, indexed like the family.
struct TeachingMap {
  std::vector<VertexSet> sets;

  TeachingMap() = default;
  explicit TeachingMap(std::size_t balls) : sets(balls) {}

  std::size_t size() const noexcept { return sets.size(); }
  VertexSet& operator[](std::size_t i) { return sets.at(i); }
  const VertexSet& operator[](std::size_t i) const { return sets.at(i); }

  std::size_t dimension() const {
    std::size_t k = 0;
    for (const auto& s : sets) k = std::max(k, s.size());
    return k;
  }

  /// T(B) = B for every ball. Always non-clashing since balls are set-distinct.
  static TeachingMap full(const BallFamily& family) {
    TeachingMap t(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) t[i] = family[i].members;
    return t;
  }

  friend bool operator==(const TeachingMap&, const TeachingMap&) = default;
};

/// Two balls (by family index, first < second) that no teaching vertex separates.
struct Conflict {
  int first = 0;
  int second = 0;
  friend auto operator<=>(const Conflict&, const Conflict&) = default;
};

/// w distinguishes b1 and b2 iff it lies outside their intersection.
inline bool distinguishes(int w, const Ball& b1, const Ball& b2) {
  return !(detail::sorted_contains(b1.members, w) && detail::sorted_contains(b2.members, w));
}

namespace detail {

// Some vertex of t lies outside ball b.
inline bool escapes(const VertexSet& t, const Bitset& b) {
  for (int v : t)
    if (!b.test(static_cast<std::size_t>(v))) return true;
  return false;
}

// T(B1) ⊆ B1 and T(B2) ⊆ B2, so the pair clashes iff T(B1) ⊆ B2 and T(B2) ⊆ B1.
inline bool clashes(const BallFamily& f, const TeachingMap& t, std::size_t i, std::size_t j) {
  return !escapes(t[i], f.bits(j)) && !escapes(t[j], f.bits(i));
}

inline void check_domain(const BallFamily& family, const TeachingMap& map) {
  if (map.size() != family.size())
    throw MapDomainError("teaching map has " + std::to_string(map.size()) +
                         " entries for a family of " + std::to_string(family.size()) + " balls");
  for (std::size_t i = 0; i < map.size(); ++i) {
    const auto& s = map[i];
    if (!std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end())
      throw MapDomainError("teaching set " + std::to_string(i) + " is not a sorted set");
    if (!is_subset(s, family[i].members))
      throw MapDomainError("teaching set of ball (" + std::to_string(family[i].center) + "," +
                           std::to_string(family[i].radius) + ") is not a subset of the ball");
  }
}

}  // namespace detail

/// All clashing pairs, sorted. Empty iff the map is a positive non-clashing
/// teaching map for the family. With workers > 1 the rows are split across
/// threads; the result is identical.
inline std::vector<Conflict> verify(const BallFamily& family, const TeachingMap& map,
                                    int workers = 1) {
  detail::check_domain(family, map);
  const std::size_t m = family.size();
  auto rows = [&](std::size_t begin, std::size_t step) {
    std::vector<Conflict> out;
    for (std::size_t i = begin; i < m; i += step)
      for (std::size_t j = i + 1; j < m; ++j)
        if (detail::clashes(family, map, i, j))
          out.push_back({static_cast<int>(i), static_cast<int>(j)});
    return out;
  };
  if (workers <= 1) return rows(0, 1);
  std::vector<std::future<std::vector<Conflict>>> parts;
  for (int w = 0; w < workers; ++w)
    parts.push_back(std::async(std::launch::async, rows, static_cast<std::size_t>(w),
                               static_cast<std::size_t>(workers)));
  std::vector<Conflict> all;
  for (auto& p : parts) {
    auto part = p.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

inline bool is_non_clashing(const BallFamily& family, const TeachingMap& map) {
  detail::check_domain(family, map);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (detail::clashes(family, map, i, j)) return false;
  return true;
}

/// Role of each vertex in the concept-class embedding.
struct ConceptEmbedding {
  Graph graph;
  BallFamily family;
  std::vector<std::string> vertex_names;  // elements first, then "x_<concept index>"
  std::vector<int> concept_vertex;         // concept index -> vertex x_C
  std::vector<int> concept_ball;           // concept index -> family index of B_1(x_C)
  int universe_size = 0;
};

/// Represents a finite concept class over named elements as radius-1 balls:
/// one vertex per element, one vertex x_C per concept, x_C adjacent to every
/// other concept vertex and to the elements of C.
inline ConceptEmbedding embed_concept_class(const std::vector<std::string>& universe,
                                            const std::vector<std::vector<std::string>>& concepts) {
  if (concepts.empty()) throw std::invalid_argument("empty concept list");
  std::map<std::string, int> id;
  for (const auto& e : universe)
    if (!id.emplace(e, static_cast<int>(id.size())).second)
      throw std::invalid_argument("duplicate element '" + e + "'");
  const int u = static_cast<int>(universe.size());
  std::set<std::set<int>> distinct;
  std::vector<std::set<int>> concept_sets;
  for (const auto& c : concepts) {
    std::set<int> s;
    for (const auto& e : c) {
      auto it = id.find(e);
      if (it == id.end()) throw std::invalid_argument("unknown element '" + e + "'");
      s.insert(it->second);
    }
    if (!distinct.insert(s).second) throw std::invalid_argument("duplicate concept");
    concept_sets.push_back(std::move(s));
  }
  const int k = static_cast<int>(concepts.size());
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) edges.emplace_back(u + a, u + b);
    for (int e : concept_sets[a]) edges.emplace_back(e, u + a);
  }
  ConceptEmbedding out;
  out.graph = Graph(u + k, edges);
  out.universe_size = u;
  out.vertex_names = universe;
  std::vector<std::pair<int, int>> labels;
  for (int a = 0; a < k; ++a) {
    out.vertex_names.push_back("x_" + std::to_string(a));
    out.concept_vertex.push_back(u + a);
    labels.emplace_back(u + a, 1);
  }
  out.family = BallFamily::from_labels(out.graph, labels, false);
  for (int a = 0; a < k; ++a)
    out.concept_ball.push_back(*out.family.find(ball(out.graph, u + a, 1).members));
  return out;
}

}  // namespace nonclash
