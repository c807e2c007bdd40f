#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nonclash/error.hpp"
#include "nonclash/prune.hpp"
#include "nonclash/twins.hpp"

namespace nonclash {

/// B' = {B ∩ V(G') : B ∈ family centered in G'} as a family over G', with
/// ball_map[i] = the original ball behind reduced ball i.
struct InducedBalls {
  BallFamily family;
  std::vector<int> ball_map;
};

/// Checks that keep contains X and that every component of G - X is either
/// kept whole or dropped with at least two kept twins, then builds the
/// induced family. keep lists original vertex ids in ascending order; G'
/// numbers them 0.. in that order.
inline InducedBalls induced_balls(const Graph& g, const BallFamily& family,
                                  const TwinStructure& ts, const VertexSet& keep) {
  const int n = g.vertex_count();
  std::vector<int> new_id(n, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    g.check_vertex(keep[i]);
    if (i > 0 && keep[i] <= keep[i - 1]) throw std::invalid_argument("keep must be ascending");
    new_id[keep[i]] = static_cast<int>(i);
  }
  for (int x : ts.witness.separator)
    if (new_id[x] < 0)
      throw InducedBallsError("separator vertex " + std::to_string(x) + " was removed", -1);
  const auto& comps = ts.witness.components;
  std::vector<char> kept(comps.size(), 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::size_t in = 0;
    for (int v : comps[c]) in += new_id[v] >= 0;
    if (in != 0 && in != comps[c].size())
      throw InducedBallsError("component " + std::to_string(c) + " is only partly kept",
                              static_cast<int>(c));
    kept[c] = in != 0;
  }
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (kept[c]) continue;
    int twins = 0;
    for (int m : ts.classes[ts.class_of[c]].members) twins += kept[m];
    if (twins < 2)
      throw InducedBallsError("dropped component " + std::to_string(c) +
                                  " has fewer than two kept twins",
                              static_cast<int>(c));
  }

  const Graph h = induced_subgraph(g, keep);
  std::vector<VertexSet> sets;
  std::unordered_map<VertexSet, int, detail::VertexSetHash> seen;
  for (std::size_t b = 0; b < family.size(); ++b) {
    std::optional<std::pair<int, int>> gen;
    for (auto [u, r] : ts.centers.generators[b])
      if (new_id[u] >= 0 && (!gen || std::pair(u, r) < *gen)) gen = std::pair(u, r);
    if (!gen) continue;
    VertexSet cut;
    for (int v : family[b].members)
      if (new_id[v] >= 0) cut.push_back(new_id[v]);
    if (ball(h, new_id[gen->first], gen->second).members != cut)
      throw std::logic_error("induced set of ball " + std::to_string(b) +
                             " is not the ball of the same center and radius in G'");
    if (!seen.emplace(cut, static_cast<int>(b)).second)
      throw std::logic_error("two balls induce the same set in G'");
    sets.push_back(std::move(cut));
  }
  InducedBalls out;
  out.family = BallFamily::from_sets(h, sets, family.strict());
  out.ball_map.resize(out.family.size());
  for (std::size_t i = 0; i < out.family.size(); ++i)
    out.ball_map[i] = seen.at(out.family[i].members);
  return out;
}

/// Reduced instance plus the bookkeeping to map it back.
struct Reduction {
  Graph graph;
  BallFamily family;
  VertexSet kept_vertices;         // reduced id -> original id
  std::vector<int> ball_map;       // reduced ball -> original ball
  std::vector<int> kept_components, dropped_components;
  std::vector<int> order;          // all components in the order used by the kernel
  ViWitness witness;               // of the original graph
  int original_vertex_count = 0;

  bool identity() const { return dropped_components.empty(); }

  /// Witness of the reduced graph: X and the kept components, renumbered.
  ViWitness reduced_witness() const {
    std::vector<int> new_id(original_vertex_count, -1);
    for (std::size_t i = 0; i < kept_vertices.size(); ++i)
      new_id[kept_vertices[i]] = static_cast<int>(i);
    ViWitness w;
    w.p = witness.p;
    for (int x : witness.separator) w.separator.push_back(new_id[x]);
    for (int c : kept_components) {
      VertexSet comp;
      for (int v : witness.components[c]) comp.push_back(new_id[v]);
      w.components.push_back(std::move(comp));
    }
    std::sort(w.components.begin(), w.components.end());
    return w;
  }
};

/// The reduction that keeps exactly the given vertices (ascending original
/// ids), which must satisfy the induced_balls hypothesis.
inline Reduction reduction_from_keep(const Graph& g, const BallFamily& family,
                                     const TwinStructure& ts, VertexSet keep) {
  const auto& comps = ts.witness.components;
  Reduction out;
  out.witness = ts.witness;
  out.original_vertex_count = g.vertex_count();
  auto induced = induced_balls(g, family, ts, keep);
  std::vector<char> in_keep(g.vertex_count(), 0);
  for (int v : keep) in_keep[v] = 1;
  for (std::size_t c = 0; c < comps.size(); ++c)
    (in_keep[comps[c].front()] ? out.kept_components : out.dropped_components)
        .push_back(static_cast<int>(c));
  // kept components first, each group by smallest vertex
  out.order = out.kept_components;
  out.order.insert(out.order.end(), out.dropped_components.begin(), out.dropped_components.end());
  out.graph = induced_subgraph(g, keep);
  out.family = std::move(induced.family);
  out.ball_map = std::move(induced.ball_map);
  out.kept_vertices = std::move(keep);
  return out;
}

/// Keeps X and, per twin class, the first min(size, retain) components;
/// everything else is dropped. Throws on retain < 3.
inline Reduction reduce_instance(const Graph& g, const BallFamily& family, const TwinStructure& ts,
                                 const Bounds::Int& retain) {
  if (retain < 3) throw std::invalid_argument("retain must be at least 3");
  const auto& comps = ts.witness.components;
  VertexSet keep = ts.witness.separator;
  for (const auto& cls : ts.classes)
    for (std::size_t i = 0; i < cls.members.size() && Bounds::Int(i) < retain; ++i)
      keep.insert(keep.end(), comps[cls.members[i]].begin(), comps[cls.members[i]].end());
  std::sort(keep.begin(), keep.end());
  return reduction_from_keep(g, family, ts, std::move(keep));
}

}  // namespace nonclash
