#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonclash/cores.hpp"
#include "nonclash/error.hpp"
#include "nonclash/reduce.hpp"
#include "nonclash/solver.hpp"

namespace nonclash {

namespace detail {

class Lifter {
public:
  Lifter(const BallFamily& family, const TwinStructure& ts, const Reduction& red,
         const TeachingMap& reduced)
      : f_(family), ts_(ts), t_(family.size()), assigned_(family.size(), 0),
        present_(ts.component_count(), 0) {
    if (reduced.size() != red.family.size())
      throw MapDomainError("reduced map does not match the reduced family");
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      VertexSet s;
      for (int v : reduced[i]) s.push_back(red.kept_vertices.at(v));
      std::sort(s.begin(), s.end());
      t_[red.ball_map[i]] = std::move(s);
      assigned_[red.ball_map[i]] = 1;
    }
    for (int c : red.kept_components) present_[c] = 1;
  }

  TeachingMap run(const std::vector<int>& dropped) {
    for (int c : dropped) add(c);
    for (std::size_t b = 0; b < f_.size(); ++b)
      if (!assigned_[b]) throw std::logic_error("ball left without a teaching set after lifting");
    return t_;
  }

private:
  // No ball centered elsewhere teaches a vertex of h.
  bool self_contained(int h) const {
    for (std::size_t b = 0; b < f_.size(); ++b) {
      if (!assigned_[b]) continue;
      for (int v : t_[b])
        if (ts_.component_of[v] == h && !ts_.centered_in(static_cast<int>(b), h)) return false;
    }
    return true;
  }

  // Corresponding balls of h1 and h2 teach the same vertices outside their
  // own component and corresponding vertices inside it.
  bool same_footprint(int h1, int h2) const {
    const auto& cls = ts_.classes[ts_.class_of[h1]];
    const auto& a1 = cls.alpha[ts_.slot_of[h1]];
    const auto& a2 = cls.alpha[ts_.slot_of[h2]];
    for (std::size_t pos = 0; pos < a1.size(); ++pos)
      for (auto [r, b1] : ts_.centers.present[a1[pos]]) {
        auto b2 = ts_.centers.ball_at(a2[pos], r);
        if (!b2) return false;
        auto split = [&](int b, int h) {
          std::pair<std::vector<int>, VertexSet> out;
          for (int v : t_[b]) {
            if (ts_.component_of[v] == h)
              out.first.push_back(ts_.position_of[v]);
            else
              out.second.push_back(v);
          }
          std::sort(out.first.begin(), out.first.end());
          return out;
        };
        if (split(b1, h1) != split(*b2, h2)) return false;
      }
    return true;
  }

  void add(int hc) {
    const auto& cls = ts_.classes[ts_.class_of[hc]];
    std::vector<int> spare;
    for (int h : cls.members)
      if (h != hc && present_[h] && self_contained(h)) spare.push_back(h);
    // balls centered in hc that are not set-equal to an existing ball
    std::vector<std::pair<int, std::pair<int, int>>> fresh;  // ball, (center, radius)
    for (int u : ts_.witness.components[hc])
      for (auto [r, b] : ts_.centers.present[u]) {
        if (assigned_[b]) continue;
        bool dup = false;
        for (const auto& fb : fresh) dup = dup || fb.first == b;
        if (!dup) fresh.push_back({b, {u, r}});
      }
    for (std::size_t i = 0; i < spare.size(); ++i)
      for (std::size_t j = 0; j < spare.size(); ++j) {
        if (i == j || !same_footprint(spare[i], spare[j])) continue;
        if (try_copy(hc, spare[i], fresh)) {
          present_[hc] = 1;
          return;
        }
      }
    throw LiftInfeasible("no pair of interchangeable kept twins for component " +
                         std::to_string(hc));
  }

  bool try_copy(int hc, int src, const std::vector<std::pair<int, std::pair<int, int>>>& fresh) {
    std::vector<int> placed;
    auto undo = [&] {
      for (int b : placed) {
        t_[b].clear();
        assigned_[b] = 0;
      }
    };
    for (const auto& [b, gen] : fresh) {
      auto [u, r] = gen;
      auto from = ts_.centers.ball_at(ts_.counterpart(u, src), r);
      if (!from || !assigned_[*from]) {
        undo();
        return false;
      }
      VertexSet s;
      for (int v : t_[*from]) s.push_back(ts_.component_of[v] == src ? ts_.counterpart(v, hc) : v);
      std::sort(s.begin(), s.end());
      if (!is_subset(s, f_[b].members)) {
        undo();
        return false;
      }
      t_[b] = std::move(s);
      assigned_[b] = 1;
      placed.push_back(b);
    }
    for (int b : placed)
      for (std::size_t o = 0; o < f_.size(); ++o)
        if (assigned_[o] && o != static_cast<std::size_t>(b) && clashes(f_, t_, b, o)) {
          undo();
          return false;
        }
    return true;
  }

  const BallFamily& f_;
  const TwinStructure& ts_;
  TeachingMap t_;
  std::vector<char> assigned_;
  std::vector<char> present_;
};

}  // namespace detail

/// Extends a solution of the reduced instance to the original family by
/// adding the dropped components back one at a time, in component order.
/// Each dropped component copies the teaching sets of a kept twin H' for
/// which a second kept twin H'' exists such that neither is taught by balls
/// centered elsewhere and corresponding balls of H' and H'' teach the same
/// footprint. Throws LiftInfeasible when no such pair exists or no candidate
/// copy is conflict-free.
inline TeachingMap lift(const BallFamily& family, const TwinStructure& ts, const Reduction& red,
                        const TeachingMap& reduced_map) {
  verify(red.family, reduced_map);  // domain checks
  detail::Lifter lifter(family, ts, red, reduced_map);
  TeachingMap out = lifter.run(red.dropped_components);
  if (!verify(family, out).empty()) throw std::logic_error("lifted map has conflicts");
  if (out.dimension() > reduced_map.dimension())
    throw std::logic_error("lifting increased the dimension");
  return out;
}

/// Solves via the kernel: minimal vertex-integrity witness, twin classes,
/// k clamped to s, reduction keeping `retain` twins per class (default f),
/// exact solve, compactification and lifting. With retain below f an
/// infeasible kernel or a failed lift falls back to a direct solve; the
/// route taken is recorded in stats.route.
inline SolveResult fpt_solve(const Graph& g, const BallFamily& family, int k,
                             std::optional<Bounds::Int> retain = std::nullopt) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (family.vertex_count() != g.vertex_count())
    throw std::invalid_argument("family and graph disagree on the vertex count");
  const ViWitness w = min_vi_witness(g);
  const TwinStructure ts = twin_classes(g, w, family);
  const Bounds bd = bounds(ts, family);
  const int kk = bd.s < k ? static_cast<int>(bd.s) : k;
  const Bounds::Int keep = retain ? *retain : bd.f;
  const Reduction red = reduce_instance(g, family, ts, keep);

  auto fallback = [&](const std::string& why) {
    SolveResult r = solve(family, k);
    r.stats.route = "fpt:fallback-" + why;
    return r;
  };

  SolveResult reduced = solve(red.family, kk);
  if (!reduced.found()) {
    if (keep >= bd.f || red.identity()) {
      reduced.stats.route = "fpt";
      return reduced;
    }
    return fallback("infeasible");
  }
  TeachingMap compact;
  {
    const TwinStructure rts = twin_classes(red.graph, red.reduced_witness(), red.family);
    compact = compactify(red.family, *reduced.witness, rts);
  }
  SolveResult out;
  out.stats = reduced.stats;
  try {
    out.witness = lift(family, ts, red, compact);
  } catch (const LiftInfeasible&) {
    return fallback("lift");
  }
  out.status = SolveStatus::found;
  out.stats.route = "fpt";
  if (!is_non_clashing(family, *out.witness) ||
      out.witness->dimension() > static_cast<std::size_t>(k))
    throw std::logic_error("fpt pipeline produced an invalid witness");
  return out;
}

}  // namespace nonclash
