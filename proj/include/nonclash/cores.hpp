#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "nonclash/prune.hpp"
#include "nonclash/teaching.hpp"
#include "nonclash/twins.hpp"

namespace nonclash {

/// Summary of one teaching set relative to a home component: its part in X,
/// its part in the home component, and per orbit how many counterparts lie
/// outside the home component (0, 1 or 2 meaning two or more).
struct Blueprint {
  int home = -1;
  VertexSet S_X;
  VertexSet S_H;
  std::vector<int> S_H_positions;  // positions of S_H in the representative order
  std::vector<std::vector<int>> f;  // class -> position -> saturated count

  /// Two blueprints of twin balls agree when this key does.
  auto shape() const { return std::tie(S_X, S_H_positions, f); }
};

inline Blueprint blueprint_at(const TeachingMap& map, int ball, int home, const TwinStructure& ts) {
  Blueprint bp;
  bp.home = home;
  bp.f.resize(ts.classes.size());
  for (std::size_t c = 0; c < ts.classes.size(); ++c)
    bp.f[c].assign(ts.classes[c].alpha[0].size(), 0);
  for (int v : map[ball]) {
    const int comp = ts.component_of.at(v);
    if (comp < 0) {
      bp.S_X.push_back(v);
    } else if (comp == home) {
      bp.S_H.push_back(v);
      bp.S_H_positions.push_back(ts.position_of[v]);
    } else {
      int& cnt = bp.f[ts.class_of[comp]][ts.position_of[v]];
      cnt = std::min(cnt + 1, 2);
    }
  }
  std::sort(bp.S_H_positions.begin(), bp.S_H_positions.end());
  return bp;
}

/// Blueprint of T(B) with B's home taken from its canonical center. Throws
/// when that center lies in X.
inline Blueprint blueprint(const BallFamily& family, const TeachingMap& map, int ball,
                           const TwinStructure& ts) {
  const int home = ts.component_of.at(family[ball].center);
  if (home < 0) throw std::invalid_argument("ball is centered in the separator");
  return blueprint_at(map, ball, home, ts);
}

/// Refines the twin classes: two twins are perfectly equivalent when every
/// pair of corresponding balls has the same blueprint. Returns the class id
/// of each component; ids are numbered by first occurrence.
inline std::vector<int> perfect_classes(const TeachingMap& map, const TwinStructure& ts) {
  using Shape = std::tuple<VertexSet, std::vector<int>, std::vector<std::vector<int>>>;
  using Key = std::pair<int, std::vector<std::tuple<int, int, Shape>>>;
  std::map<Key, int> ids;
  std::vector<int> out(ts.component_count());
  for (std::size_t c = 0; c < ts.component_count(); ++c) {
    Key key;
    key.first = ts.class_of[c];
    const auto& rep_order = ts.classes[ts.class_of[c]].alpha[ts.slot_of[c]];
    for (std::size_t pos = 0; pos < rep_order.size(); ++pos)
      for (auto [r, b] : ts.centers.present[rep_order[pos]]) {
        auto bp = blueprint_at(map, b, static_cast<int>(c), ts);
        key.second.emplace_back(static_cast<int>(pos), r, Shape(bp.S_X, bp.S_H_positions, bp.f));
      }
    auto [it, fresh] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
    out[c] = it->second;
  }
  return out;
}

/// Core, 1-extended core and 2-extended core as component membership flags.
struct Cores {
  std::vector<int> order;  // components, first to last
  std::vector<char> in_K, in_K1, in_K2;

  static std::vector<int> list(const std::vector<char>& flags) {
    std::vector<int> out;
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (flags[i]) out.push_back(static_cast<int>(i));
    return out;
  }
  std::vector<int> K() const { return list(in_K); }
  std::vector<int> K1() const { return list(in_K1); }
  std::vector<int> K2() const { return list(in_K2); }
};

namespace detail {

// Balls perfectly equivalent to b: the same-radius balls at the counterparts
// of b's canonical center across its perfect class.
inline std::vector<int> equivalent_balls(const BallFamily& family, int b, const TwinStructure& ts,
                                         const std::vector<int>& perfect) {
  const int u = family[b].center;
  const int r = family[b].radius;
  const int home = ts.component_of[u];
  if (home < 0) return {b};
  std::vector<int> out;
  for (int h : ts.classes[ts.class_of[home]].members) {
    if (perfect[h] != perfect[home]) continue;
    auto other = ts.centers.ball_at(ts.counterpart(u, h), r);
    if (!other) throw std::logic_error("twin ball missing from family");
    out.push_back(*other);
  }
  return out;
}

// The (B,x)-core: the first s+1 twins H' of x's component, in the given
// order, whose counterpart of x is taught by some ball equivalent to B.
inline std::vector<int> bx_core(const BallFamily& family, const TeachingMap& map, int b, int x,
                                const TwinStructure& ts, const std::vector<int>& perfect,
                                const std::vector<int>& rank, std::size_t s) {
  const int comp = ts.component_of.at(x);
  auto eq = equivalent_balls(family, b, ts, perfect);
  std::vector<int> hits;
  for (int h : ts.classes[ts.class_of[comp]].members) {
    const int xh = ts.counterpart(x, h);
    for (int b2 : eq)
      if (detail::sorted_contains(map[b2], xh)) {
        hits.push_back(h);
        break;
      }
  }
  std::sort(hits.begin(), hits.end(), [&](int a, int c) { return rank[a] < rank[c]; });
  if (hits.size() > s + 1) hits.resize(s + 1);
  return hits;
}

inline std::vector<int> rank_of(const std::vector<int>& order, std::size_t comps) {
  if (order.size() != comps) throw std::invalid_argument("order must list every component once");
  std::vector<int> rank(comps, -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (rank.at(order[i]) >= 0) throw std::invalid_argument("order repeats a component");
    rank[order[i]] = static_cast<int>(i);
  }
  return rank;
}

inline std::vector<int> default_order(std::size_t comps) {
  std::vector<int> o(comps);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

}  // namespace detail

/// Cores of map under the component order `order` (empty: by smallest
/// vertex) with s the teaching-set bound.
inline Cores cores(const BallFamily& family, const TeachingMap& map, const TwinStructure& ts,
                   std::size_t s, std::vector<int> order = {}) {
  const std::size_t nc = ts.component_count();
  if (order.empty()) order = detail::default_order(nc);
  const auto rank = detail::rank_of(order, nc);
  const auto perfect = perfect_classes(map, ts);
  Cores out;
  out.order = order;
  out.in_K.assign(nc, 0);
  for (std::size_t b = 0; b < family.size(); ++b)
    for (int x : map[b])
      if (ts.component_of[x] >= 0)
        for (int h : detail::bx_core(family, map, static_cast<int>(b), x, ts, perfect, rank, s))
          out.in_K[h] = 1;
  auto extend = [&](const std::vector<char>& inner) {
    std::vector<char> outer = inner;
    for (std::size_t b = 0; b < family.size(); ++b) {
      bool anchored = false;
      for (int c : ts.center_components(static_cast<int>(b))) anchored = anchored || c < 0 || inner[c];
      if (!anchored) continue;
      for (int x : map[b])
        if (ts.component_of[x] >= 0) outer[ts.component_of[x]] = 1;
    }
    return outer;
  };
  out.in_K1 = extend(out.in_K);
  out.in_K2 = extend(out.in_K1);
  return out;
}

namespace detail {

// First (ball, vertex) where a vertex outside K2 is taught by a ball not
// centered in that vertex's component.
inline std::optional<std::pair<int, int>> compactness_violation(const BallFamily& family,
                                                                const TeachingMap& map,
                                                                const TwinStructure& ts,
                                                                const Cores& cores) {
  for (std::size_t b = 0; b < family.size(); ++b)
    for (int x : map[b]) {
      const int h = ts.component_of[x];
      if (h >= 0 && !cores.in_K2[h] && !ts.centered_in(static_cast<int>(b), h))
        return std::pair(static_cast<int>(b), x);
    }
  return std::nullopt;
}

}  // namespace detail

inline bool is_compact(const BallFamily& family, const TeachingMap& map, const TwinStructure& ts,
                       const Cores& cores) {
  return !detail::compactness_violation(family, map, ts, cores);
}

/// Prunes, then swaps each teaching vertex that breaks compactness for its
/// counterpart in a (B,x)-core component, taking the first swap that
/// creates no conflict. Throws std::logic_error when no swap works.
inline TeachingMap compactify(const BallFamily& family, const TeachingMap& map,
                              const TwinStructure& ts, std::vector<int> order = {}) {
  const std::size_t nc = ts.component_count();
  if (order.empty()) order = detail::default_order(nc);
  const auto rank = detail::rank_of(order, nc);
  const auto s = static_cast<std::size_t>(bounds(ts, family).s);
  TeachingMap t = prune_redundant(family, map, ts);
  std::size_t entries = 0;
  for (const auto& set : t.sets) entries += set.size();
  const std::size_t cap = entries * (nc + 1) + 1;
  for (std::size_t it = 0;; ++it) {
    if (it > cap) throw std::logic_error("compactify did not converge");
    const auto cr = cores(family, t, ts, s, order);
    auto bad = detail::compactness_violation(family, t, ts, cr);
    if (!bad) break;
    auto [b, x] = *bad;
    const auto perfect = perfect_classes(t, ts);
    bool swapped = false;
    for (int h : detail::bx_core(family, t, b, x, ts, perfect, rank, s)) {
      const int xi = ts.counterpart(x, h);
      if (xi == x || !family.bits(b).test(static_cast<std::size_t>(xi))) continue;
      VertexSet cand = t[b];
      cand.erase(std::find(cand.begin(), cand.end(), x));
      if (!detail::sorted_contains(cand, xi)) cand.insert(std::lower_bound(cand.begin(), cand.end(), xi), xi);
      VertexSet old = std::exchange(t[b], cand);
      bool ok = true;
      for (std::size_t o = 0; o < family.size() && ok; ++o)
        if (o != static_cast<std::size_t>(b) && detail::clashes(family, t, b, o)) ok = false;
      if (ok) {
        swapped = true;
        break;
      }
      t[b] = std::move(old);
    }
    if (!swapped)
      throw std::logic_error("no conflict-free swap for ball " + std::to_string(b) + " and vertex " +
                             std::to_string(x));
  }
  if (!verify(family, t).empty()) throw std::logic_error("compactify introduced a conflict");
  return t;
}

}  // namespace nonclash
