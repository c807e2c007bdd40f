#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "nonclash/graph.hpp"

namespace nonclash {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

inline Bitset to_bitset(const VertexSet& s, int n) {
  Bitset b(static_cast<std::size_t>(n));
  for (int v : s) b.set(static_cast<std::size_t>(v));
  return b;
}

/// A set of balls of one graph, deduplicated by member set. Each ball carries
/// its canonical label: the lexicographically least (center, radius) pair
/// producing that member set. Balls are ordered by canonical label.
class BallFamily {
public:
  BallFamily() = default;

  /// Builds the family of balls named by (center, radius) pairs. Repeated or
  /// set-equal entries collapse into one ball.
  static BallFamily from_labels(const Graph& g, const std::vector<std::pair<int, int>>& labels,
                                bool strict = false) {
    std::vector<VertexSet> sets;
    std::unordered_map<VertexSet, int, detail::VertexSetHash> seen;
    for (auto [c, r] : labels) {
      Ball b = ball(g, c, r);
      if (seen.emplace(b.members, static_cast<int>(sets.size())).second)
        sets.push_back(std::move(b.members));
    }
    return from_sets(g, std::move(sets), strict);
  }

  /// Canonicalises the labels of the given member sets. Every set must be a
  /// ball of g; throws std::invalid_argument otherwise.
  static BallFamily from_sets(const Graph& g, std::vector<VertexSet> sets, bool strict = false) {
    const int n = g.vertex_count();
    std::unordered_multimap<std::uint64_t, int> by_hash;
    for (int i = 0; i < static_cast<int>(sets.size()); ++i)
      by_hash.emplace(detail::set_hash(sets[i]), i);
    std::vector<std::optional<std::pair<int, int>>> label(sets.size());
    std::size_t remaining = sets.size();
    std::vector<int> order(n);
    for (int u = 0; u < n && remaining > 0; ++u) {
      auto dist = bfs_distances(g, u);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        auto key = [&](int v) { return dist[v] == kUnreachable ? n + 1 : dist[v]; };
        return key(a) < key(b);
      });
      std::uint64_t h = 0;
      std::size_t size = 0;
      for (std::size_t i = 0; i < order.size() && dist[order[i]] != kUnreachable;) {
        int r = dist[order[i]];
        while (i < order.size() && dist[order[i]] == r) {
          h += detail::mix64(static_cast<std::uint64_t>(order[i]));
          ++size;
          ++i;
        }
        auto [lo, hi] = by_hash.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
          int idx = it->second;
          if (label[idx] || sets[idx].size() != size) continue;
          if (ball_from_distances(dist, u, r).members == sets[idx]) {
            label[idx] = std::make_pair(u, r);
            --remaining;
          }
        }
      }
    }
    BallFamily f;
    f.n_ = n;
    f.strict_ = strict;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!label[i]) throw std::invalid_argument("vertex set is not a ball of the graph");
      f.balls_.push_back(Ball{label[i]->first, label[i]->second, std::move(sets[i])});
    }
    std::sort(f.balls_.begin(), f.balls_.end(), [](const Ball& a, const Ball& b) {
      return std::pair(a.center, a.radius) < std::pair(b.center, b.radius);
    });
    f.balls_.erase(std::unique(f.balls_.begin(), f.balls_.end(),
                               [](const Ball& a, const Ball& b) { return a.members == b.members; }),
                   f.balls_.end());
    f.build_index();
    return f;
  }

  int vertex_count() const noexcept { return n_; }
  bool strict() const noexcept { return strict_; }
  std::size_t size() const noexcept { return balls_.size(); }
  bool empty() const noexcept { return balls_.empty(); }
  const Ball& operator[](std::size_t i) const { return balls_.at(i); }
  const std::vector<Ball>& balls() const noexcept { return balls_; }
  const Bitset& bits(std::size_t i) const { return bits_.at(i); }

  std::optional<int> find(const VertexSet& members) const {
    auto it = by_set_.find(members);
    if (it == by_set_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<int> find_label(int center, int radius) const {
    auto it = by_label_.find({center, radius});
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t max_ball_size() const {
    std::size_t best = 0;
    for (const auto& b : balls_) best = std::max(best, b.members.size());
    return best;
  }

private:
  friend BallFamily all_balls_strict(const Graph& g);

  void build_index() {
    bits_.clear();
    by_set_.clear();
    by_label_.clear();
    for (int i = 0; i < static_cast<int>(balls_.size()); ++i) {
      bits_.push_back(to_bitset(balls_[i].members, n_));
      by_set_.emplace(balls_[i].members, i);
      by_label_.emplace(std::pair(balls_[i].center, balls_[i].radius), i);
    }
  }

  int n_ = 0;
  bool strict_ = false;
  std::vector<Ball> balls_;
  std::vector<Bitset> bits_;
  std::unordered_map<VertexSet, int, detail::VertexSetHash> by_set_;
  std::map<std::pair<int, int>, int> by_label_;
};

/// Every distinct ball B_r(v), 0 <= r <= ecc(v)+1, labelled by the first
/// (v, r) in lexicographic order that produces it.
inline BallFamily all_balls_strict(const Graph& g) {
  BallFamily f;
  f.n_ = g.vertex_count();
  f.strict_ = true;
  std::unordered_map<VertexSet, int, detail::VertexSetHash> seen;
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto dist = bfs_distances(g, v);
    int ecc = *std::max_element(dist.begin(), dist.end());
    for (int r = 0; r <= ecc + 1; ++r) {
      Ball b = ball_from_distances(dist, v, r);
      if (seen.emplace(b.members, static_cast<int>(f.balls_.size())).second)
        f.balls_.push_back(std::move(b));
    }
  }
  f.build_index();
  return f;
}

/// Which (center, radius) pairs generate each family ball, and which radii
/// at each vertex produce a family ball. Radii run over 0..ecc(u); larger
/// radii repeat the ball at ecc(u).
struct CenterIndex {
  std::vector<std::vector<std::pair<int, int>>> generators;  // ball -> (center, radius)
  std::vector<std::vector<std::pair<int, int>>> present;     // vertex -> (radius, ball)
  std::vector<int> ecc;

  /// Ball id of B_r(u) when it belongs to the family.
  std::optional<int> ball_at(int u, int r) const {
    r = std::min(r, ecc[u]);
    for (auto [rr, b] : present[u])
      if (rr == r) return b;
    return std::nullopt;
  }
};

inline CenterIndex index_centers(const Graph& g, const BallFamily& family) {
  CenterIndex idx;
  const int n = g.vertex_count();
  idx.generators.resize(family.size());
  idx.present.resize(n);
  idx.ecc.resize(n);
  for (int u = 0; u < n; ++u) {
    auto dist = bfs_distances(g, u);
    idx.ecc[u] = *std::max_element(dist.begin(), dist.end());
    for (int r = 0; r <= idx.ecc[u]; ++r) {
      if (auto b = family.find(ball_from_distances(dist, u, r).members)) {
        idx.present[u].emplace_back(r, *b);
        idx.generators[*b].emplace_back(u, r);
      }
    }
  }
  return idx;
}

}  // namespace nonclash
