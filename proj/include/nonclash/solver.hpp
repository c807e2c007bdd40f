#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nonclash/teaching.hpp"

namespace nonclash {

enum class SolveStatus { found, infeasible };

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  std::string route = "exact";
};

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<TeachingMap> witness;
  SolveStats stats;

  bool found() const noexcept { return status == SolveStatus::found; }
};

namespace detail {

// Backtracking search for a non-clashing map of dimension <= k.
//
// Two balls clash iff T(B1) ⊆ B2 and T(B2) ⊆ B1, so every pair is the
// disjunction "T(B1) escapes B2 or T(B2) escapes B1". For nested pairs
// B1 ⊊ B2 the first disjunct is impossible, which leaves a hitting
// constraint on T(B2) alone. Assigning T(B1) with T(B1) ⊆ B2 turns the pair
// into the same kind of constraint on B2; these are added on the fly.
//
// Vertices of a ball that lie in exactly the same family balls are
// interchangeable, and a vertex lying in a subset of the balls that contain
// another is at least as good. Candidates are therefore drawn from one
// representative of each inclusion-minimal membership pattern, and since
// larger teaching sets never hurt, each candidate has exactly min(k, #reps)
// elements.
class ExactSearch {
public:
  ExactSearch(const BallFamily& family, int k) : f_(family), k_(k), m_(family.size()) {
    const int n = family.vertex_count();
    column_.assign(n, Bitset(m_));
    for (std::size_t b = 0; b < m_; ++b)
      for (int v : family[b].members) column_[v].set(b);
    reps_.resize(m_);
    for (std::size_t b = 0; b < m_; ++b) reps_[b] = representatives(b);
    nested_.resize(m_);
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t i = 0; i < m_; ++i)
        if (i != j && family[i].members.size() < family[j].members.size() &&
            family.bits(i).is_subset_of(family.bits(j)))
          nested_[j].push_back(static_cast<int>(i));
    required_.resize(m_);
    assigned_.assign(m_, 0);
    teach_.resize(m_);
    static_order_.resize(m_);
    for (std::size_t b = 0; b < m_; ++b) static_order_[b] = static_cast<int>(b);
    std::stable_sort(static_order_.begin(), static_order_.end(), [&](int a, int b) {
      return family[a].members.size() > family[b].members.size();
    });
    nested_bits_.assign(m_, Bitset(m_));
    for (std::size_t j = 0; j < m_; ++j)
      for (int i : nested_[j]) nested_bits_[j].set(static_cast<std::size_t>(i));
    req_.assign(m_, std::vector<std::uint16_t>(m_, 0));
    sample_.resize(m_);
    for (std::size_t b = 0; b < m_; ++b) sample_[b] = sample_candidates(b);
  }

  std::optional<TeachingMap> run() {
    if (k_ < 0) return std::nullopt;
    std::vector<int> all(m_);
    for (std::size_t b = 0; b < m_; ++b) all[b] = static_cast<int>(b);
    Trail root;
    for (std::size_t b = 0; b < m_; ++b)
      if (sample_[b].empty()) return std::nullopt;
    if (!propagate(all, root)) return std::nullopt;
    if (!search()) return std::nullopt;
    TeachingMap t(m_);
    for (std::size_t b = 0; b < m_; ++b) t[b] = teach_[b];
    return t;
  }

  SolveStats stats;

  // Enumerates candidate teaching sets of ball b under the current
  // constraints, plus escaping ball `extra` when given; stops early when
  // `emit` returns false.
  void enumerate(std::size_t b, const std::function<bool(const VertexSet&)>& emit,
                 int extra = -1) const {
    const auto& reps = reps_[b];
    const std::size_t target = std::min<std::size_t>(static_cast<std::size_t>(k_), reps.size());
    std::vector<int> cons(nested_[b]);
    cons.insert(cons.end(), required_[b].begin(), required_[b].end());
    if (extra >= 0) cons.push_back(extra);
    std::vector<char> state(reps.size(), 0);  // 0 free, 1 chosen, 2 excluded
    std::vector<char> hit(cons.size(), 0);
    VertexSet chosen;
    bool stop = false;

    auto escapes = [&](int rep_idx, int ball) {
      return !column_[reps[rep_idx]].test(static_cast<std::size_t>(ball));
    };

    std::function<void()> complete = [&] {
      // Every constraint is hit; fill the remaining slots from free reps.
      std::vector<int> free;
      for (std::size_t r = 0; r < reps.size(); ++r)
        if (state[r] == 0) free.push_back(static_cast<int>(r));
      std::size_t need = target - chosen.size();
      if (need > free.size()) return;
      std::vector<std::size_t> pick(need);
      for (std::size_t i = 0; i < need; ++i) pick[i] = i;
      while (!stop) {
        VertexSet cand = chosen;
        for (auto p : pick) cand.push_back(reps[free[p]]);
        std::sort(cand.begin(), cand.end());
        if (!emit(cand)) {
          stop = true;
          return;
        }
        // next combination
        std::size_t i = need;
        while (i > 0 && pick[i - 1] == free.size() - need + i - 1) --i;
        if (i == 0) return;
        ++pick[i - 1];
        for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
      }
    };

    std::function<void()> branch = [&] {
      if (stop) return;
      int best = -1;
      std::size_t best_avail = 0;
      for (std::size_t c = 0; c < cons.size(); ++c) {
        if (hit[c]) continue;
        std::size_t avail = 0;
        for (std::size_t r = 0; r < reps.size(); ++r)
          if (state[r] == 0 && escapes(static_cast<int>(r), cons[c])) ++avail;
        if (best < 0 || avail < best_avail) {
          best = static_cast<int>(c);
          best_avail = avail;
        }
      }
      if (best < 0) {
        complete();
        return;
      }
      if (best_avail == 0 || chosen.size() == target) return;
      std::vector<int> opened;
      for (std::size_t r = 0; r < reps.size() && !stop; ++r) {
        if (state[r] != 0 || !escapes(static_cast<int>(r), cons[best])) continue;
        state[r] = 1;
        chosen.push_back(reps[r]);
        std::vector<std::size_t> newly;
        for (std::size_t c = 0; c < cons.size(); ++c)
          if (!hit[c] && escapes(static_cast<int>(r), cons[c])) {
            hit[c] = 1;
            newly.push_back(c);
          }
        branch();
        for (auto c : newly) hit[c] = 0;
        chosen.pop_back();
        state[r] = 2;  // later branches exclude this rep
        opened.push_back(static_cast<int>(r));
      }
      for (int r : opened) state[r] = 0;
    };

    branch();
  }

private:
  VertexSet representatives(std::size_t b) const {
    std::map<Bitset, int> types;  // membership pattern -> smallest vertex
    for (int v : f_[b].members) types.emplace(column_[v], v);
    std::vector<std::pair<const Bitset*, int>> list;
    for (const auto& [key, v] : types) list.emplace_back(&key, v);
    VertexSet out;
    for (std::size_t a = 0; a < list.size(); ++a) {
      bool dominated = false;
      for (std::size_t c = 0; c < list.size() && !dominated; ++c)
        if (c != a && list[c].first->is_proper_subset_of(*list[a].first)) dominated = true;
      if (!dominated) out.push_back(list[a].second);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Up to kSample candidates; fewer means the list is complete.
  std::vector<VertexSet> sample_candidates(std::size_t b) const {
    std::vector<VertexSet> out;
    enumerate(b, [&](const VertexSet& c) {
      out.push_back(c);
      return out.size() < kSample;
    });
    return out;
  }

  // Some candidate of a escapes ball l.
  bool can_escape(int a, int l) const {
    const auto& bits = f_.bits(static_cast<std::size_t>(l));
    for (const auto& c : sample_[a])
      if (detail::escapes(c, bits)) return true;
    if (sample_[a].size() < kSample) return false;
    bool any = false;
    enumerate(
        static_cast<std::size_t>(a),
        [&](const VertexSet&) {
          any = true;
          return false;
        },
        l);
    return any;
  }

  using Trail = std::vector<std::pair<int, std::vector<VertexSet>>>;  // (ball, previous sample)

  // Requires T(a) to escape ball l. False when a runs out of candidates.
  bool require(int a, int l, Trail& trail) {
    ++stats.propagations;
    required_[a].push_back(l);
    ++req_[a][l];
    trail.emplace_back(a, std::move(sample_[a]));
    sample_[a] = sample_candidates(static_cast<std::size_t>(a));
    return !sample_[a].empty();
  }

  void undo(Trail& trail) {
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
      --req_[it->first][required_[it->first].back()];
      required_[it->first].pop_back();
      sample_[it->first] = std::move(it->second);
    }
    trail.clear();
  }

  // Every pair of unassigned balls needs one of them to escape the other.
  // When one direction has become impossible the other is forced. Balls
  // whose constraints changed are rechecked against all unassigned balls.
  bool propagate(std::vector<int> queue, Trail& trail) {
    std::vector<char> queued(m_, 0);
    for (int a : queue) queued[a] = 1;
    while (!queue.empty()) {
      const int a = queue.back();
      queue.pop_back();
      queued[a] = 0;
      if (assigned_[a]) continue;
      for (std::size_t lu = 0; lu < m_; ++lu) {
        const int l = static_cast<int>(lu);
        if (l == a || assigned_[l] || nested_bits_[a].test(lu) ||
            nested_bits_[l].test(static_cast<std::size_t>(a)) || req_[a][l] || req_[l][a])
          continue;
        const bool a_out = can_escape(a, l);
        const bool l_out = can_escape(l, a);
        if (!a_out && !l_out) return false;
        if (a_out && l_out) continue;
        const int x = a_out ? a : l, y = a_out ? l : a;
        if (!require(x, y, trail)) return false;
        if (!queued[x]) {
          queued[x] = 1;
          queue.push_back(x);
        }
      }
    }
    return true;
  }

  int pick_ball() const {
    int best = -1;
    for (int b : static_order_) {
      if (assigned_[b]) continue;
      if (best < 0 || sample_[b].size() < sample_[best].size()) best = b;
      if (sample_[b].size() <= 1) break;
    }
    return best;
  }

  bool search() {
    ++stats.nodes;
    int b = pick_ball();
    if (b < 0) return true;
    if (sample_[b].empty()) return false;
    std::vector<VertexSet> cands;
    enumerate(b, [&](const VertexSet& c) {
      cands.push_back(c);
      return true;
    });
    assigned_[b] = 1;
    for (const auto& cand : cands) {
      teach_[b] = cand;
      Trail trail;
      std::vector<int> changed;
      bool ok = true;
      for (std::size_t l = 0; l < m_ && ok; ++l) {
        if (assigned_[l] || detail::escapes(cand, f_.bits(l))) continue;
        ok = require(static_cast<int>(l), b, trail);
        changed.push_back(static_cast<int>(l));
      }
      if (ok) ok = propagate(std::move(changed), trail);
      if (ok && search()) return true;
      undo(trail);
    }
    assigned_[b] = 0;
    teach_[b].clear();
    return false;
  }

  const BallFamily& f_;
  int k_;
  std::size_t m_;
  std::vector<Bitset> column_;
  std::vector<VertexSet> reps_;
  std::vector<std::vector<int>> nested_;
  std::vector<std::vector<int>> required_;
  std::vector<char> assigned_;
  std::vector<VertexSet> teach_;
  std::vector<int> static_order_;
  std::vector<Bitset> nested_bits_;               // nested_bits_[j][i]: ball i inside ball j
  std::vector<std::vector<std::uint16_t>> req_;   // req_[a][l]: T(a) must escape ball l
  static constexpr std::size_t kSample = 8;
  std::vector<std::vector<VertexSet>> sample_;
};

}  // namespace detail

/// Decides whether the family has a positive non-clashing teaching map of
/// dimension at most k and returns one when it does. The witness is
/// deterministic for a given family.
inline SolveResult solve(const BallFamily& family, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  SolveResult res;
  detail::ExactSearch search(family, k);
  auto witness = search.run();
  res.stats = search.stats;
  if (!witness) return res;
  if (!is_non_clashing(family, *witness) || witness->dimension() > static_cast<std::size_t>(k))
    throw std::logic_error("exact solver produced an invalid witness");
  res.status = SolveStatus::found;
  res.witness = std::move(witness);
  return res;
}

struct MinDimension {
  int dimension = 0;
  TeachingMap witness;
  SolveStats stats;
};

/// Least k admitting a solution, with its witness. k = max ball size always
/// works (T(B) = B), which bounds the loop.
inline MinDimension min_dimension(const BallFamily& family) {
  MinDimension out;
  const int cap = static_cast<int>(family.max_ball_size());
  for (int k = 0; k <= cap; ++k) {
    auto r = solve(family, k);
    out.stats.nodes += r.stats.nodes;
    out.stats.propagations += r.stats.propagations;
    if (r.found()) {
      out.dimension = k;
      out.witness = std::move(*r.witness);
      return out;
    }
  }
  throw std::logic_error("no solution up to the maximum ball size");
}

}  // namespace nonclash
