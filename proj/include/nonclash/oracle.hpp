#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nonclash/error.hpp"
#include "nonclash/teaching.hpp"

namespace nonclash {

struct OracleLimits {
  std::size_t max_balls = 20;
  std::size_t max_ball_size = 8;
};

namespace detail {

// All subsets of `s` with at most k elements, in lexicographic order.
inline std::vector<VertexSet> small_subsets(const VertexSet& s, int k) {
  // Depth-first generation yields lexicographic order directly.
  std::vector<VertexSet> result;
  VertexSet cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    result.push_back(cur);
    if (static_cast<int>(cur.size()) == k) return;
    for (std::size_t i = from; i < s.size(); ++i) {
      cur.push_back(s[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return result;
}

}  // namespace detail

/// Deliberately naive reference: for k = 0, 1, ..., cap, tries every
/// assignment of at-most-k subsets to the balls in lexicographic order,
/// abandoning a prefix as soon as its newest ball clashes with an earlier one.
/// Returns the least feasible k, or nullopt when none is <= cap.
inline std::optional<int> oracle_min_dimension(const BallFamily& family, int cap,
                                               OracleLimits limits = {}) {
  if (family.size() > limits.max_balls)
    throw SizeGuardError("oracle refuses " + std::to_string(family.size()) + " balls (limit " +
                         std::to_string(limits.max_balls) + ")");
  if (family.max_ball_size() > limits.max_ball_size)
    throw SizeGuardError("oracle refuses balls of size " +
                         std::to_string(family.max_ball_size()) + " (limit " +
                         std::to_string(limits.max_ball_size) + ")");
  const std::size_t m = family.size();
  for (int k = 0; k <= cap; ++k) {
    std::vector<std::vector<VertexSet>> options(m);
    for (std::size_t b = 0; b < m; ++b) options[b] = detail::small_subsets(family[b].members, k);
    TeachingMap t(m);
    auto place = [&](auto&& self, std::size_t b) -> bool {
      if (b == m) return true;
      for (const auto& opt : options[b]) {
        t[b] = opt;
        bool ok = true;
        for (std::size_t a = 0; a < b && ok; ++a)
          if (detail::clashes(family, t, a, b)) ok = false;
        if (ok && self(self, b + 1)) return true;
      }
      return false;
    };
    if (place(place, 0)) return k;
  }
  return std::nullopt;
}

}  // namespace nonclash
