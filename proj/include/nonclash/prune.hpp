#pragma once

#include <map>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "nonclash/teaching.hpp"
#include "nonclash/twins.hpp"

namespace nonclash {

/// Repeatedly drops a teaching vertex from any orbit that contributes three
/// or more vertices to one teaching set. The dropped vertex is the largest
/// one whose component does not hold the ball's canonical center.
inline TeachingMap prune_redundant(const BallFamily& family, const TeachingMap& map,
                                   const TwinStructure& ts) {
  if (!verify(family, map).empty()) throw ConflictError("prune_redundant needs a conflict-free map");
  TeachingMap out = map;
  for (std::size_t b = 0; b < family.size(); ++b) {
    const int home = ts.component_of.at(family[b].center);
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::pair<int, int>, VertexSet> by_orbit;
      for (int v : out[b])
        if (ts.component_of[v] >= 0) by_orbit[ts.orbit_id(v)].push_back(v);
      for (auto& [id, vs] : by_orbit) {
        if (vs.size() < 3) continue;
        for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
          if (ts.component_of[*it] == home) continue;
          auto& t = out[b];
          t.erase(std::find(t.begin(), t.end(), *it));
          changed = true;
          break;
        }
        break;
      }
    }
  }
  if (!verify(family, out).empty()) throw std::logic_error("pruning introduced a conflict");
  return out;
}

/// Instance-specific bounds of the kernel: s caps a pruned teaching set,
/// c caps the 2-extended core, f is the number of twins kept per class.
struct Bounds {
  using Int = boost::multiprecision::cpp_int;
  Int s, b, b_x, c, f;
};

namespace detail {

inline Bounds::Int binomial(const Bounds::Int& n, const Bounds::Int& k) {
  if (k > n) return 0;
  Bounds::Int r = 1;
  for (Bounds::Int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace detail

/// s = |X| + 2p * #classes, b = most family balls centered in one component,
/// b_x = balls centered in X. The core holds at most one (B,x)-core of s+1
/// components per ball and teaching vertex; each extension adds at most s
/// components per ball centered in the previous level or in X.
inline Bounds bounds(const TwinStructure& ts, const BallFamily& family) {
  using Int = Bounds::Int;
  Bounds out;
  const auto& w = ts.witness;
  out.s = Int(w.separator.size()) + Int(2) * w.p * Int(ts.classes.size());
  std::vector<int> per_comp(ts.component_count(), 0);
  int in_x = 0;
  for (std::size_t b = 0; b < family.size(); ++b) {
    auto comps = ts.center_components(static_cast<int>(b));
    for (int c : comps) {
      if (c < 0)
        ++in_x;
      else
        ++per_comp[c];
    }
  }
  int bmax = 0;
  for (int x : per_comp) bmax = std::max(bmax, x);
  out.b = bmax;
  out.b_x = in_x;
  const Int comps = Int(ts.component_count());
  const Int k = out.b * comps * out.s * (out.s + 1);
  const Int k1 = k + out.s * (out.b_x + out.b * k);
  out.c = k1 + out.s * (out.b_x + out.b * k1);
  const Int slots = Int(w.p) * out.c + w.p;
  out.f = out.c + boost::multiprecision::pow(detail::binomial(slots, out.s),
                                             static_cast<unsigned>(bmax)) +
          1;
  return out;
}

}  // namespace nonclash
