#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nonclash/error.hpp"
#include "nonclash/instance.hpp"
#include "nonclash/teaching.hpp"

namespace nonclash {

/// The inequality `var <= threshold`.
struct NaeLiteral {
  int var = 0;
  int threshold = 1;
  friend bool operator==(const NaeLiteral&, const NaeLiteral&) = default;
};

struct NaeFormula {
  int d = 1;
  int num_vars = 0;
  std::vector<std::array<NaeLiteral, 3>> clauses;

  void validate() const {
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      const auto& cl = clauses[c];
      for (const auto& l : cl) {
        if (l.var < 0 || l.var >= num_vars)
          throw std::invalid_argument("clause " + std::to_string(c) + ": variable out of range");
        if (l.threshold < 1 || l.threshold > d)
          throw std::invalid_argument("clause " + std::to_string(c) + ": threshold outside 1.." +
                                      std::to_string(d));
      }
      if (cl[0].var == cl[1].var || cl[0].var == cl[2].var || cl[1].var == cl[2].var)
        throw std::invalid_argument("clause " + std::to_string(c) +
                                    ": variables must be distinct");
    }
  }

  /// Values are 1..d. A clause is NAE-satisfied when one or two of its
  /// inequalities hold.
  bool satisfied_by(const std::vector<int>& sigma) const {
    for (const auto& cl : clauses) {
      int holds = 0;
      for (const auto& l : cl) holds += sigma.at(l.var) <= l.threshold;
      if (holds == 0 || holds == 3) return false;
    }
    return true;
  }

  friend bool operator==(const NaeFormula&, const NaeFormula&) = default;
};

/// Text format: first line d, then one clause per line `x c_x y c_y z c_z`
/// with 0-indexed variables. Blank lines and '#' comments are skipped. The
/// variable count is one more than the largest variable mentioned.
inline NaeFormula read_nae(std::istream& in) {
  NaeFormula f;
  bool have_d = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long long> nums;
    long long x;
    while (ls >> x) nums.push_back(x);
    if (!ls.eof()) throw FormatError("non-integer token", lineno);
    if (nums.empty()) continue;
    if (!have_d) {
      if (nums.size() != 1 || nums[0] < 1) throw FormatError("expected positive d", lineno);
      f.d = static_cast<int>(nums[0]);
      have_d = true;
      continue;
    }
    if (nums.size() != 6) throw FormatError("clause needs 6 integers", lineno);
    std::array<NaeLiteral, 3> cl;
    for (int i = 0; i < 3; ++i) {
      if (nums[2 * i] < 0) throw FormatError("negative variable", lineno);
      if (nums[2 * i + 1] < 1 || nums[2 * i + 1] > f.d)
        throw FormatError("threshold outside 1..d", lineno);
      cl[i] = {static_cast<int>(nums[2 * i]), static_cast<int>(nums[2 * i + 1])};
      f.num_vars = std::max(f.num_vars, cl[i].var + 1);
    }
    if (cl[0].var == cl[1].var || cl[0].var == cl[2].var || cl[1].var == cl[2].var)
      throw FormatError("clause variables must be distinct", lineno);
    f.clauses.push_back(cl);
  }
  if (!have_d) throw FormatError("missing d");
  return f;
}

inline void write_nae(std::ostream& out, const NaeFormula& f) {
  out << f.d << '\n';
  for (const auto& cl : f.clauses)
    out << cl[0].var << ' ' << cl[0].threshold << ' ' << cl[1].var << ' ' << cl[1].threshold
        << ' ' << cl[2].var << ' ' << cl[2].threshold << '\n';
}

/// Exhaustive search over {1..d}^vars, lexicographic with variable 0 most
/// significant. Refuses more than 2^20 assignments.
inline std::optional<std::vector<int>> nae_brute(const NaeFormula& f) {
  f.validate();
  std::uint64_t total = 1;
  for (int i = 0; i < f.num_vars; ++i) {
    total *= static_cast<std::uint64_t>(f.d);
    if (total > (std::uint64_t{1} << 20))
      throw SizeGuardError("nae_brute refuses more than 2^20 assignments");
  }
  std::vector<int> sigma(f.num_vars, 1);
  while (true) {
    if (f.satisfied_by(sigma)) return sigma;
    int i = f.num_vars - 1;
    while (i >= 0 && sigma[i] == f.d) sigma[i--] = 1;
    if (i < 0) return std::nullopt;
    ++sigma[i];
  }
}

/// Roles: path vertex j of variable v is "x<v>_<j>" (j = 1..d), clause hubs
/// are "c<k>" and "c'<k>", the per-variable hub is "f<v>". Connecting paths
/// are named after their endpoints, e.g. "c0-x2#3" is the third vertex after
/// c0 on its path to variable 2. Radii "r_c<k>" and "r'_c<k>" are recorded.
struct NaeInstance {
  GeneratedInstance instance;
  NaeFormula formula;
  int ball_all = 0;                // V(G)
  std::vector<int> ball_f;         // per variable
  std::vector<int> ball_c, ball_cp;  // per clause

  int path_vertex(int var, int j) const {
    return instance.vertex("x" + std::to_string(var) + "_" + std::to_string(j));
  }
  int f(int var) const { return instance.vertex("f" + std::to_string(var)); }
  int c(int k) const { return instance.vertex("c" + std::to_string(k)); }
  int cp(int k) const { return instance.vertex("c'" + std::to_string(k)); }
};

namespace detail {

// Clause literals ordered so that c_x <= c_y <= c_z.
inline std::array<NaeLiteral, 3> sorted_clause(std::array<NaeLiteral, 3> cl) {
  std::stable_sort(cl.begin(), cl.end(),
                   [](const NaeLiteral& a, const NaeLiteral& b) { return a.threshold < b.threshold; });
  return cl;
}

}  // namespace detail

inline NaeInstance gen_nae(const NaeFormula& psi) {
  psi.validate();
  const int d = psi.d;
  const int nv = psi.num_vars;
  const int nc = static_cast<int>(psi.clauses.size());
  detail::LabeledGraphBuilder gb;
  auto name = [&](int v) { return "x" + std::to_string(v); };

  std::vector<std::vector<int>> path(nv);
  for (int v = 0; v < nv; ++v) {
    for (int j = 1; j <= d; ++j) {
      path[v].push_back(gb.add(name(v) + "_" + std::to_string(j)));
      if (j > 1) gb.edge(path[v][j - 2], path[v][j - 1]);
    }
  }
  std::map<std::string, int> radii;
  radii["d"] = d;
  std::vector<int> hub_c(nc), hub_cp(nc);
  for (int k = 0; k < nc; ++k) {
    const auto cl = detail::sorted_clause(psi.clauses[k]);
    const int cx = cl[0].threshold, cy = cl[1].threshold, cz = cl[2].threshold;
    const std::string ck = "c" + std::to_string(k), cpk = "c'" + std::to_string(k);
    const int c = hub_c[k] = gb.add(ck);
    const int cp = hub_cp[k] = gb.add(cpk);
    const std::array<int, 3> to_c{4 * d, 4 * d + cy - cx, 4 * d + cz - cx};
    const std::array<int, 3> to_cp{4 * d + cz - cx, 4 * d + cz - cy, 4 * d};
    for (int i = 0; i < 3; ++i) {
      gb.path(c, path[cl[i].var][d - 1], to_c[i], ck + "-" + name(cl[i].var));
      gb.path(cp, path[cl[i].var][0], to_cp[i], cpk + "-" + name(cl[i].var));
    }
    for (int q = 0; q < nv; ++q) {
      if (q == cl[0].var || q == cl[1].var || q == cl[2].var) continue;
      gb.path(c, path[q][0], 3 * d, ck + "-" + name(q));
      gb.path(cp, path[q][0], 3 * d, cpk + "-" + name(q));
    }
    radii["r_" + ck] = 5 * d - cx - 1;
    radii["r'_" + ck] = 4 * d + cz - 1;
  }
  const int s_size = gb.size();
  std::vector<int> fx(nv);
  for (int x = 0; x < nv; ++x) {
    fx[x] = gb.add("f" + std::to_string(x));
    for (int s = 0; s < s_size; ++s) {
      if (std::find(path[x].begin(), path[x].end(), s) != path[x].end()) continue;
      gb.path(fx[x], s, 6 * d, "f" + std::to_string(x) + "-" + gb.role(s));
    }
  }
  for (int x = 0; x < nv; ++x)
    for (int y = x + 1; y < nv; ++y) gb.edge(fx[x], fx[y]);

  const Graph g = gb.graph();
  std::vector<VertexSet> sets;
  VertexSet all(g.vertex_count());
  std::iota(all.begin(), all.end(), 0);
  sets.push_back(all);
  for (int x = 0; x < nv; ++x) sets.push_back(ball(g, fx[x], 6 * d).members);
  for (int k = 0; k < nc; ++k) {
    sets.push_back(ball(g, hub_c[k], radii["r_c" + std::to_string(k)]).members);
    sets.push_back(ball(g, hub_cp[k], radii["r'_c" + std::to_string(k)]).members);
  }
  NaeInstance out;
  out.instance = gb.finish(BallFamily::from_sets(g, sets, false), nv);
  out.instance.radii = radii;
  out.formula = psi;
  const auto& fam = out.instance.family;
  auto index_of = [&](const VertexSet& s) {
    auto b = fam.find(s);
    if (!b) throw std::logic_error("constructed ball missing from family");
    return *b;
  };
  out.ball_all = index_of(sets[0]);
  for (int x = 0; x < nv; ++x) out.ball_f.push_back(index_of(sets[1 + x]));
  for (int k = 0; k < nc; ++k) {
    out.ball_c.push_back(index_of(sets[1 + nv + 2 * k]));
    out.ball_cp.push_back(index_of(sets[2 + nv + 2 * k]));
  }
  return out;
}

/// The map built from an NAE-satisfying assignment (values 1..d): clause
/// balls teach their own hub, B_6d(f_x) teaches f_x and the first vertex of
/// every other variable path, V(G) teaches x_{sigma(x)} for every x.
inline TeachingMap nae_witness_map(const NaeInstance& inst, const std::vector<int>& sigma) {
  const auto& psi = inst.formula;
  if (static_cast<int>(sigma.size()) != psi.num_vars)
    throw std::invalid_argument("assignment has wrong length");
  for (int v : sigma)
    if (v < 1 || v > psi.d) throw std::invalid_argument("assignment value outside 1..d");
  if (!psi.satisfied_by(sigma)) throw std::invalid_argument("assignment is not NAE-satisfying");
  const auto& fam = inst.instance.family;
  TeachingMap t(fam.size());
  auto put = [&](int b, VertexSet s) {
    std::sort(s.begin(), s.end());
    t[b] = std::move(s);
  };
  for (std::size_t k = 0; k < psi.clauses.size(); ++k) {
    put(inst.ball_c[k], {inst.c(static_cast<int>(k))});
    put(inst.ball_cp[k], {inst.cp(static_cast<int>(k))});
  }
  VertexSet all;
  for (int x = 0; x < psi.num_vars; ++x) {
    VertexSet s{inst.f(x)};
    for (int y = 0; y < psi.num_vars; ++y)
      if (y != x) s.push_back(inst.path_vertex(y, 1));
    put(inst.ball_f[x], s);
    all.push_back(inst.path_vertex(x, sigma[x]));
  }
  put(inst.ball_all, all);
  return t;
}

/// Reads sigma(x) as the index of the unique vertex of P^x taught for V(G).
inline std::vector<int> extract_assignment_nae(const NaeInstance& inst, const TeachingMap& map) {
  const auto& psi = inst.formula;
  const auto& fam = inst.instance.family;
  if (map.dimension() > static_cast<std::size_t>(inst.instance.k))
    throw std::invalid_argument("map dimension exceeds k");
  if (!verify(fam, map).empty()) throw ConflictError("map has conflicts");
  const auto& teach = map[inst.ball_all];
  std::vector<int> sigma(psi.num_vars, 0);
  for (int x = 0; x < psi.num_vars; ++x) {
    for (int j = 1; j <= psi.d; ++j) {
      if (!detail::sorted_contains(teach, inst.path_vertex(x, j))) continue;
      if (sigma[x] != 0)
        throw StructuralViolation("T(V(G)) holds two vertices of variable path " +
                                  std::to_string(x));
      sigma[x] = j;
    }
    if (sigma[x] == 0)
      throw StructuralViolation("T(V(G)) misses variable path " + std::to_string(x));
  }
  if (!psi.satisfied_by(sigma))
    throw StructuralViolation("extracted assignment is not NAE-satisfying");
  return sigma;
}

struct NaeStructureReport {
  bool acyclic_after_deletion = false;
  int fvs_witness_size = 0;
  bool family_size_ok = false;
  bool radii_ok = false;
  bool ball_contents_ok = false;
  bool caterpillars_ok = false;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

namespace detail {

// A tree is a central path with pendant paths iff the subtree spanning its
// vertices of degree >= 3 is itself a path.
inline bool is_subdivided_caterpillar(const Graph& tree) {
  const int n = tree.vertex_count();
  std::vector<int> deg(n);
  std::vector<char> alive(n, 1);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    deg[v] = tree.degree(v);
    if (deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (int w : tree.neighbors(v)) {
      if (!alive[w]) continue;
      if (--deg[w] <= 1 && tree.degree(w) < 3) stack.push_back(w);
    }
  }
  for (int v = 0; v < n; ++v)
    if (alive[v] && deg[v] > 2) return false;
  return true;
}

}  // namespace detail

/// Audits a gen_nae instance: the fvs deletion, family size, radii, ball
/// contents by distance recomputation, and the caterpillar shape of what
/// remains after also removing the clause hubs.
inline NaeStructureReport structural_checks_nae(const NaeInstance& inst) {
  NaeStructureReport rep;
  const auto& psi = inst.formula;
  const auto& g = inst.instance.graph;
  const auto& fam = inst.instance.family;
  const int d = psi.d;
  const int nv = psi.num_vars;
  const int nc = static_cast<int>(psi.clauses.size());

  VertexSet fvs;
  for (int x = 0; x < nv; ++x) {
    fvs.push_back(inst.path_vertex(x, 1));
    fvs.push_back(inst.path_vertex(x, d));
    fvs.push_back(inst.f(x));
  }
  std::sort(fvs.begin(), fvs.end());
  fvs.erase(std::unique(fvs.begin(), fvs.end()), fvs.end());
  rep.fvs_witness_size = static_cast<int>(fvs.size());
  auto [rest, rest_ids] = delete_vertices(g, fvs);
  rep.acyclic_after_deletion = is_acyclic(rest);
  if (!rep.acyclic_after_deletion) rep.failures.push_back("graph minus {x_1, x_d, f_x} has a cycle");
  if (d > 1 && rep.fvs_witness_size != 3 * nv)
    rep.failures.push_back("fvs witness size is not 3|X|");

  rep.family_size_ok = fam.size() == static_cast<std::size_t>(1 + nv + 2 * nc);
  if (!rep.family_size_ok) rep.failures.push_back("family size differs from 1+|X|+2|C|");

  rep.radii_ok = true;
  rep.ball_contents_ok = true;
  auto expect = [&](int b, const VertexSet& members, const std::string& what) {
    if (fam[b].members != members) {
      rep.ball_contents_ok = false;
      rep.failures.push_back(what + " has unexpected members");
    }
  };
  for (int k = 0; k < nc; ++k) {
    const auto cl = detail::sorted_clause(psi.clauses[k]);
    const std::string ck = "c" + std::to_string(k);
    const int rc = inst.instance.radii.at("r_" + ck);
    const int rcp = inst.instance.radii.at("r'_" + ck);
    if (rc != 5 * d - cl[0].threshold - 1 || rcp != 4 * d + cl[2].threshold - 1) {
      rep.radii_ok = false;
      rep.failures.push_back("radii of clause " + std::to_string(k) + " are off");
    }
    // On variable paths, B_rc(c) drops exactly the first c_v vertices of
    // each clause variable and B_r'(c') keeps exactly those.
    auto dc = bfs_distances(g, inst.c(k));
    auto dcp = bfs_distances(g, inst.cp(k));
    for (int v = 0; v < nv; ++v) {
      int threshold = 0;
      for (const auto& l : cl)
        if (l.var == v) threshold = l.threshold;
      for (int j = 1; j <= d; ++j) {
        int u = inst.path_vertex(v, j);
        bool in_c = dc[u] != kUnreachable && dc[u] <= rc;
        bool in_cp = dcp[u] != kUnreachable && dcp[u] <= rcp;
        bool want_c = threshold == 0 || j > threshold;
        bool want_cp = threshold == 0 || j <= threshold;
        if (in_c != want_c || in_cp != want_cp) {
          rep.ball_contents_ok = false;
          rep.failures.push_back("clause " + std::to_string(k) + " balls disagree on x" +
                                 std::to_string(v) + "_" + std::to_string(j));
        }
      }
    }
    expect(inst.ball_c[k], ball(g, inst.c(k), rc).members, "B_rc(c" + std::to_string(k) + ")");
    expect(inst.ball_cp[k], ball(g, inst.cp(k), rcp).members,
           "B_r'(c'" + std::to_string(k) + ")");
  }
  VertexSet all(g.vertex_count());
  std::iota(all.begin(), all.end(), 0);
  expect(inst.ball_all, all, "V(G)");
  for (int x = 0; x < nv; ++x) {
    VertexSet want;
    for (int u = 0; u < g.vertex_count(); ++u) {
      bool on_path = false;
      for (int j = 1; j <= d; ++j) on_path = on_path || u == inst.path_vertex(x, j);
      if (!on_path) want.push_back(u);
    }
    expect(inst.ball_f[x], want, "B_6d(f" + std::to_string(x) + ")");
    expect(inst.ball_f[x], ball(g, inst.f(x), 6 * d).members, "B_6d(f" + std::to_string(x) + ")");
  }

  // Remove the clause hubs as well; every remaining tree must be a
  // subdivided caterpillar.
  VertexSet hubs = fvs;
  for (int k = 0; k < nc; ++k) {
    hubs.push_back(inst.c(k));
    hubs.push_back(inst.cp(k));
  }
  std::sort(hubs.begin(), hubs.end());
  auto [forest, forest_ids] = delete_vertices(g, hubs);
  rep.caterpillars_ok = is_acyclic(forest);
  if (rep.caterpillars_ok) {
    for (const auto& comp : components(forest)) {
      if (!detail::is_subdivided_caterpillar(induced_subgraph(forest, comp))) {
        rep.caterpillars_ok = false;
        break;
      }
    }
  }
  if (!rep.caterpillars_ok) rep.failures.push_back("a remaining component is not a caterpillar");
  return rep;
}

}  // namespace nonclash
