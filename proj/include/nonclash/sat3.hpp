#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nonclash/error.hpp"
#include "nonclash/instance.hpp"
#include "nonclash/teaching.hpp"

namespace nonclash {

struct Literal {
  int var = 0;  // 0-based
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause3 = std::array<Literal, 3>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause3> clauses;

  void validate() const {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
    for (std::size_t c = 0; c < clauses.size(); ++c)
      for (const auto& l : clauses[c])
        if (l.var < 0 || l.var >= num_vars)
          throw std::invalid_argument("clause " + std::to_string(c) + " uses variable " +
                                      std::to_string(l.var) + " outside [0," +
                                      std::to_string(num_vars) + ")");
  }

  bool satisfied_by(const std::vector<bool>& tau) const {
    for (const auto& c : clauses) {
      bool sat = false;
      for (const auto& l : c) sat = sat || (tau.at(l.var) != l.negated);
      if (!sat) return false;
    }
    return true;
  }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// DIMACS CNF reader. Every clause must have exactly three literals.
inline CnfFormula read_dimacs(std::istream& in) {
  CnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  std::vector<Literal> cur;
  int cur_line = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%') continue;
    if (tok == "p") {
      std::string fmt;
      long long n = -1, m = -1;
      if (header || !(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0)
        throw FormatError("bad DIMACS header", lineno);
      f.num_vars = static_cast<int>(n);
      declared = static_cast<std::size_t>(m);
      header = true;
      continue;
    }
    if (!header) throw FormatError("clause before 'p cnf' header", lineno);
    ls.clear();
    ls.str(line);
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (cur.size() != 3)
          throw FormatError("clause has " + std::to_string(cur.size()) +
                                " literals, expected exactly 3",
                            cur_line);
        f.clauses.push_back({cur[0], cur[1], cur[2]});
        cur.clear();
        continue;
      }
      long long v = lit < 0 ? -lit : lit;
      if (v > f.num_vars) throw FormatError("literal " + std::to_string(lit) + " out of range", lineno);
      if (cur.empty()) cur_line = lineno;
      cur.push_back({static_cast<int>(v - 1), lit < 0});
    }
    if (!ls.eof()) throw FormatError("unexpected token in clause", lineno);
  }
  if (!header) throw FormatError("missing 'p cnf' header");
  if (!cur.empty()) throw FormatError("unterminated clause", cur_line);
  if (f.clauses.size() != declared)
    throw FormatError("header declares " + std::to_string(declared) + " clauses, found " +
                      std::to_string(f.clauses.size()));
  return f;
}

inline void write_dimacs(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (const auto& l : c) out << (l.negated ? -(l.var + 1) : l.var + 1) << ' ';
    out << "0\n";
  }
}

/// Exhaustive truth-table search; refuses more than 20 variables.
inline std::optional<std::vector<bool>> sat3_brute(const CnfFormula& f) {
  f.validate();
  if (f.num_vars > 20) throw SizeGuardError("sat3_brute refuses more than 20 variables");
  std::vector<bool> tau(f.num_vars);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
    for (int v = 0; v < f.num_vars; ++v) tau[v] = (mask >> v) & 1;
    if (f.satisfied_by(tau)) return tau;
  }
  return std::nullopt;
}

/// Drops clauses holding both x and its negation (the gadget would attach to
/// t_i and f_i at once), then appends (y1 ∨ y2 ∨ y3) ∧ (y4 ∨ y5 ∨ y6) over
/// six fresh variables, so that two variables (y1, y4) never share a clause.
/// Satisfiability is unchanged.
inline CnfFormula pad_formula(const CnfFormula& f) {
  CnfFormula g{f.num_vars, {}};
  for (const auto& c : f.clauses) {
    bool tautology = false;
    for (const auto& a : c)
      for (const auto& b : c) tautology = tautology || (a.var == b.var && a.negated != b.negated);
    if (!tautology) g.clauses.push_back(c);
  }
  const int b = f.num_vars;
  g.num_vars += 6;
  g.clauses.push_back({Literal{b, false}, Literal{b + 1, false}, Literal{b + 2, false}});
  g.clauses.push_back({Literal{b + 3, false}, Literal{b + 4, false}, Literal{b + 5, false}});
  return g;
}

/// Split-graph instance with k = 2 for a padded formula; roles are 1-based:
/// t_i, f_i, r*_i, r**_i, r***_i, r'_i, r''_i, r'_0, s*_k, s**_k, s***_k,
/// s'_k, s''_k, s'_0, a.
struct Sat3Instance {
  GeneratedInstance instance;
  CnfFormula formula;  // padded
  int original_vars = 0;

  int t(int i) const { return instance.vertex("t_" + std::to_string(i + 1)); }
  int f(int i) const { return instance.vertex("f_" + std::to_string(i + 1)); }
  int r(const std::string& kind, int i) const {
    return instance.vertex("r" + kind + "_" + std::to_string(i + 1));
  }
  int s(const std::string& kind, int k) const {
    return instance.vertex("s" + kind + "_" + std::to_string(k + 1));
  }
};

inline Sat3Instance gen_sat3(const CnfFormula& input) {
  input.validate();
  const CnfFormula phi = pad_formula(input);
  const int n = phi.num_vars;
  const int m = static_cast<int>(phi.clauses.size());
  detail::LabeledGraphBuilder gb;
  auto id = [](int i) { return std::to_string(i + 1); };

  std::vector<int> t(n), f(n);
  for (int i = 0; i < n; ++i) {
    t[i] = gb.add("t_" + id(i));
    f[i] = gb.add("f_" + id(i));
  }
  // force gadget: v' ~ v*, v**; v'' ~ v*, v**, v***; no v'-v*** edge
  struct Gadget {
    int star, star2, star3, prime, prime2;
  };
  auto gadget = [&](const std::string& p, int i) {
    Gadget g{gb.add(p + "*_" + id(i)), gb.add(p + "**_" + id(i)), gb.add(p + "***_" + id(i)),
             gb.add(p + "'_" + id(i)), gb.add(p + "''_" + id(i))};
    gb.edge(g.prime, g.star);
    gb.edge(g.prime, g.star2);
    gb.edge(g.prime2, g.star);
    gb.edge(g.prime2, g.star2);
    gb.edge(g.prime2, g.star3);
    return g;
  };
  std::vector<Gadget> rg(n), sg(m);
  for (int i = 0; i < n; ++i) {
    rg[i] = gadget("r", i);
    for (int a : {t[i], f[i]}) {
      gb.edge(rg[i].star, a);
      gb.edge(rg[i].star3, a);
    }
  }
  const int r0 = gb.add("r'_0");
  for (int k = 0; k < m; ++k) {
    sg[k] = gadget("s", k);
    for (const auto& l : phi.clauses[k]) {
      int a = l.negated ? t[l.var] : f[l.var];
      gb.edge(sg[k].star, a);
      gb.edge(sg[k].star3, a);
    }
  }
  const int s0 = gb.add("s'_0");
  const int a = gb.add("a");

  std::vector<int> rstar, sstar, rprime{r0}, sprime{s0};
  for (const auto& g : rg) {
    rstar.insert(rstar.end(), {g.star, g.star2, g.star3});
    rprime.insert(rprime.end(), {g.prime, g.prime2});
  }
  for (const auto& g : sg) {
    sstar.insert(sstar.end(), {g.star, g.star2, g.star3});
    sprime.insert(sprime.end(), {g.prime, g.prime2});
  }
  auto biclique = [&](const std::vector<int>& x, const std::vector<int>& y) {
    for (int u : x)
      for (int v : y) gb.edge(u, v);
  };
  auto clique = [&](const std::vector<int>& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) gb.edge(x[i], x[j]);
  };
  biclique(sstar, rstar);
  biclique(rstar, sprime);
  biclique(sstar, rprime);
  clique(sstar);
  clique(rstar);
  for (int v = 0; v < gb.size(); ++v) gb.edge(a, v);

  Graph g = gb.graph();
  Sat3Instance out;
  out.instance = gb.finish(all_balls_strict(g), 2);
  out.formula = phi;
  out.original_vars = input.num_vars;
  return out;
}

/// The explicit dimension-2 map built from a satisfying assignment. `tau`
/// may cover only the original variables; padding variables are set true.
inline TeachingMap table1_map(const Sat3Instance& inst, std::vector<bool> tau) {
  const auto& phi = inst.formula;
  const auto& fam = inst.instance.family;
  const auto& g = inst.instance.graph;
  if (static_cast<int>(tau.size()) == inst.original_vars) tau.resize(phi.num_vars, true);
  if (static_cast<int>(tau.size()) != phi.num_vars)
    throw std::invalid_argument("assignment has wrong length");
  const int n = phi.num_vars;
  const int m = static_cast<int>(phi.clauses.size());
  const int a = inst.instance.vertex("a");
  const int r0 = inst.instance.vertex("r'_0");
  const int s0 = inst.instance.vertex("s'_0");

  TeachingMap t(fam.size());
  std::vector<char> done(fam.size(), 0);
  auto put = [&](int center, VertexSet teach) {
    auto b = fam.find(ball(g, center, 1).members);
    if (!b) throw std::logic_error("radius-1 ball missing from strict family");
    std::sort(teach.begin(), teach.end());
    if (done[*b] && t[*b] != teach)
      throw std::logic_error("two radius-1 balls coincide with different teaching sets");
    t[*b] = std::move(teach);
    done[*b] = 1;
  };

  for (int k = 0; k < m; ++k) {
    std::optional<int> v;
    for (const auto& l : phi.clauses[k]) {
      if (tau[l.var] != l.negated) {
        v = l.negated ? inst.t(l.var) : inst.f(l.var);
        break;
      }
    }
    if (!v) throw std::invalid_argument("assignment falsifies clause " + std::to_string(k + 1));
    put(inst.s("*", k), {inst.s("'", k), *v});
    put(inst.s("**", k), {inst.s("'", k), r0});
    put(inst.s("***", k), {inst.s("''", k), r0});
    put(inst.s("'", k), {inst.s("'", k), inst.s("**", k)});
    put(inst.s("''", k), {inst.s("''", k), inst.s("***", k)});
  }
  put(s0, {s0, a});
  for (int i = 0; i < n; ++i) {
    put(inst.r("*", i), {inst.r("'", i), tau[i] ? inst.t(i) : inst.f(i)});
    put(inst.r("**", i), {inst.r("'", i), s0});
    put(inst.r("***", i), {inst.r("''", i), s0});
    put(inst.r("'", i), {inst.r("'", i), inst.r("**", i)});
    put(inst.r("''", i), {inst.r("''", i), inst.r("***", i)});
    put(inst.t(i), {inst.t(i), a});
    put(inst.f(i), {inst.f(i), a});
  }
  put(r0, {r0, a});

  // T(V(G)) = {t_i, t_j} for the first pair of variables sharing no clause.
  std::optional<std::pair<int, int>> pair;
  for (int i = 0; i < n && !pair; ++i)
    for (int j = i + 1; j < n && !pair; ++j) {
      bool together = false;
      for (const auto& c : phi.clauses) {
        bool hi = false, hj = false;
        for (const auto& l : c) {
          hi = hi || l.var == i;
          hj = hj || l.var == j;
        }
        together = together || (hi && hj);
      }
      if (!together) pair = std::pair(i, j);
    }
  if (!pair) throw std::logic_error("no pair of variables avoids every clause");
  put(a, {inst.t(pair->first), inst.t(pair->second)});

  for (std::size_t b = 0; b < fam.size(); ++b) {
    if (done[b]) continue;
    if (fam[b].members.size() != 1)
      throw std::logic_error("ball of radius >= 2 other than V(G) in the strict family");
    t[b] = fam[b].members;
  }
  return t;
}

/// Reads the assignment forced by a dimension-2 solution: x_i is true iff
/// t_i is taught for B_1(r*_i). Returns values for the original variables.
inline std::vector<bool> extract_assignment_sat3(const Sat3Instance& inst, const TeachingMap& map) {
  const auto& fam = inst.instance.family;
  if (map.dimension() > 2) throw std::invalid_argument("map dimension exceeds 2");
  if (!verify(fam, map).empty()) throw ConflictError("map has conflicts");
  std::vector<bool> tau(inst.formula.num_vars);
  for (int i = 0; i < inst.formula.num_vars; ++i) {
    auto b = fam.find(ball(inst.instance.graph, inst.r("*", i), 1).members);
    const auto& teach = map[*b];
    bool has_t = detail::sorted_contains(teach, inst.t(i));
    bool has_f = detail::sorted_contains(teach, inst.f(i));
    if (has_t == has_f)
      throw StructuralViolation("teaching set of B_1(r*_" + std::to_string(i + 1) +
                                ") does not pick exactly one of t_i, f_i");
    tau[i] = has_t;
  }
  if (!inst.formula.satisfied_by(tau))
    throw StructuralViolation("extracted assignment does not satisfy the formula");
  tau.resize(inst.original_vars);
  return tau;
}

}  // namespace nonclash
