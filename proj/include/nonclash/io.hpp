#pragma once

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "nonclash/error.hpp"
#include "nonclash/instance.hpp"
#include "nonclash/reduce.hpp"
#include "nonclash/teaching.hpp"

namespace nonclash {

namespace detail {

// Next line that is neither blank nor a '#' comment.
inline bool next_content_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

inline std::vector<long long> parse_ints(const std::string& line, int lineno) {
  std::istringstream ls(line);
  std::vector<long long> out;
  long long x;
  while (ls >> x) out.push_back(x);
  if (!ls.eof()) throw FormatError("expected integers", lineno);
  return out;
}

}  // namespace detail

/// Graph text: `n m`, then m lines `u v` with 0 <= u < v < n.
inline Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!detail::next_content_line(in, line, lineno)) throw FormatError("empty graph file");
  auto head = detail::parse_ints(line, lineno);
  if (head.size() != 2 || head[0] < 0 || head[1] < 0) throw FormatError("expected 'n m'", lineno);
  const long long n = head[0], m = head[1];
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  while (detail::next_content_line(in, line, lineno)) {
    auto e = detail::parse_ints(line, lineno);
    if (e.size() != 2) throw FormatError("expected 'u v'", lineno);
    if (e[0] < 0 || e[1] >= n || e[0] >= e[1])
      throw FormatError("edge must satisfy 0 <= u < v < n", lineno);
    std::pair<int, int> p{static_cast<int>(e[0]), static_cast<int>(e[1])};
    if (!seen.insert(p).second) throw FormatError("duplicate edge", lineno);
    edges.push_back(p);
  }
  if (static_cast<long long>(edges.size()) != m)
    throw FormatError("header announces " + std::to_string(m) + " edges, found " +
                      std::to_string(edges.size()));
  return Graph(static_cast<int>(n), edges);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

/// Ball family text: the single token STRICT, or lines `center radius`.
inline BallFamily read_balls(std::istream& in, const Graph& g) {
  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, int>> labels;
  bool strict = false;
  while (detail::next_content_line(in, line, lineno)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "STRICT") {
      std::string extra;
      if (strict || !labels.empty() || (ls >> extra))
        throw FormatError("STRICT must be the only entry", lineno);
      strict = true;
      continue;
    }
    if (strict) throw FormatError("STRICT must be the only entry", lineno);
    auto cr = detail::parse_ints(line, lineno);
    if (cr.size() != 2) throw FormatError("expected 'center radius'", lineno);
    if (cr[0] < 0 || cr[0] >= g.vertex_count())
      throw FormatError("center out of range", lineno);
    if (cr[1] < 0) throw FormatError("negative radius", lineno);
    labels.emplace_back(static_cast<int>(cr[0]), static_cast<int>(cr[1]));
  }
  if (strict) return all_balls_strict(g);
  return BallFamily::from_labels(g, labels, false);
}

inline void write_balls(std::ostream& out, const BallFamily& family) {
  if (family.strict()) {
    out << "STRICT\n";
    return;
  }
  for (const auto& b : family.balls()) out << b.center << ' ' << b.radius << '\n';
}

inline nlohmann::json map_to_json(const BallFamily& family, const TeachingMap& map) {
  detail::check_domain(family, map);
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < family.size(); ++i)
    entries.push_back({{"center", family[i].center},
                       {"radius", family[i].radius},
                       {"teach", map[i]}});
  return {{"dimension", map.dimension()}, {"entries", entries}};
}

/// Entries are matched by canonical label, else by the member set of the
/// ball they name. Every ball must appear exactly once.
inline TeachingMap map_from_json(const nlohmann::json& j, const Graph& g,
                                 const BallFamily& family) {
  try {
    TeachingMap t(family.size());
    std::vector<char> seen(family.size(), 0);
    for (const auto& e : j.at("entries")) {
      const int c = e.at("center").get<int>();
      const int r = e.at("radius").get<int>();
      if (c < 0 || c >= g.vertex_count() || r < 0)
        throw FormatError("entry (" + std::to_string(c) + "," + std::to_string(r) + ") is invalid");
      auto b = family.find_label(c, r);
      if (!b) b = family.find(ball(g, c, r).members);
      if (!b)
        throw MapDomainError("entry (" + std::to_string(c) + "," + std::to_string(r) +
                             ") names no ball of the family");
      if (seen[*b]++) throw MapDomainError("ball (" + std::to_string(c) + "," + std::to_string(r) +
                                           ") appears twice");
      auto teach = e.at("teach").get<VertexSet>();
      std::sort(teach.begin(), teach.end());
      t[*b] = std::move(teach);
    }
    for (std::size_t b = 0; b < family.size(); ++b)
      if (!seen[b])
        throw MapDomainError("no entry for ball (" + std::to_string(family[b].center) + "," +
                             std::to_string(family[b].radius) + ")");
    detail::check_domain(family, t);
    if (j.contains("dimension") && j.at("dimension").get<std::size_t>() != t.dimension())
      throw FormatError("declared dimension does not match the teaching sets");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("teaching map JSON: ") + e.what());
  }
}

inline nlohmann::json parse_json(std::istream& in) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

/// Sidecar describing how a reduced instance sits inside the original.
struct Provenance {
  VertexSet kept_vertices;    // reduced id -> original id
  std::vector<int> ball_map;  // reduced ball -> original ball
  int p = 0;
  VertexSet separator;
};

inline nlohmann::json provenance_to_json(const Reduction& red) {
  nlohmann::json kept = nlohmann::json::object();
  for (std::size_t i = 0; i < red.kept_vertices.size(); ++i)
    kept[std::to_string(i)] = red.kept_vertices[i];
  nlohmann::json balls = nlohmann::json::object();
  for (std::size_t i = 0; i < red.ball_map.size(); ++i) balls[std::to_string(i)] = red.ball_map[i];
  return {{"kept_vertices", kept},
          {"ball_map", balls},
          {"witness", {{"p", red.witness.p}, {"X", red.witness.separator}}}};
}

inline Provenance provenance_from_json(const nlohmann::json& j) {
  try {
    Provenance p;
    auto dense = [](const nlohmann::json& obj, const char* what) {
      std::vector<int> out(obj.size(), -1);
      for (auto it = obj.begin(); it != obj.end(); ++it) {
        std::size_t pos = 0;
        const long long key = std::stoll(it.key(), &pos);
        if (pos != it.key().size() || key < 0 || key >= static_cast<long long>(out.size()) ||
            out[key] >= 0)
          throw FormatError(std::string("bad key '") + it.key() + "' in " + what);
        out[key] = it.value().get<int>();
      }
      return out;
    };
    p.kept_vertices = dense(j.at("kept_vertices"), "kept_vertices");
    p.ball_map = dense(j.at("ball_map"), "ball_map");
    p.p = j.at("witness").at("p").get<int>();
    p.separator = j.at("witness").at("X").get<VertexSet>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("provenance JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    throw FormatError(std::string("provenance JSON: ") + e.what());
  }
}

inline nlohmann::json roles_to_json(const GeneratedInstance& inst) {
  return {{"k", inst.k}, {"roles", inst.vertex_roles}, {"radii", inst.radii}};
}

}  // namespace nonclash
