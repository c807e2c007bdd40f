// Command-line front end for the nonclash library.
//
// Exit codes: 0 success or feasible, 1 infeasible (or conflicts found),
// 2 usage or input error, 3 internal error. Results go to stdout as JSON
// (or flat text with --format text); diagnostics go to stderr.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nonclash/nonclash.hpp"

namespace {

using nlohmann::json;
using namespace nonclash;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string graph_path, balls_path = "STRICT", map_path, provenance_path;
  std::string cnf_path, nae_path, out_prefix;
  std::optional<int> k;
  std::string method = "exact";
  std::string retain;  // decimal, empty when not given
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string output;
  std::string format = "json";
  int vi_budget = 8;
  std::optional<int> cap;
  int random_n = 8;
  double random_p = 0.3;

  void validate() const {
    if (!retain.empty() && command == "solve" && method != "fpt")
      throw UsageError("--retain requires --method fpt");
    if (seed && command != "gen random") throw UsageError("--seed applies to 'gen random' only");
    if (workers < 1) throw UsageError("--workers must be at least 1");
    if (k && *k < 0) throw UsageError("--k must be non-negative");
  }
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

template <class F>
auto with_file(const std::string& path, F&& f) {
  auto in = open_in(path);
  try {
    return f(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Graph load_graph(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) throw UsageError("--graph is required");
  return with_file(cfg.graph_path, [](std::istream& in) { return read_graph(in); });
}

BallFamily load_balls(const RunConfig& cfg, const Graph& g) {
  if (cfg.balls_path == "STRICT") return all_balls_strict(g);
  return with_file(cfg.balls_path, [&](std::istream& in) { return read_balls(in, g); });
}

json load_json(const std::string& path) {
  return with_file(path, [](std::istream& in) { return parse_json(in); });
}

// solve prints {..., "map": {...}}; verify and lift accept that or a bare map.
const json& map_part(const json& j) { return j.contains("map") ? j.at("map") : j; }

Bounds::Int parse_big(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw UsageError("--retain must be a non-negative decimal integer");
  return Bounds::Int(s);
}

std::string str(const Bounds::Int& x) { return x.str(); }

json conflicts_json(const BallFamily& family, const std::vector<Conflict>& cs) {
  json out = json::array();
  for (auto c : cs)
    out.push_back({{"first", {{"center", family[c.first].center}, {"radius", family[c.first].radius}}},
                   {"second", {{"center", family[c.second].center}, {"radius", family[c.second].radius}}}});
  return out;
}

void emit(const RunConfig& cfg, const json& j) {
  std::ostringstream os;
  if (cfg.format == "text") {
    for (auto it = j.begin(); it != j.end(); ++it)
      os << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  } else {
    os << j.dump(2) << '\n';
  }
  if (cfg.output.empty())
    std::cout << os.str();
  else
    write_file(cfg.output, os.str());
}

SolveResult run_method(const RunConfig& cfg, const Graph& g, const BallFamily& family, int k) {
  if (cfg.method == "exact") return solve(family, k);
  std::optional<Bounds::Int> retain;
  if (!cfg.retain.empty()) retain = parse_big(cfg.retain);
  return fpt_solve(g, family, k, retain);
}

void warn_large_f(const Graph& g, const BallFamily& family, const RunConfig& cfg) {
  if (!cfg.retain.empty()) return;
  const auto ts = twin_classes(g, min_vi_witness(g), family);
  std::size_t largest = 0;
  for (const auto& c : ts.classes) largest = std::max(largest, c.members.size());
  const Bounds bd = bounds(ts, family);
  if (bd.f >= largest)
    std::cerr << "warning: retain bound f (" << str(bd.f).size()
              << " digits) exceeds every twin class (largest " << largest
              << "); the reduction keeps everything\n";
}

int cmd_solve(const RunConfig& cfg) {
  const Graph g = load_graph(cfg);
  const BallFamily family = load_balls(cfg, g);
  if (cfg.method == "fpt") warn_large_f(g, family, cfg);
  json out{{"method", cfg.method}, {"balls", family.size()}};
  SolveResult res;
  if (cfg.k) {
    res = run_method(cfg, g, family, *cfg.k);
    out["k"] = *cfg.k;
  } else {
    // smallest feasible k
    for (int k = 0;; ++k) {
      res = run_method(cfg, g, family, k);
      if (res.found()) {
        out["k"] = k;
        break;
      }
    }
  }
  out["status"] = res.found() ? "found" : "infeasible";
  out["route"] = res.stats.route;
  out["nodes"] = res.stats.nodes;
  out["propagations"] = res.stats.propagations;
  if (res.found()) {
    out["dimension"] = res.witness->dimension();
    out["map"] = map_to_json(family, *res.witness);
  }
  emit(cfg, out);
  return res.found() ? kOk : kInfeasible;
}

int cmd_verify(const RunConfig& cfg) {
  const Graph g = load_graph(cfg);
  const BallFamily family = load_balls(cfg, g);
  if (cfg.map_path.empty()) throw UsageError("--map is required");
  const TeachingMap map = map_from_json(map_part(load_json(cfg.map_path)), g, family);
  const auto cs = verify(family, map, cfg.workers);
  const bool within = !cfg.k || map.dimension() <= static_cast<std::size_t>(*cfg.k);
  emit(cfg, {{"dimension", map.dimension()},
             {"conflicts", conflicts_json(family, cs)},
             {"within_k", within}});
  if (!cs.empty()) std::cerr << cs.size() << " conflicting pair(s)\n";
  return cs.empty() && within ? kOk : kInfeasible;
}

int cmd_kernelize(const RunConfig& cfg) {
  const Graph g = load_graph(cfg);
  const BallFamily family = load_balls(cfg, g);
  const ViWitness w = min_vi_witness(g);
  const TwinStructure ts = twin_classes(g, w, family);
  const Bounds bd = bounds(ts, family);
  const Bounds::Int keep = cfg.retain.empty() ? bd.f : parse_big(cfg.retain);
  if (cfg.retain.empty()) warn_large_f(g, family, cfg);
  const Reduction red = reduce_instance(g, family, ts, keep);
  json classes = json::array();
  for (const auto& c : ts.classes) classes.push_back(c.members.size());
  json out{{"witness", {{"p", w.p}, {"X", w.separator}}},
           {"class_sizes", classes},
           {"bounds", {{"s", str(bd.s)}, {"b", str(bd.b)}, {"b_x", str(bd.b_x)}, {"c", str(bd.c)},
                       {"f", str(bd.f)}}},
           {"retain", str(keep)},
           {"kept_components", red.kept_components},
           {"dropped_components", red.dropped_components},
           {"reduced", {{"n", red.graph.vertex_count()},
                        {"m", red.graph.edge_count()},
                        {"balls", red.family.size()}}}};
  if (!cfg.out_prefix.empty()) {
    std::ostringstream gs, bs;
    write_graph(gs, red.graph);
    write_balls(bs, red.family);
    write_file(cfg.out_prefix + ".graph", gs.str());
    write_file(cfg.out_prefix + ".balls", bs.str());
    write_file(cfg.out_prefix + ".prov.json", provenance_to_json(red).dump(2) + "\n");
    out["files"] = {cfg.out_prefix + ".graph", cfg.out_prefix + ".balls",
                    cfg.out_prefix + ".prov.json"};
  }
  emit(cfg, out);
  return kOk;
}

int cmd_lift(const RunConfig& cfg) {
  const Graph g = load_graph(cfg);
  const BallFamily family = load_balls(cfg, g);
  if (cfg.map_path.empty() || cfg.provenance_path.empty())
    throw UsageError("--map and --provenance are required");
  const Provenance prov = provenance_from_json(load_json(cfg.provenance_path));
  const ViWitness w = witness_from_separator(g, prov.p, prov.separator);
  if (!is_valid_witness(g, w)) throw UsageError("provenance witness is not valid for this graph");
  const TwinStructure ts = twin_classes(g, w, family);
  VertexSet keep = prov.kept_vertices;
  if (!std::is_sorted(keep.begin(), keep.end()))
    throw UsageError("provenance kept_vertices must be ascending");
  const Reduction red = reduction_from_keep(g, family, ts, keep);
  if (red.ball_map != prov.ball_map)
    throw UsageError("provenance ball_map does not match the rebuilt reduction");
  const TeachingMap reduced = map_from_json(map_part(load_json(cfg.map_path)), red.graph, red.family);
  const TwinStructure rts = twin_classes(red.graph, red.reduced_witness(), red.family);
  TeachingMap lifted;
  try {
    lifted = lift(family, ts, red, compactify(red.family, reduced, rts));
  } catch (const LiftInfeasible& e) {
    std::cerr << "lift infeasible: " << e.what() << '\n';
    emit(cfg, {{"status", "infeasible"}});
    return kInfeasible;
  }
  emit(cfg, {{"status", "found"},
             {"dimension", lifted.dimension()},
             {"map", map_to_json(family, lifted)}});
  return kOk;
}

int cmd_oracle(const RunConfig& cfg) {
  const Graph g = load_graph(cfg);
  const BallFamily family = load_balls(cfg, g);
  const int cap = cfg.cap ? *cfg.cap : static_cast<int>(family.max_ball_size());
  const auto d = oracle_min_dimension(family, cap);
  json out{{"cap", cap}};
  out["dimension"] = d ? json(*d) : json(nullptr);
  emit(cfg, out);
  return d ? kOk : kInfeasible;
}

int cmd_stats(const RunConfig& cfg) {
  const Graph g = load_graph(cfg);
  const auto diam = diameter(g);
  json out{{"n", g.vertex_count()},
           {"m", g.edge_count()},
           {"connected", !diam.infinite},
           {"diameter", diam.infinite ? json(nullptr) : json(diam.max_component_diameter)},
           {"split", is_split(g).split}};
  std::optional<ViWitness> w;
  for (int p = 0; p <= cfg.vi_budget && !w; ++p) w = vi_witness(g, p);
  if (!w) {
    out["vertex_integrity"] = nullptr;
    std::cerr << "vertex integrity exceeds budget " << cfg.vi_budget << '\n';
  } else {
    out["vertex_integrity"] = {{"p", w->p}, {"X", w->separator}};
    const BallFamily family = load_balls(cfg, g);
    const TwinStructure ts = twin_classes(g, *w, family);
    std::map<std::size_t, int> hist;
    for (const auto& c : ts.classes) ++hist[c.members.size()];
    json h = json::object();
    for (auto [size, count] : hist) h[std::to_string(size)] = count;
    out["twin_class_sizes"] = h;
    out["balls"] = family.size();
  }
  emit(cfg, out);
  return kOk;
}

void write_instance(const RunConfig& cfg, const GeneratedInstance& inst, json& out) {
  out["n"] = inst.graph.vertex_count();
  out["m"] = inst.graph.edge_count();
  out["balls"] = inst.family.size();
  out["k"] = inst.k;
  if (cfg.out_prefix.empty()) return;
  std::ostringstream gs, bs;
  write_graph(gs, inst.graph);
  write_balls(bs, inst.family);
  write_file(cfg.out_prefix + ".graph", gs.str());
  write_file(cfg.out_prefix + ".balls", bs.str());
  write_file(cfg.out_prefix + ".roles.json", roles_to_json(inst).dump(2) + "\n");
  out["files"] = {cfg.out_prefix + ".graph", cfg.out_prefix + ".balls",
                  cfg.out_prefix + ".roles.json"};
}

// The map built from a satisfying assignment, as PREFIX.map.json.
void write_witness(const RunConfig& cfg, const GeneratedInstance& inst, const TeachingMap& map,
                   json& out) {
  if (cfg.out_prefix.empty()) return;
  write_file(cfg.out_prefix + ".map.json", map_to_json(inst.family, map).dump(2) + "\n");
  out["files"].push_back(cfg.out_prefix + ".map.json");
}

int cmd_gen_sat3(const RunConfig& cfg) {
  if (cfg.cnf_path.empty()) throw UsageError("--cnf is required");
  const CnfFormula phi = with_file(cfg.cnf_path, [](std::istream& in) { return read_dimacs(in); });
  const Sat3Instance inst = gen_sat3(phi);
  json out{{"kind", "sat3"}, {"variables", phi.num_vars}, {"clauses", phi.clauses.size()}};
  write_instance(cfg, inst.instance, out);
  const auto tau = sat3_brute(phi);
  out["satisfiable"] = tau.has_value();
  if (tau) write_witness(cfg, inst.instance, table1_map(inst, *tau), out);
  emit(cfg, out);
  return kOk;
}

int cmd_gen_nae(const RunConfig& cfg) {
  if (cfg.nae_path.empty()) throw UsageError("--formula is required");
  const NaeFormula psi = with_file(cfg.nae_path, [](std::istream& in) { return read_nae(in); });
  const NaeInstance inst = gen_nae(psi);
  json out{{"kind", "nae"}, {"d", psi.d}, {"variables", psi.num_vars},
           {"clauses", psi.clauses.size()}};
  write_instance(cfg, inst.instance, out);
  const auto sigma = nae_brute(psi);
  out["satisfiable"] = sigma.has_value();
  if (sigma) write_witness(cfg, inst.instance, nae_witness_map(inst, *sigma), out);
  emit(cfg, out);
  return kOk;
}

int cmd_gen_random(const RunConfig& cfg) {
  if (cfg.random_n < 0) throw UsageError("--n must be non-negative");
  if (cfg.random_p < 0 || cfg.random_p > 1) throw UsageError("--p must lie in [0,1]");
  const std::uint64_t seed = cfg.seed.value_or(1);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(cfg.random_p);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < cfg.random_n; ++u)
    for (int v = u + 1; v < cfg.random_n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  GeneratedInstance inst;
  inst.graph = Graph(cfg.random_n, edges);
  inst.family = all_balls_strict(inst.graph);
  json out{{"kind", "random"}, {"seed", seed}};
  write_instance(cfg, inst, out);
  out.erase("k");
  emit(cfg, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive non-clashing teaching maps for balls in graphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph_path, "graph file ('n m' then edges)")->required();
    sub->add_option("--balls", cfg.balls_path, "ball family file, or STRICT for all balls")
        ->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output, "write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
  };

  auto* solve_cmd = app.add_subcommand("solve", "decide or minimise the teaching dimension");
  add_instance(solve_cmd);
  add_output(solve_cmd);
  solve_cmd->add_option("--k", cfg.k, "dimension budget; omitted: find the minimum");
  solve_cmd->add_option("--method", cfg.method)->check(CLI::IsMember({"exact", "fpt"}))
      ->capture_default_str();
  solve_cmd->add_option("--retain", cfg.retain, "twins kept per class (fpt only)");
  solve_cmd->add_option("--workers", cfg.workers, "accepted; the search is sequential");

  auto* verify_cmd = app.add_subcommand("verify", "list the conflicts of a teaching map");
  add_instance(verify_cmd);
  add_output(verify_cmd);
  verify_cmd->add_option("--map", cfg.map_path, "teaching map JSON")->required();
  verify_cmd->add_option("--k", cfg.k, "also require dimension <= k");
  verify_cmd->add_option("--workers", cfg.workers, "threads for the pair scan");

  auto* kern_cmd = app.add_subcommand("kernelize", "reduce twin classes");
  add_instance(kern_cmd);
  add_output(kern_cmd);
  kern_cmd->add_option("--retain", cfg.retain, "twins kept per class (default: the f bound)");
  kern_cmd->add_option("--out", cfg.out_prefix, "write PREFIX.graph, PREFIX.balls, PREFIX.prov.json");
  kern_cmd->add_option("--workers", cfg.workers, "accepted; the kernel is sequential");

  auto* lift_cmd = app.add_subcommand("lift", "extend a reduced-instance map to the original");
  add_instance(lift_cmd);
  add_output(lift_cmd);
  lift_cmd->add_option("--map", cfg.map_path, "teaching map of the reduced instance")->required();
  lift_cmd->add_option("--provenance", cfg.provenance_path, "sidecar written by kernelize")
      ->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force minimum dimension (tiny inputs)");
  add_instance(oracle_cmd);
  add_output(oracle_cmd);
  oracle_cmd->add_option("--cap", cfg.cap, "largest k tried (default: largest ball)");

  auto* stats_cmd = app.add_subcommand("stats", "graph statistics");
  add_instance(stats_cmd);
  add_output(stats_cmd);
  stats_cmd->add_option("--vi-budget", cfg.vi_budget, "largest p tried for vertex integrity")
      ->capture_default_str();

  auto* gen_cmd = app.add_subcommand("gen", "generate instances");
  gen_cmd->require_subcommand(1);
  auto* gen_sat = gen_cmd->add_subcommand("sat3", "split-graph instance from a 3-CNF");
  gen_sat->add_option("--cnf", cfg.cnf_path, "DIMACS file")->required();
  gen_sat->add_option("--out", cfg.out_prefix, "write PREFIX.graph, PREFIX.balls, PREFIX.roles.json");
  add_output(gen_sat);
  auto* gen_nae_cmd = gen_cmd->add_subcommand("nae", "instance from a threshold NAE formula");
  gen_nae_cmd->add_option("--formula", cfg.nae_path, "NAE formula file")->required();
  gen_nae_cmd->add_option("--out", cfg.out_prefix, "output prefix");
  add_output(gen_nae_cmd);
  auto* gen_rand = gen_cmd->add_subcommand("random", "G(n,p) graph with the strict family");
  gen_rand->add_option("--seed", cfg.seed, "64-bit seed (default 1)");
  gen_rand->add_option("--n", cfg.random_n)->capture_default_str();
  gen_rand->add_option("--p", cfg.random_p)->capture_default_str();
  gen_rand->add_option("--out", cfg.out_prefix, "output prefix");
  add_output(gen_rand);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) cfg.command = "solve";
    if (*verify_cmd) cfg.command = "verify";
    if (*kern_cmd) cfg.command = "kernelize";
    if (*lift_cmd) cfg.command = "lift";
    if (*oracle_cmd) cfg.command = "oracle";
    if (*stats_cmd) cfg.command = "stats";
    if (*gen_sat) cfg.command = "gen sat3";
    if (*gen_nae_cmd) cfg.command = "gen nae";
    if (*gen_rand) cfg.command = "gen random";
    cfg.validate();
    if (cfg.command == "solve") return cmd_solve(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "kernelize") return cmd_kernelize(cfg);
    if (cfg.command == "lift") return cmd_lift(cfg);
    if (cfg.command == "oracle") return cmd_oracle(cfg);
    if (cfg.command == "stats") return cmd_stats(cfg);
    if (cfg.command == "gen sat3") return cmd_gen_sat3(cfg);
    if (cfg.command == "gen nae") return cmd_gen_nae(cfg);
    return cmd_gen_random(cfg);
  } catch (const Error& e) {
    // format, size guard, domain, conflict, induced-ball and usage errors
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
