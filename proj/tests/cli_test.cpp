#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = NONCLASH_CLI;
const std::string kSamples = NONCLASH_SAMPLES;

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  auto dir = fs::temp_directory_path() / ("nonclash_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

Run run(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string sample(const std::string& name) { return kSamples + "/" + name; }

}  // namespace

TEST(Cli, K2AtOneIsInfeasible) {
  auto r = run("solve --graph " + sample("k2.graph") + " --balls STRICT --k 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["status"], "infeasible");
}

TEST(Cli, SolveThenVerify) {
  auto r = run("solve --graph " + sample("p4.graph"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["k"], 2);
  const auto map = scratch() / "p4map.json";
  std::ofstream(map) << r.out;
  auto v = run("verify --graph " + sample("p4.graph") + " --map " + map.string() + " --workers 2");
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(v.out)["conflicts"].empty());
  EXPECT_EQ(run("verify --graph " + sample("p4.graph") + " --map " + map.string() + " --k 1").code,
            1);
}

TEST(Cli, VerifyReportsConflicts) {
  const auto map = scratch() / "empty.json";
  std::ofstream(map) << R"({"entries":[{"center":0,"radius":0,"teach":[]},
    {"center":0,"radius":1,"teach":[]},{"center":1,"radius":0,"teach":[]}]})";
  auto v = run("verify --graph " + sample("k2.graph") + " --map " + map.string());
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(nlohmann::json::parse(v.out)["conflicts"].size(), 3u);
}

TEST(Cli, UsageAndFormatErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("solve").code, 2);
  EXPECT_EQ(run("solve --graph " + sample("k2.graph") + " --retain 3").code, 2);
  EXPECT_EQ(run("solve --graph " + sample("k2.graph") + " --method magic").code, 2);
  EXPECT_EQ(run("solve --graph /nonexistent").code, 2);
  EXPECT_EQ(run("solve --graph " + sample("sat.cnf")).code, 2);
  EXPECT_EQ(run("gen sat3 --cnf " + sample("k2.graph")).code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, GenSat3TracksSatisfiability) {
  const auto dir = scratch();
  for (auto [name, expect] : {std::pair{"sat.cnf", 0}, std::pair{"unsat.cnf", 1}}) {
    const auto prefix = (dir / name).string();
    ASSERT_EQ(run("gen sat3 --cnf " + sample(name) + " --out " + prefix).code, 0);
    EXPECT_EQ(run("solve --graph " + prefix + ".graph --balls " + prefix + ".balls --k 2").code,
              expect);
    std::ifstream roles(prefix + ".roles.json");
    EXPECT_EQ(nlohmann::json::parse(roles)["k"], 2);
    EXPECT_EQ(fs::exists(prefix + ".map.json"), expect == 0);
  }
}

// The map written for a satisfiable formula verifies at the target k.
TEST(Cli, GeneratedWitnessVerifies) {
  const auto dir = scratch();
  const auto sat = (dir / "w_sat").string();
  ASSERT_EQ(run("gen sat3 --cnf " + sample("sat.cnf") + " --out " + sat).code, 0);
  EXPECT_EQ(run("verify --graph " + sat + ".graph --balls " + sat + ".balls --map " + sat +
                ".map.json --k 2")
                .code,
            0);
  const auto nae = (dir / "w_nae").string();
  auto g = run("gen nae --formula " + sample("one_clause.nae") + " --out " + nae);
  ASSERT_EQ(g.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(g.out)["satisfiable"].get<bool>());
  EXPECT_EQ(run("verify --graph " + nae + ".graph --balls " + nae + ".balls --map " + nae +
                ".map.json --k 3")
                .code,
            0);
}

TEST(Cli, KernelizeSolveLift) {
  const auto dir = scratch();
  const auto prefix = (dir / "red").string();
  auto k = run("kernelize --graph " + sample("twins.graph") + " --retain 4 --out " + prefix);
  ASSERT_EQ(k.code, 0);
  auto kj = nlohmann::json::parse(k.out);
  EXPECT_EQ(kj["dropped_components"].size(), 2u);
  EXPECT_EQ(kj["bounds"]["s"], "7");
  auto s = run("solve --graph " + prefix + ".graph --balls " + prefix + ".balls");
  ASSERT_EQ(s.code, 0);
  const auto rmap = dir / "rmap.json";
  std::ofstream(rmap) << s.out;
  auto l = run("lift --graph " + sample("twins.graph") + " --map " + rmap.string() +
               " --provenance " + prefix + ".prov.json");
  ASSERT_EQ(l.code, 0);
  const auto lmap = dir / "lmap.json";
  std::ofstream(lmap) << l.out;
  EXPECT_EQ(run("verify --graph " + sample("twins.graph") + " --map " + lmap.string() + " --k 2")
                .code,
            0);
  auto f = run("solve --graph " + sample("twins.graph") + " --method fpt --retain 3 --k 2");
  EXPECT_EQ(f.code, 0);
}

TEST(Cli, StatsOracleAndRandom) {
  auto s = run("stats --graph " + sample("twins.graph"));
  ASSERT_EQ(s.code, 0);
  auto j = nlohmann::json::parse(s.out);
  EXPECT_EQ(j["vertex_integrity"]["p"], 3);
  EXPECT_EQ(j["twin_class_sizes"]["6"], 1);
  auto o = run("oracle --graph " + sample("c5.graph"));
  EXPECT_EQ(nlohmann::json::parse(o.out)["dimension"], 3);
  auto a = run("gen random --seed 9 --n 7");
  auto b = run("gen random --seed 9 --n 7");
  EXPECT_EQ(a.out, b.out);
  auto t = run("stats --graph " + sample("k2.graph") + " --format text");
  EXPECT_NE(t.out.find("n: 2"), std::string::npos);
}

TEST(Cli, DeterministicExitCodes) {
  for (int rep = 0; rep < 3; ++rep) {
    auto r = run("solve --graph " + sample("c5.graph"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["k"], 3);
  }
}
