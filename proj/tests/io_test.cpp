#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "nonclash/io.hpp"
#include "nonclash/lift.hpp"
#include "test_util.hpp"

using namespace nonclash;
using namespace testutil;

namespace {

Graph parse_graph(const std::string& s) {
  std::istringstream in(s);
  return read_graph(in);
}

int error_line(const std::string& s) {
  try {
    parse_graph(s);
  } catch (const FormatError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(GraphFormat, ReadWithComments) {
  Graph g = parse_graph("# a path\n3 2\n\n0 1\n# mid\n1 2\n");
  EXPECT_EQ(g, path(3));
}

TEST(GraphFormat, ErrorsWithLineNumbers) {
  EXPECT_EQ(error_line("2 1\n1 0\n"), 2);
  EXPECT_EQ(error_line("3 2\n0 1\n0 1\n"), 3);
  EXPECT_EQ(error_line("2 1\n0 x\n"), 2);
  EXPECT_EQ(error_line("2 1\n0 1 1\n"), 2);
  EXPECT_EQ(error_line("3\n"), 1);
  EXPECT_EQ(error_line("3 2\n0 1\n"), 0);  // count mismatch
  EXPECT_EQ(error_line(""), 0);
}

TEST(GraphFormatProperty, RoundTrip) {
  std::mt19937_64 rng(55);
  for (int it = 0; it < 40; ++it) {
    Graph g = random_graph(it % 10, 0.4, rng);
    std::ostringstream out;
    write_graph(out, g);
    EXPECT_EQ(parse_graph(out.str()), g);
  }
}

TEST(BallFormat, StrictAndLabels) {
  Graph g = path(4);
  std::istringstream strict("# all\nSTRICT\n");
  EXPECT_EQ(read_balls(strict, g).size(), 9u);
  std::istringstream labels("0 1\n3 1\n1 2\n");
  auto f = read_balls(labels, g);
  EXPECT_EQ(f.size(), 3u);
  std::ostringstream out;
  write_balls(out, f);
  std::istringstream back(out.str());
  auto f2 = read_balls(back, g);
  EXPECT_EQ(f2.balls(), f.balls());
  std::istringstream bad1("STRICT\n0 1\n"), bad2("4 0\n"), bad3("0 -1\n");
  EXPECT_THROW(read_balls(bad1, g), FormatError);
  EXPECT_THROW(read_balls(bad2, g), FormatError);
  EXPECT_THROW(read_balls(bad3, g), FormatError);
}

TEST(MapJson, RoundTripAndMatching) {
  Graph g = path(3);
  auto f = all_balls_strict(g);
  auto md = min_dimension(f);
  auto j = map_to_json(f, md.witness);
  EXPECT_EQ(j["dimension"], 2);
  EXPECT_EQ(map_from_json(j, g, f), md.witness);
  // a non-canonical label naming the same ball is accepted
  auto j2 = j;
  for (auto& e : j2["entries"])
    if (e["center"] == 0 && e["radius"] == 2) e["center"] = 1, e["radius"] = 1;
  EXPECT_EQ(map_from_json(j2, g, f), md.witness);
  auto dup = j;
  dup["entries"].push_back(dup["entries"][0]);
  EXPECT_THROW(map_from_json(dup, g, f), MapDomainError);
  auto missing = j;
  missing["entries"].erase(0);
  EXPECT_THROW(map_from_json(missing, g, f), MapDomainError);
  auto wrongdim = j;
  wrongdim["dimension"] = 5;
  EXPECT_THROW(map_from_json(wrongdim, g, f), FormatError);
  EXPECT_THROW(map_from_json(nlohmann::json::object(), g, f), FormatError);
}

TEST(Provenance, RoundTrip) {
  Graph g = twin_graph(1, {}, 2, {{0, 1}}, {{0, 0}}, 5);
  auto f = all_balls_strict(g);
  auto ts = twin_classes(g, min_vi_witness(g), f);
  auto red = reduce_instance(g, f, ts, 3);
  auto j = provenance_to_json(red);
  EXPECT_TRUE(j["kept_vertices"].is_object());
  auto p = provenance_from_json(j);
  EXPECT_EQ(p.kept_vertices, red.kept_vertices);
  EXPECT_EQ(p.ball_map, red.ball_map);
  EXPECT_EQ(p.p, red.witness.p);
  EXPECT_EQ(p.separator, red.witness.separator);
  auto bad = j;
  bad["kept_vertices"]["x"] = 1;
  EXPECT_THROW(provenance_from_json(bad), FormatError);
}

TEST(JsonParse, Invalid) {
  std::istringstream in("{not json");
  EXPECT_THROW(parse_json(in), FormatError);
}
