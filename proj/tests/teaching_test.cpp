#include <random>

#include <gtest/gtest.h>

#include "nonclash/oracle.hpp"
#include "nonclash/solver.hpp"
#include "nonclash/teaching.hpp"
#include "test_util.hpp"

using namespace nonclash;
using namespace testutil;

TEST(Verify, EmptyMapOnK2ListsEveryPair) {
  Graph g = path(2);
  auto f = all_balls_strict(g);  // (0,0) (0,1) (1,0)
  auto cs = verify(f, TeachingMap(f.size()));
  EXPECT_EQ(cs, (std::vector<Conflict>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Verify, FullMapIsNonClashing) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    Graph g = random_graph(1 + it % 7, 0.4, rng);
    auto f = all_balls_strict(g);
    EXPECT_TRUE(verify(f, TeachingMap::full(f)).empty());
  }
}

TEST(Verify, K2ConflictPair) {
  Graph g = path(2);
  auto f = all_balls_strict(g);
  TeachingMap t(f.size());
  t[0] = {0};
  t[1] = {0};
  t[2] = {1};
  // {0} and {0,1} both taught by vertex 0
  EXPECT_EQ(verify(f, t), (std::vector<Conflict>{{0, 1}}));
  t[1] = {0, 1};
  EXPECT_TRUE(verify(f, t).empty());
}

TEST(Verify, DomainErrors) {
  Graph g = path(2);
  auto f = all_balls_strict(g);
  EXPECT_THROW(verify(f, TeachingMap(2)), MapDomainError);
  TeachingMap t(3);
  t[0] = {1};  // not inside {0}
  EXPECT_THROW(verify(f, t), MapDomainError);
  t[0] = {};
  t[1] = {1, 0};  // unsorted
  EXPECT_THROW(verify(f, t), MapDomainError);
}

TEST(Verify, Distinguishes) {
  Graph g = path(3);
  Ball a = ball(g, 0, 1), b = ball(g, 2, 1);
  EXPECT_TRUE(distinguishes(0, a, b));
  EXPECT_FALSE(distinguishes(1, a, b));
}

// Worker count never changes the conflict list.
TEST(VerifyProperty, WorkersAgree) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 40; ++it) {
    Graph g = random_graph(3 + it % 6, 0.5, rng);
    auto f = all_balls_strict(g);
    TeachingMap t(f.size());
    for (std::size_t b = 0; b < f.size(); ++b)
      for (int v : f[b].members)
        if (rng() % 3 == 0) t[b].push_back(v);
    auto one = verify(f, t, 1);
    EXPECT_EQ(one, verify(f, t, 3));
    EXPECT_EQ(one, verify(f, t, 8));
    EXPECT_EQ(one.empty(), is_non_clashing(f, t));
  }
}

TEST(Embedding, ConceptClassAsBalls) {
  auto e = embed_concept_class({"a", "b", "c"}, {{"a"}, {"a", "b"}, {}});
  EXPECT_EQ(e.graph.vertex_count(), 6);
  EXPECT_EQ(e.family.size(), 3u);
  // B_1(x_C) is C plus every concept vertex
  EXPECT_EQ(e.family[e.concept_ball[1]].members, (VertexSet{0, 1, 3, 4, 5}));
  EXPECT_EQ(e.vertex_names[4], "x_1");
  EXPECT_THROW(embed_concept_class({"a"}, {{"a"}, {"a"}}), std::invalid_argument);
  EXPECT_THROW(embed_concept_class({"a"}, {{"z"}}), std::invalid_argument);
  EXPECT_THROW(embed_concept_class({"a"}, {}), std::invalid_argument);
}

// Concept vertices lie in every ball, so the dimension is that of the
// concept class; the oracle and the solver agree on it.
TEST(Embedding, DimensionMatchesOracle) {
  auto e = embed_concept_class({"a", "b"}, {{"a"}, {"b"}, {"a", "b"}});
  auto md = min_dimension(e.family);
  EXPECT_EQ(md.dimension, 2);
  EXPECT_EQ(oracle_min_dimension(e.family, 3), 2);
  auto single = embed_concept_class({"a", "b"}, {{"a"}, {"b"}});
  EXPECT_EQ(min_dimension(single.family).dimension, 1);
}
