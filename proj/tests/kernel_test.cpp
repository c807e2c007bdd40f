#include <map>
#include <random>

#include <gtest/gtest.h>

#include "nonclash/lift.hpp"
#include "test_util.hpp"

using namespace nonclash;
using namespace testutil;

namespace {

// Vertex 0 with `copies` pendant paths of length two.
Graph pendant_paths(int copies) { return twin_graph(1, {}, 2, {{0, 1}}, {{0, 0}}, copies); }

// Two adjacent separator vertices, each copy a path a-b-c with a~0 and c~1.
Graph bridged_paths(int copies) {
  return twin_graph(2, {{0, 1}}, 3, {{0, 1}, {1, 2}}, {{0, 0}, {2, 1}}, copies);
}

struct Setup {
  Graph g;
  BallFamily f;
  TwinStructure ts;
};

Setup setup(Graph g, BallFamily f) {
  auto w = min_vi_witness(g);
  auto ts = twin_classes(g, w, f);
  return {std::move(g), std::move(f), std::move(ts)};
}

std::size_t max_orbit_share(const TwinStructure& ts, const VertexSet& t) {
  std::map<std::pair<int, int>, std::size_t> count;
  std::size_t best = 0;
  for (int v : t)
    if (ts.component_of[v] >= 0) best = std::max(best, ++count[ts.orbit_id(v)]);
  return best;
}

}  // namespace

TEST(Twins, PendantPathsFormOneClass) {
  Graph g = pendant_paths(6);
  auto s = setup(g, all_balls_strict(g));
  ASSERT_EQ(s.ts.classes.size(), 1u);
  EXPECT_EQ(s.ts.classes[0].members, (std::vector<int>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(s.ts.witness.separator, (VertexSet{0}));
  EXPECT_EQ(s.ts.counterpart(1, 2), 5);
  EXPECT_EQ(s.ts.counterpart(2, 2), 6);
  EXPECT_EQ(s.ts.orbit(2), (VertexSet{2, 4, 6, 8, 10, 12}));
  EXPECT_EQ(s.ts.orbit_id(0), std::make_pair(-1, 0));
  const auto& cls = s.ts.classes[0];
  for (std::size_t slot = 0; slot < cls.alpha.size(); ++slot)
    EXPECT_TRUE(is_twin_isomorphism(s.g, s.f, s.ts.witness, cls.alpha[0], cls.alpha[slot]));
  EXPECT_FALSE(is_twin_isomorphism(s.g, s.f, s.ts.witness, {1, 2}, {4, 3}));
}

TEST(Twins, BallPresenceSplitsClasses) {
  Graph g = pendant_paths(4);
  // B_0 only at the leaf of the first copy
  auto f = BallFamily::from_labels(g, {{0, 1}, {2, 0}});
  auto s = setup(g, f);
  ASSERT_EQ(s.ts.classes.size(), 2u);
  EXPECT_EQ(s.ts.classes[0].members, (std::vector<int>{0}));
  EXPECT_EQ(s.ts.classes[1].members, (std::vector<int>{1, 2, 3}));
}

TEST(Twins, ShapesSplitClasses) {
  // copy 0 is an edge, copy 1 a single vertex
  Graph g(4, {{0, 1}, {1, 2}, {0, 3}});
  auto f = all_balls_strict(g);
  auto ts = twin_classes(g, witness_from_separator(g, 3, {0}), f);
  EXPECT_EQ(ts.classes.size(), 2u);
}

// Frozen from a direct evaluation of the bound formulas.
TEST(Bounds, PendantPathsStrict) {
  Graph g = pendant_paths(6);
  auto s = setup(g, all_balls_strict(g));
  auto bd = bounds(s.ts, s.f);
  EXPECT_EQ(s.ts.witness.p, 3);
  EXPECT_EQ(bd.s, 7);
  EXPECT_EQ(bd.b, 6);
  EXPECT_EQ(bd.b_x, 3);
  EXPECT_EQ(bd.c, 3728508);
  EXPECT_EQ(bd.f.str().size(), 274u);
  EXPECT_EQ(detail::binomial(5, 2), 10);
  EXPECT_EQ(detail::binomial(2, 5), 0);
}

TEST(Prune, FullMapKeepsTwoPerOrbit) {
  Graph g = pendant_paths(6);
  auto s = setup(g, all_balls_strict(g));
  auto full = TeachingMap::full(s.f);
  auto pruned = prune_redundant(s.f, full, s.ts);
  EXPECT_TRUE(verify(s.f, pruned).empty());
  EXPECT_LE(pruned.dimension(), full.dimension());
  for (const auto& t : pruned.sets) EXPECT_LE(max_orbit_share(s.ts, t), 2u);
  const auto all = *s.f.find_label(0, 2);
  EXPECT_EQ(pruned[all].size(), 5u);  // 0 plus two per orbit
}

TEST(Prune, RejectsConflicts) {
  Graph g = pendant_paths(3);
  auto s = setup(g, all_balls_strict(g));
  EXPECT_THROW(prune_redundant(s.f, TeachingMap(s.f.size()), s.ts), ConflictError);
}

TEST(PruneProperty, RandomSupersetsOfSolutions) {
  std::mt19937_64 rng(404);
  for (int it = 0; it < 30; ++it) {
    const int copies = 3 + it % 4;
    Graph g = it % 2 ? pendant_paths(copies) : bridged_paths(copies);
    auto s = setup(g, all_balls_strict(g));
    auto t = min_dimension(s.f).witness;
    for (std::size_t b = 0; b < t.size(); ++b) {
      for (int v : s.f[b].members)
        if (rng() % 2) t[b].push_back(v);
      std::sort(t[b].begin(), t[b].end());
      t[b].erase(std::unique(t[b].begin(), t[b].end()), t[b].end());
    }
    ASSERT_TRUE(verify(s.f, t).empty());
    auto p = prune_redundant(s.f, t, s.ts);
    EXPECT_TRUE(verify(s.f, p).empty());
    EXPECT_LE(p.dimension(), t.dimension());
    for (const auto& set : p.sets) EXPECT_LE(max_orbit_share(s.ts, set), 2u);
  }
}

TEST(InducedBalls, GenuineAndBijective) {
  Graph g = bridged_paths(5);
  auto s = setup(g, all_balls_strict(g));
  auto red = reduce_instance(g, s.f, s.ts, 3);
  EXPECT_EQ(red.kept_components, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(red.dropped_components, (std::vector<int>{3, 4}));
  EXPECT_EQ(red.graph.vertex_count(), 11);
  std::vector<char> hit(s.f.size(), 0);
  for (std::size_t i = 0; i < red.family.size(); ++i) {
    const auto& b = red.family[i];
    EXPECT_EQ(ball(red.graph, b.center, b.radius).members, b.members);
    const int orig = red.ball_map[i];
    EXPECT_FALSE(hit[orig]++);
  }
  // every original ball with a kept center has a preimage
  for (std::size_t b = 0; b < s.f.size(); ++b) {
    bool kept_center = false;
    for (auto [u, r] : s.ts.centers.generators[b])
      kept_center = kept_center || std::binary_search(red.kept_vertices.begin(),
                                                      red.kept_vertices.end(), u);
    EXPECT_EQ(kept_center, static_cast<bool>(hit[b]));
  }
  EXPECT_TRUE(is_valid_witness(red.graph, red.reduced_witness()));
}

TEST(InducedBalls, HypothesisViolations) {
  Graph g = pendant_paths(4);
  auto s = setup(g, all_balls_strict(g));
  // drops X
  EXPECT_THROW(induced_balls(g, s.f, s.ts, {1, 2, 3, 4}), InducedBallsError);
  // keeps half of component 0
  try {
    induced_balls(g, s.f, s.ts, {0, 1, 3, 4, 5, 6});
    FAIL();
  } catch (const InducedBallsError& e) {
    EXPECT_EQ(e.component(), 0);
  }
  // only one kept twin
  EXPECT_THROW(induced_balls(g, s.f, s.ts, {0, 1, 2}), InducedBallsError);
  EXPECT_THROW(reduce_instance(g, s.f, s.ts, 2), std::invalid_argument);
  EXPECT_NO_THROW(induced_balls(g, s.f, s.ts, {0, 1, 2, 3, 4}));
}

TEST(Reduce, IdentityWhenRetainCoversClasses) {
  Graph g = pendant_paths(4);
  auto s = setup(g, all_balls_strict(g));
  auto red = reduce_instance(g, s.f, s.ts, bounds(s.ts, s.f).f);
  EXPECT_TRUE(red.identity());
  EXPECT_EQ(red.graph, g);
  EXPECT_EQ(red.family.size(), s.f.size());
}

TEST(Cores, CompactifyYieldsCompactMap) {
  for (int copies = 3; copies <= 6; ++copies) {
    Graph g = bridged_paths(copies);
    auto s = setup(g, all_balls_strict(g));
    auto t = TeachingMap::full(s.f);
    auto c = compactify(s.f, t, s.ts);
    EXPECT_TRUE(verify(s.f, c).empty());
    EXPECT_LE(c.dimension(), t.dimension());
    auto bd = bounds(s.ts, s.f);
    auto cr = cores(s.f, c, s.ts, static_cast<std::size_t>(bd.s));
    EXPECT_TRUE(is_compact(s.f, c, s.ts, cr));
    for (std::size_t h = 0; h < s.ts.component_count(); ++h) {
      EXPECT_LE(cr.in_K[h], cr.in_K1[h]);
      EXPECT_LE(cr.in_K1[h], cr.in_K2[h]);
    }
  }
}

TEST(Cores, BlueprintSaturates) {
  Graph g = pendant_paths(5);
  auto s = setup(g, all_balls_strict(g));
  auto full = TeachingMap::full(s.f);
  const int b = *s.f.find(ball(g, 1, 2).members);
  auto bp = blueprint(s.f, full, b, s.ts);
  EXPECT_EQ(bp.home, 0);
  EXPECT_EQ(bp.S_X, (VertexSet{0}));
  EXPECT_EQ(bp.S_H_positions, (std::vector<int>{0, 1}));
  EXPECT_EQ(bp.f[0], (std::vector<int>{2, 0}));  // four other roots, saturated at 2
  const int xb = *s.f.find_label(0, 0);
  EXPECT_THROW(blueprint(s.f, full, xb, s.ts), std::invalid_argument);
  auto perfect = perfect_classes(full, s.ts);
  EXPECT_EQ(perfect.size(), 5u);
}

TEST(Fpt, LiftedWitnessMatchesExact) {
  for (int copies = 5; copies <= 7; ++copies) {
    for (int shape = 0; shape < 2; ++shape) {
      Graph g = shape ? bridged_paths(copies) : pendant_paths(copies);
      auto f = all_balls_strict(g);
      const int d = min_dimension(f).dimension;
      for (int retain = 3; retain <= copies; ++retain) {
        auto r = fpt_solve(g, f, d, Bounds::Int(retain));
        ASSERT_TRUE(r.found()) << copies << " " << retain;
        EXPECT_TRUE(verify(f, *r.witness).empty());
        EXPECT_LE(r.witness->dimension(), static_cast<std::size_t>(d));
        EXPECT_FALSE(fpt_solve(g, f, d - 1, Bounds::Int(retain)).found());
      }
    }
  }
}

TEST(Fpt, DefaultRetainIsIdentity) {
  Graph g = pendant_paths(4);
  auto f = all_balls_strict(g);
  auto r = fpt_solve(g, f, 2);
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.stats.route, "fpt");
  EXPECT_THROW(fpt_solve(g, f, -1), std::invalid_argument);
}

TEST(Lift, DirectPipeline) {
  Graph g = pendant_paths(6);
  auto f = all_balls_strict(g);
  auto s = setup(g, f);
  auto red = reduce_instance(g, f, s.ts, 4);
  auto sol = min_dimension(red.family);
  auto rts = twin_classes(red.graph, red.reduced_witness(), red.family);
  auto compact = compactify(red.family, sol.witness, rts);
  auto lifted = lift(f, s.ts, red, compact);
  EXPECT_TRUE(verify(f, lifted).empty());
  EXPECT_LE(lifted.dimension(), static_cast<std::size_t>(sol.dimension));
  EXPECT_THROW(lift(f, s.ts, red, TeachingMap(1)), MapDomainError);
}
