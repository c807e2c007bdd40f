#include <sstream>

#include <gtest/gtest.h>

#include "nonclash/nae.hpp"
#include "nonclash/solver.hpp"

using namespace nonclash;

namespace {

NaeFormula parse(const std::string& text) {
  std::istringstream in(text);
  return read_nae(in);
}

NaeFormula single(int tx, int ty, int tz) {
  return NaeFormula{2, 3, {{NaeLiteral{0, tx}, NaeLiteral{1, ty}, NaeLiteral{2, tz}}}};
}

}  // namespace

TEST(NaeFormat, ReadAndRoundTrip) {
  auto f = parse("# header\n2\n0 1 1 2 2 2\n2 1 0 2 1 1\n");
  EXPECT_EQ(f.d, 2);
  EXPECT_EQ(f.num_vars, 3);
  ASSERT_EQ(f.clauses.size(), 2u);
  std::ostringstream out;
  write_nae(out, f);
  EXPECT_EQ(parse(out.str()), f);
}

TEST(NaeFormat, Errors) {
  try {
    parse("2\n0 1 1 2\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse("2\n0 1 1 3 2 1\n"), FormatError);
  EXPECT_THROW(parse("2\n0 1 0 2 2 1\n"), FormatError);  // repeated variable
  EXPECT_THROW(parse(""), FormatError);
  EXPECT_THROW(parse("0\n"), FormatError);
}

TEST(NaeBrute, Basics) {
  EXPECT_FALSE(nae_brute(single(2, 2, 2)));  // all three always hold
  auto s = nae_brute(single(1, 1, 1));
  ASSERT_TRUE(s);
  EXPECT_TRUE(single(1, 1, 1).satisfied_by(*s));
  NaeFormula big{2, 21, {}};
  EXPECT_THROW(nae_brute(big), SizeGuardError);
}

TEST(NaeGen, FamilyAndRadii) {
  auto psi = single(1, 2, 1);
  auto inst = gen_nae(psi);
  const auto& gi = inst.instance;
  EXPECT_EQ(gi.family.size(), 1u + 3u + 2u);
  EXPECT_EQ(gi.k, 3);
  EXPECT_EQ(gi.radii.at("d"), 2);
  // sorted thresholds 1,1,2: c_x = 1, c_z = 2
  EXPECT_EQ(gi.radii.at("r_c0"), 5 * 2 - 1 - 1);
  EXPECT_EQ(gi.radii.at("r'_c0"), 4 * 2 + 2 - 1);
  EXPECT_EQ(gi.family[inst.ball_all].members.size(),
            static_cast<std::size_t>(gi.graph.vertex_count()));
  auto rep = structural_checks_nae(inst);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures[0]);
  EXPECT_EQ(rep.fvs_witness_size, 9);
  EXPECT_TRUE(rep.acyclic_after_deletion);
  EXPECT_TRUE(rep.caterpillars_ok);
}

TEST(NaeGen, ClauseBallSkipsPathPrefix) {
  auto inst = gen_nae(single(1, 2, 2));
  const auto& members = inst.instance.family[inst.ball_c[0]].members;
  auto in = [&](int v) { return std::binary_search(members.begin(), members.end(), v); };
  // c_x = 1: first vertex of P^0 excluded, second included
  EXPECT_FALSE(in(inst.path_vertex(0, 1)));
  EXPECT_TRUE(in(inst.path_vertex(0, 2)));
  EXPECT_FALSE(in(inst.path_vertex(1, 2)));
  EXPECT_FALSE(in(inst.path_vertex(2, 2)));
}

TEST(NaeGen, WitnessRoundTripAndSolver) {
  auto psi = single(1, 2, 1);
  auto inst = gen_nae(psi);
  int checked = 0;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int c = 1; c <= 2; ++c) {
        std::vector<int> sigma{a, b, c};
        if (!psi.satisfied_by(sigma)) {
          EXPECT_THROW(nae_witness_map(inst, sigma), std::invalid_argument);
          continue;
        }
        auto t = nae_witness_map(inst, sigma);
        EXPECT_TRUE(verify(inst.instance.family, t).empty());
        EXPECT_EQ(t.dimension(), 3u);
        EXPECT_EQ(extract_assignment_nae(inst, t), sigma);
        ++checked;
      }
  EXPECT_GT(checked, 0);
  auto r = solve(inst.instance.family, 3);
  ASSERT_TRUE(r.found());
  EXPECT_TRUE(psi.satisfied_by(extract_assignment_nae(inst, *r.witness)));
}

TEST(NaeGen, UnsatisfiableIsInfeasible) {
  auto inst = gen_nae(single(2, 2, 2));
  EXPECT_FALSE(solve(inst.instance.family, 3).found());
}
