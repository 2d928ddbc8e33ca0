#include <gtest/gtest.h>

#include <teamlogic/oracle.hpp>

using namespace teamlogic;

namespace {

  // Closure kinds straight from the definitions, on the bitmask of a collection of teams.
  bool in(std::uint64_t c, std::uint64_t t) { return (c >> t) & 1u; }

  bool down(std::uint64_t c, std::uint64_t teams) {
    for (std::uint64_t t = 0; t < teams; t++)
      for (std::uint64_t s = 0; s < teams; s++)
        if (in(c, t) && (s & ~t) == 0 && !in(c, s)) return false;
    return true;
  }

  bool up(std::uint64_t c, std::uint64_t teams) {
    for (std::uint64_t t = 0; t < teams; t++)
      for (std::uint64_t s = 0; s < teams; s++)
        if (in(c, t) && (t & ~s) == 0 && !in(c, s)) return false;
    return true;
  }

  std::size_t count_by_definition(std::size_t n, ClosureKind k) {
    std::uint64_t teams = std::uint64_t{1} << (std::size_t{1} << n), full = teams - 1;
    std::size_t count = 0;
    for (std::uint64_t c = 1; c < (std::uint64_t{1} << teams); c++) {
      bool ok = false;
      switch (k) {
        case ClosureKind::Downward: ok = down(c, teams); break;
        case ClosureKind::Upward: ok = up(c, teams); break;
        case ClosureKind::QuasiDownward: ok = in(c, full) && down(c & ~(std::uint64_t{1} << full), teams); break;
        case ClosureKind::QuasiUpward: ok = in(c, 0) && up(c & ~std::uint64_t{1}, teams); break;
        default: break;
      }
      count += ok;
    }
    return count;
  }

  auto ctx_n(std::size_t n) {
    std::vector<std::string> s;
    for (std::size_t i = 0; i < n; i++) s.push_back("p" + std::to_string(i + 1));
    return PropContext(s);
  }

}

TEST(EnumerateTeams, SizesAndOrder) {
  auto t0 = enumerate_teams(PropContext());
  ASSERT_EQ(t0.size(), 2u);
  EXPECT_TRUE(t0.front().is_empty());
  EXPECT_TRUE(t0.back().is_full());
  EXPECT_EQ(t0.back().size(), 1u);
  EXPECT_EQ(enumerate_teams(ctx_n(1)).size(), 4u);
  auto t2 = enumerate_teams(ctx_n(2));
  ASSERT_EQ(t2.size(), 16u);
  for (std::size_t i = 0; i < t2.size(); i++) EXPECT_EQ(t2[i].bits(), i);
  EXPECT_THROW(enumerate_teams(ctx_n(5)), BoundError);
}

TEST(EnumerateClosedProperties, EmptyContextDownward) {
  auto ps = enumerate_closed_properties(PropContext(), ClosureKind::Downward);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0], TeamProperty::of(0, {Team::empty(0)}));
  EXPECT_EQ(ps[1], TeamProperty::of(0, {Team::empty(0), Team::full(0)}));
}

TEST(EnumerateClosedProperties, CountsMatchDefinitions) {
  for (std::size_t n = 0; n <= 2; n++)
    for (auto k: {ClosureKind::Downward, ClosureKind::QuasiDownward, ClosureKind::Upward, ClosureKind::QuasiUpward})
      EXPECT_EQ(enumerate_closed_properties(ctx_n(n), k).size(), count_by_definition(n, k)) << n << " " << closure_kind_name(k);
}

TEST(EnumerateClosedProperties, QuasiKindsContainTheirTeam) {
  auto ctx = ctx_n(2);
  for (auto const& c: enumerate_closed_properties(ctx, ClosureKind::QuasiUpward)) EXPECT_TRUE(c.contains(Team::empty(2)));
  for (auto const& c: enumerate_closed_properties(ctx, ClosureKind::QuasiDownward)) EXPECT_TRUE(c.contains(Team::full(2)));
  EXPECT_THROW(enumerate_closed_properties(ctx_n(3), ClosureKind::Downward), BoundError);
}

TEST(RandomFormula, DepthZeroIsALeaf) {
  GenConfig cfg;
  cfg.ctx = ctx_n(2);
  cfg.max_depth = 0;
  FormulaGenerator gen(cfg);
  for (int i = 0; i < 200; i++) {
    auto f = gen.next(LogicId::Lqu);
    EXPECT_TRUE(f.is(Connective::Incl) || f.is(Connective::Bot)) << to_string(f);
  }
}

TEST(RandomFormula, MembershipAndDeterminism) {
  for (auto l: all_logics) {
    GenConfig cfg;
    cfg.seed = 42;
    cfg.ctx = ctx_n(2);
    cfg.max_depth = 4;
    FormulaGenerator a(cfg), b(cfg);
    for (int i = 0; i < 1000; i++) {
      auto f = a.next(l);
      EXPECT_TRUE(logic_membership(f, l)) << to_string(f);
      EXPECT_EQ(f, b.next(l));
    }
  }
}

TEST(RandomFormula, FragmentFlags) {
  GenConfig cfg;
  cfg.ctx = ctx_n(2);
  cfg.bullet_free = true;
  cfg.gor_free = true;
  FormulaGenerator gen(cfg);
  for (int i = 0; i < 300; i++) {
    auto f = gen.next(LogicId::Lqd);
    EXPECT_TRUE(is_bullet_free(f) && is_gor_free(f)) << to_string(f);
  }
}

TEST(RandomClosedProperty, ClosedUnderItsKind) {
  for (std::uint64_t seed = 0; seed < 50; seed++)
    for (auto k: {ClosureKind::Downward, ClosureKind::QuasiDownward, ClosureKind::Upward, ClosureKind::QuasiUpward}) {
      GenConfig cfg;
      cfg.seed = seed;
      cfg.ctx = ctx_n(2);
      auto c = random_closed_property(cfg, k);
      EXPECT_TRUE(check_closure(c, k));
      EXPECT_EQ(close(c, k), c);
    }
}

TEST(ReferenceEval, Examples) {
  auto ctx = ctx_n(1);
  EXPECT_TRUE(reference_eval(Team::empty(1), Formula::bot(), ctx));
  EXPECT_FALSE(reference_eval(Team::full(1), Formula::bot(), ctx));
  EXPECT_TRUE(reference_eval(Team::full(1), Formula::full(), ctx));
  EXPECT_THROW(reference_eval(Team::full(4), Formula::bot(), ctx_n(4)), BoundError);
}

TEST(ReferenceEval, AgreesWithEvalOnMixedCorpus) {
  GenConfig cfg;
  cfg.seed = 9;
  cfg.ctx = ctx_n(2);
  cfg.max_depth = 3;
  FormulaGenerator gen(cfg);
  auto teams = enumerate_teams(cfg.ctx);
  for (int i = 0; i < 1000; i++) {
    auto f = gen.next_mixed();
    for (auto t: teams) ASSERT_EQ(eval(t, f, cfg.ctx), reference_eval(t, f, cfg.ctx)) << to_string(f) << " on " << format_team(t, cfg.ctx);
  }
}

TEST(ReferenceEval, StrictAndSplitDisjunctionSeparated) {
  // Find a pair where the two disjunctions differ; both evaluators must agree on it.
  auto ctx = ctx_n(2);
  GenConfig cfg;
  cfg.seed = 3;
  cfg.ctx = ctx;
  cfg.max_depth = 1;
  FormulaGenerator gen(cfg);
  bool found = false;
  for (int i = 0; i < 2000 && !found; i++) {
    auto a = gen.next_mixed(), b = gen.next_mixed();
    auto split = Formula::split_or(a, b), strict = Formula::strict_or(a, b);
    for (auto t: enumerate_teams(ctx)) {
      bool x = reference_eval(t, split, ctx), y = reference_eval(t, strict, ctx);
      if (x == y) continue;
      EXPECT_EQ(x, eval(t, split, ctx));
      EXPECT_EQ(y, eval(t, strict, ctx));
      found = true;
    }
  }
  EXPECT_TRUE(found);
}
