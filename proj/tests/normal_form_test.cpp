#include <gtest/gtest.h>

#include <random>

#include <teamlogic/normal_form.hpp>
#include <teamlogic/oracle.hpp>

using namespace teamlogic;

namespace {

  auto ctx_p() { return PropContext::parse("p"); }
  auto ctx_pq() { return PropContext::parse("p q"); }

  auto reference_denotation(Formula const& f, PropContext const& ctx) {
    TeamProperty p(ctx.size());
    for (auto t: enumerate_teams(ctx)) if (reference_eval(t, f, ctx)) p.insert(t);
    return p;
  }

  auto disjunction(std::vector<Team> const& ts, LogicId l, PropContext const& ctx) {
    std::vector<Formula> xs;
    for (auto t: ts) xs.push_back(characteristic(t, l, ctx));
    return Formula::fold(Connective::GlobalOr, xs, Formula::bot());
  }

}

TEST(Signature, Examples) {
  auto ctx = ctx_pq();
  EXPECT_EQ(signature(parse_valuation("10", ctx), ctx), (TermSeq{Term::top(), Term::bot()}));
  EXPECT_TRUE(signature(0, PropContext()).empty());
  // {v'} |= x^v <= p exactly for v' = v.
  for (Valuation v = 0; v < 4; v++) {
    auto f = Formula::incl(signature(v, ctx), context_sequence(ctx));
    for (Valuation w = 0; w < 4; w++) EXPECT_EQ(reference_eval(Team::singleton(w, 2), f, ctx), v == w);
  }
}

TEST(Characteristic, Examples) {
  auto ctx = ctx_p();
  EXPECT_EQ(psi_prime(Team::empty(1), ctx), Formula::incl({}, {}));
  EXPECT_EQ(to_string(psi_prime(parse_team("1", ctx), ctx)), "1 <= p");
  EXPECT_EQ(psi_star(Team::empty(1), ctx), Formula::top());
  EXPECT_EQ(to_string(psi_star(Team::full(1), ctx)), "0 <=! p & 1 <=! p");
  EXPECT_EQ(to_string(theta_prime(parse_team("1", ctx), ctx)), "p <=* 1");
  EXPECT_EQ(to_string(theta_prime(Team::empty(1), ctx)), "p p <=* 1 0");
  EXPECT_EQ(to_string(theta_prime(Team::empty(2), ctx_pq())), "p p q <=* 1 0 0");
  EXPECT_THROW(theta_prime(Team::empty(0), PropContext()), PreconditionError);
  EXPECT_EQ(theta_star(Team::empty(1), ctx), Formula::bot());
  EXPECT_EQ(to_string(theta_star(Team::full(1), ctx)), "p <= 0 | p <= 1");
}

TEST(Characteristic, ThetaPrimeEmptyDenotesEmptyAndFull) {
  auto ctx = ctx_p();
  EXPECT_EQ(reference_denotation(theta_prime(Team::empty(1), ctx), ctx), TeamProperty::of(1, {Team::empty(1), Team::full(1)}));
}

TEST(Characteristic, LemmasExhaustiveTwoProps) {
  auto ctx = ctx_pq();
  auto teams = enumerate_teams(ctx);
  for (auto t: teams) {
    auto pp = psi_prime(t, ctx), ps = psi_star(t, ctx), tp = theta_prime(t, ctx), ts = theta_star(t, ctx);
    for (auto s: teams) {
      EXPECT_EQ(reference_eval(s, pp, ctx), s.is_empty() || t.subset_of(s));
      EXPECT_EQ(reference_eval(s, ps, ctx), t.subset_of(s));
      EXPECT_EQ(reference_eval(s, tp, ctx), s.subset_of(t) || s.is_full());
      EXPECT_EQ(reference_eval(s, ts, ctx), s.subset_of(t));
    }
  }
}

TEST(Characteristic, MembershipOfEachLogic) {
  auto ctx = ctx_pq();
  for (auto t: enumerate_teams(ctx))
    for (auto l: all_logics) EXPECT_TRUE(logic_membership(characteristic(t, l, ctx), l));
}

TEST(Characteristic, EntailmentCriterionRandomPairs) {
  auto ctx = ctx_pq();
  std::mt19937_64 rng(17);
  auto random_teams = [&](bool allow_empty, bool allow_full) {
    std::vector<Team> ts;
    while (ts.empty()) {
      for (std::uint64_t b = 0; b < 16; b++) {
        Team t(b, 2);
        if ((!allow_empty && t.is_empty()) || (!allow_full && t.is_full())) continue;
        if (rng() % 4 == 0) ts.push_back(t);
      }
    }
    return ts;
  };
  for (int i = 0; i < 300; i++) {
    for (auto l: all_logics) {
      bool up = is_upward_logic(l);
      auto d = random_teams(l != LogicId::Lqu, l != LogicId::Lqd);
      auto c = random_teams(l != LogicId::Lqu, l != LogicId::Lqd);
      bool dominated = true;
      for (auto s: d) {
        bool found = false;
        for (auto t: c) found |= up ? t.subset_of(s) : s.subset_of(t);
        dominated &= found;
      }
      auto lhs = disjunction(d, l, ctx), rhs = disjunction(c, l, ctx);
      EXPECT_EQ(entails({lhs}, rhs, ctx), dominated) << logic_name(l);
    }
  }
}

TEST(Synthesize, SpecExamples) {
  auto ctx = ctx_pq();
  auto nf = synthesize(TeamProperty::of(2, {Team::empty(2)}), LogicId::Lqu, ctx);
  EXPECT_EQ(nf.formula, Formula::bot());
  EXPECT_EQ(nf.special, NormalForm::Special::Bot);
  auto nf2 = synthesize(TeamProperty::of(2, {Team::full(2)}), LogicId::Lqd, ctx);
  EXPECT_EQ(nf2.formula, Formula::full());
  EXPECT_EQ(nf2.special, NormalForm::Special::Full);
}

TEST(Synthesize, RejectsUnclosedAndEmpty) {
  auto ctx = ctx_p();
  auto c = TeamProperty::of(1, {parse_team("1", ctx)});
  try {
    (void)synthesize(c, LogicId::Lu, ctx);
    FAIL();
  } catch (PreconditionError const& e) {
    EXPECT_NE(std::string(e.what()).find("upward closed"), std::string::npos);
  }
  EXPECT_THROW(synthesize(TeamProperty(1), LogicId::Ld, ctx), PreconditionError);
  EXPECT_THROW(synthesize(TeamProperty::all(2), LogicId::Ld, ctx), ContextError);
}

TEST(Synthesize, RoundTripExhaustiveOneProp) {
  auto ctx = ctx_p();
  for (auto l: all_logics) {
    for (auto const& c: enumerate_closed_properties(ctx, kind_of(l))) {
      auto nf = synthesize(c, l, ctx);
      EXPECT_TRUE(logic_membership(nf.formula, l));
      EXPECT_EQ(reference_denotation(nf.formula, ctx), c);
      auto rec = is_normal_form(nf.formula, l, ctx);
      ASSERT_TRUE(rec.has_value());
      EXPECT_EQ(*rec, c);
      EXPECT_EQ(nf.index(1), c);
    }
  }
}

TEST(SynthesizeClosure, Examples) {
  auto ctx = ctx_pq();
  auto e = TeamProperty::of(2, {Team::empty(2)});
  EXPECT_EQ(synthesize_closure(e, LogicId::Lqu, ctx).formula, Formula::bot());
  auto f = TeamProperty::of(2, {Team::full(2)});
  EXPECT_EQ(synthesize_closure(f, LogicId::Lqd, ctx).formula, Formula::full());
  std::mt19937_64 rng(1);
  ClosureKind kinds[] = {ClosureKind::QuasiUpward, ClosureKind::Upward, ClosureKind::QuasiDownward, ClosureKind::Downward};
  for (int i = 0; i < 200; i++) {
    auto c = TeamProperty::from_low_word(2, rng() | 1);
    for (auto l: all_logics) {
      auto nf = synthesize_closure(c, l, ctx);
      EXPECT_EQ(reference_denotation(nf.formula, ctx), close(c, kinds[static_cast<int>(l)]));
    }
  }
  EXPECT_THROW(synthesize_closure(TeamProperty(2), LogicId::Lu, ctx), PreconditionError);
}

TEST(NormalizeSemantic, Examples) {
  auto q = PropContext::parse("q");
  auto nf = normalize_semantic(parse("1 <= q"), LogicId::Lqu, q);
  // Oracle: the teams satisfying 1 <= q other than the empty one, read off the reference evaluator.
  std::vector<Team> expect;
  for (auto t: enumerate_teams(q)) if (!t.is_empty() && reference_eval(t, parse("1 <= q"), q)) expect.push_back(t);
  EXPECT_EQ(nf.teams, expect);
  EXPECT_EQ(to_string(nf.formula), "1 <= q || 0 <= q & 1 <= q");
  EXPECT_EQ(normalize_semantic(Formula::bot(), LogicId::Lqu, q).formula, Formula::bot());
  EXPECT_EQ(normalize_semantic(Formula::full(), LogicId::Lqd, q).formula, Formula::full());
  EXPECT_THROW(normalize_semantic(parse("q <= 1"), LogicId::Lqu, q), PreconditionError);
}

TEST(NormalizeSemantic, PreservesDenotation) {
  auto ctx = ctx_pq();
  for (auto l: all_logics) {
    GenConfig cfg;
    cfg.seed = 40 + static_cast<int>(l);
    cfg.ctx = ctx;
    FormulaGenerator gen(cfg);
    for (int i = 0; i < 150; i++) {
      auto f = gen.next(l);
      auto nf = normalize_semantic(f, l, ctx);
      EXPECT_EQ(denotation(nf.formula, ctx), denotation(f, ctx)) << to_string(f);
      EXPECT_EQ(synthesize(denotation(nf.formula, ctx), l, ctx).formula, nf.formula);
    }
  }
}

TEST(IsNormalForm, Recognition) {
  auto ctx = ctx_pq();
  auto t = parse_team("10,01", ctx);
  auto r = is_normal_form(psi_prime(t, ctx), LogicId::Lqu, ctx);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, TeamProperty::of(2, {Team::empty(2), t}));
  EXPECT_FALSE(is_normal_form(Formula::conj(Formula::bot(), Formula::bot()), LogicId::Lqu, ctx).has_value());
  // Disjunct order and conjunct order are free.
  auto g = parse("1 0 <=! p q & 0 1 <=! p q || 1 1 <=! p q");
  auto h = parse("1 1 <=! p q || 0 1 <=! p q & 1 0 <=! p q");
  EXPECT_EQ(is_normal_form(g, LogicId::Lu, ctx), is_normal_form(h, LogicId::Lu, ctx));
  EXPECT_FALSE(is_normal_form(parse("1 <=! p"), LogicId::Lu, ctx).has_value());
  EXPECT_FALSE(is_normal_form(parse("1 0 <= p q"), LogicId::Lu, ctx).has_value());
  auto th = is_normal_form(parse("p q <=* 1 0 | p q <=* 0 0 || p p q <=* 1 0 0"), LogicId::Lqd, ctx);
  ASSERT_TRUE(th.has_value());
  EXPECT_EQ(th->size(), 3u);
  EXPECT_EQ(is_normal_form(parse("bot || p q <= 1 1"), LogicId::Ld, ctx)->size(), 2u);
}
