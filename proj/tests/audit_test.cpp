#include <gtest/gtest.h>

#include <teamlogic/audit.hpp>

using namespace teamlogic;

TEST(Audit, EveryRuleSoundOnFiveHundredInstances) {
  AuditOptions o;
  for (auto l: all_logics) {
    auto rs = audit(l, o);
    ASSERT_EQ(rs.size(), RuleSystem::of(l).rules.size());
    for (auto const& r: rs) {
      EXPECT_TRUE(r.passed(500)) << logic_name(l) << " " << rule_name(r.rule) << " accepted " << r.accepted << ": "
                                 << r.first_counterexample.value_or("");
      // the contract must actually be exercised
      EXPECT_GT(r.nonvacuous, 50u) << logic_name(l) << " " << rule_name(r.rule);
    }
  }
}

TEST(Audit, LqdSoundWithoutFullTeamClause) {
  AuditOptions o;
  o.samples = 200;
  o.semantics.ignore_full_clause = true;
  for (auto const& r: audit(LogicId::Lqd, o)) EXPECT_TRUE(r.passed(200)) << rule_name(r.rule) << ": " << r.first_counterexample.value_or("");
}

TEST(Audit, OrElimWithoutSideConditionIsUnsound) {
  AuditOptions o;
  o.check.or_elim_requires_gor_free = false;
  for (auto l: {LogicId::Lqd, LogicId::Ld}) {
    auto r = audit_rule(l, RuleId::OrE, o);
    EXPECT_GT(r.counterexamples, 0u) << logic_name(l);
    EXPECT_TRUE(r.first_counterexample.has_value());
  }
}

TEST(Audit, ContractOnHandInstances) {
  auto ctx = PropContext::parse("p");
  auto f = [](char const* s) { return parse(s); };
  // p <= 1 | p <= 0 with both minors concluding the global disjunction: false on the full team.
  RuleInstance bad;
  bad.rule = RuleId::OrE;
  auto c = f("p <= 1 || p <= 0");
  bad.premises = {f("p <= 1 | p <= 0"), c, c};
  bad.hypotheses = {{}, {f("p <= 1")}, {f("p <= 0")}};
  bad.gamma = {f("p <= 1 | p <= 0")};
  bad.conclusion = c;
  auto cx = instance_counterexample(bad, ctx, {});
  ASSERT_TRUE(cx.has_value());
  EXPECT_EQ(*cx, Team::full(1));
  EXPECT_FALSE(check(bad.derivation(), LogicId::Ld).ok);

  // Premises that do not hold make the instance vacuous.
  RuleInstance vac;
  vac.rule = RuleId::AndE;
  vac.premises = {f("p <= 1 & p <= 0")};
  vac.hypotheses = {{}};
  vac.conclusion = f("p <= 1");
  vac.gamma = {f("p <= 0 | p <= 1")};
  bool vacuous = false;
  EXPECT_FALSE(instance_counterexample(vac, ctx, {}, &vacuous).has_value());
  EXPECT_TRUE(vacuous);
}

TEST(Audit, NeedsAProposition) {
  AuditOptions o;
  o.ctx = PropContext();
  EXPECT_THROW(audit_rule(LogicId::Lqu, RuleId::TopI, o), PreconditionError);
}
