#include <gtest/gtest.h>

#include <teamlogic/proof.hpp>
#include <teamlogic/proof_json.hpp>
#include <teamlogic/semantics.hpp>

#include "support/golden.hpp"

using namespace teamlogic;

namespace {

  auto f(char const* s) { return parse(s); }
  auto A(char const* s, std::optional<std::string> tag = std::nullopt) { return Derivation::assume(parse(s), std::move(tag)); }
  auto I(RuleId r, char const* c, std::vector<Derivation> ps = {}, std::vector<Discharge> ds = {}) {
    return Derivation::infer(r, parse(c), std::move(ps), std::move(ds));
  }

  auto has_violation_at(CheckReport const& r, std::string const& path) {
    for (auto const& v: r.violations) if (v.path == path) return true;
    return false;
  }

  // Semantic soundness of a checked derivation: the open assumptions jointly entail the conclusion.
  auto semantically_valid(CheckReport const& r, PropContext const& ctx) {
    return entails(r.open_formulas(), r.conclusion, ctx);
  }

}

TEST(RuleSystem, Membership) {
  EXPECT_TRUE(RuleSystem::of(LogicId::Lqu).has(RuleId::BotE));
  EXPECT_FALSE(RuleSystem::of(LogicId::Lu).has(RuleId::BotE));
  EXPECT_FALSE(RuleSystem::of(LogicId::Ld).has(RuleId::BulletI));
  EXPECT_TRUE(RuleSystem::of(LogicId::Lqd).has(RuleId::OrGorDistr));
  EXPECT_FALSE(RuleSystem::of(LogicId::Lqu).has(RuleId::OrE));
  for (auto r: all_rules) EXPECT_EQ(parse_rule(rule_name(r)), r);
  EXPECT_FALSE(parse_rule("cut").has_value());
}

TEST(Golden, ExamplesCheck) {
  auto qu = golden::load("qu_example");
  auto r = check(qu.root, qu.logic);
  EXPECT_TRUE(r.ok) << (r.violations.empty() ? "" : r.violations[0].path + ": " + r.violations[0].message);
  EXPECT_TRUE(r.open_assumptions.empty());
  EXPECT_EQ(to_string(r.conclusion), "1 <= q || 0 <= q");

  auto u = golden::load("u_example");
  auto ru = check(u.root, u.logic);
  EXPECT_TRUE(ru.ok);
  ASSERT_EQ(ru.open_assumptions.size(), 1u);
  EXPECT_EQ(to_string(ru.open_assumptions[0].first), "1 <=! p");

  auto aug = golden::load("qd_aug");
  auto ra = check(aug.root, aug.logic);
  EXPECT_TRUE(ra.ok) << (ra.violations.empty() ? "" : ra.violations[0].path + ": " + ra.violations[0].message);
  EXPECT_EQ(to_string(ra.conclusion), "p q <=* 1 0");
  ASSERT_EQ(ra.open_assumptions.size(), 2u);
  EXPECT_EQ(to_string(ra.open_assumptions[0].first), "p <=* 1");
  EXPECT_EQ(to_string(ra.open_assumptions[1].first), "q <=* 0");
}

TEST(Golden, SemanticallyValid) {
  auto ctx = PropContext::parse("p q");
  for (auto const& name: golden::names()) {
    auto pf = golden::load(name);
    auto r = check(pf.root, pf.logic);
    ASSERT_TRUE(r.ok) << name;
    EXPECT_TRUE(semantically_valid(r, ctx)) << name;
  }
}

TEST(Golden, WrongSystemRejected) {
  auto qu = golden::load("qu_example");
  EXPECT_FALSE(check(qu.root, LogicId::Lu).ok);
  auto aug = golden::load("qd_aug");
  EXPECT_FALSE(check(aug.root, LogicId::Ld).ok);
}

TEST(Golden, TenMutationsRejectedAtNode) {
  auto ms = golden::mutations();
  ASSERT_EQ(ms.size(), 10u);
  for (auto const& m: ms) {
    auto r = check(m.derivation, m.logic);
    EXPECT_TRUE(golden::rejected_at_node(r, m)) << m.name;
  }
}

TEST(Checker, OkIffNoViolations) {
  for (auto const& m: golden::mutations()) {
    auto r = check(m.derivation, m.logic);
    EXPECT_EQ(r.ok, r.violations.empty());
  }
}

TEST(Checker, ContractionOfOpenAssumptions) {
  auto d = I(RuleId::AndI, "1 <= p & 1 <= p", {A("1 <= p"), A("1 <= p")});
  auto r = check(d, LogicId::Lqu);
  ASSERT_TRUE(r.ok);
  ASSERT_EQ(r.open_assumptions.size(), 1u);
  EXPECT_EQ(r.open_assumptions[0].second, 2u);
}

TEST(Checker, SharedSubderivationsCountPerUse) {
  auto leaf = A("1 <= p");
  auto d = I(RuleId::AndI, "1 <= p & 1 <= p", {leaf, leaf});
  EXPECT_EQ(d.dag_size(), 2u);
  EXPECT_EQ(d.tree_size(), 3.0);
  EXPECT_EQ(check(d, LogicId::Lqu).open_assumptions[0].second, 2u);
}

TEST(Checker, MembershipEnforced) {
  auto r = check(A("1 <= p"), LogicId::Lu);
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(has_violation_at(r, "root"));
}

TEST(Checker, PermSplits) {
  // One step swaps the two trailing blocks y z; a swap in the middle takes two steps.
  auto d = I(RuleId::Perm, "0 1 1 <= q p r", {A("1 0 1 <= p q r")});
  EXPECT_FALSE(check(d, LogicId::Lqu).ok);
  auto d2 = I(RuleId::Perm, "0 1 1 <= q p r", {I(RuleId::Perm, "1 1 0 <= p r q", {A("1 0 1 <= p q r")})});
  EXPECT_TRUE(check(d2, LogicId::Lqu).ok);
  auto d3 = I(RuleId::Perm, "0 1 1 <= q p r", {I(RuleId::Perm, "1 1 0 <= r p q", {A("1 0 1 <= p q r")})});
  EXPECT_FALSE(check(d3, LogicId::Lqu).ok);
  auto rot = I(RuleId::Perm, "0 1 1 <= q r p", {A("1 0 1 <= p q r")});
  EXPECT_TRUE(check(rot, LogicId::Lqu).ok);
  // Mismatched constants on the two sides.
  auto bad = I(RuleId::Perm, "1 0 1 <= q p r", {A("1 0 1 <= p q r")});
  EXPECT_FALSE(check(bad, LogicId::Lqu).ok);
  auto id = I(RuleId::Perm, "p <=* 1", {A("p <=* 1")});
  EXPECT_TRUE(check(id, LogicId::Lqd).ok);
}

TEST(Checker, ProjDropsLastPair) {
  EXPECT_TRUE(check(I(RuleId::Proj, "1 <=! p", {A("1 0 <=! p q")}), LogicId::Lu).ok);
  EXPECT_FALSE(check(I(RuleId::Proj, "0 <=! q", {A("1 0 <=! p q")}), LogicId::Lu).ok);
  EXPECT_TRUE(check(I(RuleId::Proj, "[] <= []", {A("1 <= p")}), LogicId::Lqu).ok);
}

TEST(Checker, DownwardExtAllowsRepeatedVariable) {
  auto d = I(RuleId::Ext, "p p <=* 1 1 | p p <=* 1 0", {A("p <=* 1")});
  EXPECT_TRUE(check(d, LogicId::Lqd).ok);
  auto bad = I(RuleId::Ext, "p q <=* 1 1 | p q <=* 0 0", {A("p <=* 1")});
  EXPECT_FALSE(check(bad, LogicId::Lqd).ok);
}

TEST(Checker, BulletRules) {
  EXPECT_TRUE(check(I(RuleId::BulletI, "full", {A("p <=* 1 | full")}), LogicId::Lqd).ok);
  EXPECT_FALSE(check(I(RuleId::BulletI, "full", {A("full | p <=* 1")}), LogicId::Lqd).ok);
  EXPECT_TRUE(check(I(RuleId::BulletE, "p <=* 1 || full", {A("full")}), LogicId::Lqd).ok);
  EXPECT_TRUE(check(I(RuleId::TopI, "[] <=* []"), LogicId::Lqd).ok);
  EXPECT_FALSE(check(I(RuleId::TopI, "[] <= []"), LogicId::Lqd).ok);
  EXPECT_TRUE(check(I(RuleId::TopI, "top"), LogicId::Lu).ok);
}

TEST(Checker, BotOrElimination) {
  EXPECT_TRUE(check(I(RuleId::BotOrE, "p <=* 1", {A("p <=* 1 | q q <=* 1 0")}), LogicId::Lqd).ok);
  EXPECT_FALSE(check(I(RuleId::BotOrE, "p <=* 1", {A("p <=* 1 | q p <=* 1 0")}), LogicId::Lqd).ok);
  EXPECT_TRUE(check(I(RuleId::BotOrE, "p <= 1", {A("p <= 1 | bot")}), LogicId::Ld).ok);
  EXPECT_FALSE(check(I(RuleId::BotOrE, "p <= 1", {A("bot | p <= 1")}), LogicId::Ld).ok);
}

TEST(Checker, SplitDisjunctionRules) {
  EXPECT_TRUE(check(I(RuleId::OrCom, "q <= 0 | p <= 1", {A("p <= 1 | q <= 0")}), LogicId::Ld).ok);
  EXPECT_TRUE(check(I(RuleId::OrGorDistr, "(p <= 1 | q <= 0) || (p <= 1 | q <= 1)", {A("p <= 1 | (q <= 0 || q <= 1)")}),
                    LogicId::Ld).ok);
  auto mon = I(RuleId::OrMon, "p <= 1 | (q <= 0 | bot)", {A("p <= 1 | q <= 0"), I(RuleId::OrI, "q <= 0 | bot", {A("q <= 0", "t")})},
               {{"t", f("q <= 0")}});
  auto r = check(mon, LogicId::Ld);
  EXPECT_TRUE(r.ok) << (r.violations.empty() ? "" : r.violations[0].message);
  EXPECT_EQ(r.open_assumptions.size(), 1u);
}

TEST(Checker, DischargeHygiene) {
  // Tag bound in the wrong branch.
  auto c = "1 <= q || 0 <= q";
  auto d = I(RuleId::Ext, c, {I(RuleId::TopI, "[] <= []"), I(RuleId::GorI, c, {A("0 <= q", "b")}), I(RuleId::GorI, c, {A("1 <= q", "a")})},
             {{"a", f("1 <= q")}, {"b", f("0 <= q")}});
  auto r = check(d, LogicId::Lqu);
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(has_violation_at(r, "root/1/0"));
  EXPECT_TRUE(has_violation_at(r, "root/2/0"));
  // Tag with the wrong formula.
  auto e = I(RuleId::Ext, c, {I(RuleId::TopI, "[] <= []"), I(RuleId::GorI, c, {A("1 <= q", "a")}), I(RuleId::GorI, c, {A("1 <= q", "b")})},
             {{"a", f("1 <= q")}, {"b", f("0 <= q")}});
  auto re = check(e, LogicId::Lqu);
  EXPECT_FALSE(re.ok);
  EXPECT_TRUE(has_violation_at(re, "root/2/0"));
  // Duplicate tag in one rule.
  auto g = I(RuleId::GorE, "1 <= p", {A("1 <= p || 1 <= p"), A("1 <= p", "a"), A("1 <= p", "a")}, {{"a", f("1 <= p")}, {"a", f("1 <= p")}});
  EXPECT_FALSE(check(g, LogicId::Lqu).ok);
}

TEST(Checker, OrElimOptionDisablesSideCondition) {
  auto m = golden::mutations()[6];
  ASSERT_EQ(m.logic, LogicId::Lqd);
  EXPECT_FALSE(check(m.derivation, m.logic).ok);
  CheckOptions opts;
  opts.or_elim_requires_gor_free = false;
  EXPECT_TRUE(check(m.derivation, m.logic, opts).ok);
}

TEST(ProofJson, RoundTripGolden) {
  for (auto const& name: golden::names()) {
    auto pf = golden::load(name);
    auto j = proof_to_json(pf.root, pf.logic);
    auto back = proof_from_json(j);
    EXPECT_EQ(back.logic, pf.logic);
    EXPECT_EQ(proof_to_json(back.root, back.logic), j) << name;
  }
}

TEST(ProofJson, SharedNodes) {
  auto sub = I(RuleId::AndI, "1 <= p & 1 <= p", {A("1 <= p"), A("1 <= p")});
  auto d = I(RuleId::AndI, "(1 <= p & 1 <= p) & (1 <= p & 1 <= p)", {sub, sub});
  auto j = proof_to_json(d, LogicId::Lqu);
  ASSERT_TRUE(j.contains("shared"));
  EXPECT_EQ(j["shared"].size(), 1u);
  auto back = proof_from_json(j);
  EXPECT_EQ(back.root.dag_size(), d.dag_size());
  EXPECT_EQ(check(back.root, LogicId::Lqu).open_assumptions[0].second, 4u);
  auto flat = proof_to_json(d, LogicId::Lqu, false);
  EXPECT_FALSE(flat.contains("shared"));
}

TEST(ProofJson, Errors) {
  EXPECT_THROW(proof_from_string("{"), FormatError);
  EXPECT_THROW(proof_from_string(R"({"logic":"qu"})"), FormatError);
  EXPECT_THROW(proof_from_string(R"({"logic":"x","root":{"assume":"top"}})"), FormatError);
  EXPECT_THROW(proof_from_string(R"({"logic":"qu","root":{"rule":"cut","conclusion":"bot"}})"), FormatError);
  EXPECT_THROW(proof_from_string(R"({"logic":"qu","root":{"assume":"1 <="}})"), FormatError);
  EXPECT_THROW(proof_from_string(R"({"logic":"qu","root":{"ref":0}})"), FormatError);
  auto ok = proof_from_string(R"({"logic":"Lqu","root":{"assume":"bot"}})");
  EXPECT_TRUE(ok.root.is_leaf());
}
