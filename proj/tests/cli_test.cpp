#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support/golden.hpp"

using namespace teamlogic;

namespace {

  struct Result {
    int code;
    std::string out, err;
  };

  auto run(std::vector<std::string> args) -> Result {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  auto trimmed(std::string s) {
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
  }

  auto temp_path(std::string const& name) { return (std::filesystem::temp_directory_path() / ("teamlogic_cli_" + name)).string(); }

}

TEST(Cli, EvalEmptyTeamSatisfiesBot) {
  auto r = run({"eval", "--props", "p", "--team", "EMPTY", "--formula", "bot"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(trimmed(r.out), "true");
  auto f = run({"eval", "--props", "p", "--team", "FULL", "--formula", "bot"});
  EXPECT_EQ(f.code, 1);
  EXPECT_EQ(trimmed(f.out), "false");
}

TEST(Cli, DenoteRepeatedFullAtom) {
  auto r = run({"denote", "--props", "p1", "--formula", "p1 p1 <=* 1 0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(trimmed(r.out), "EMPTY;FULL");
}

TEST(Cli, EntailFailsOnEmptyTeam) {
  auto r = run({"entail", "--props", "p", "--lhs", "top || 1 <=! p", "--rhs", "top | 1 <=! p"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(trimmed(r.out), "false\ncounterexample EMPTY");
  auto j = run({"entail", "--props", "p", "--lhs", "top || 1 <=! p", "--rhs", "top | 1 <=! p", "--json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["counterexample"], "EMPTY");
  EXPECT_EQ(run({"entail", "--props", "p", "--lhs", "1 <= p", "--rhs", "1 <= p || 0 <= p"}).code, 0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "--props", "p", "--formula", "bot"}).code, 2);           // no --team
  EXPECT_EQ(run({"eval", "--props", "p", "--team", "2", "--formula", "bot"}).code, 2);
  EXPECT_EQ(run({"eval", "--props", "p", "--team", "1", "--formula", "1 <="}).code, 2);
  EXPECT_EQ(run({"eval", "--props", "p", "--team", "1", "--formula", "1 <= q"}).code, 2);
  EXPECT_EQ(run({"synth", "--props", "p", "--property", "1", "--logic", "x"}).code, 2);
  EXPECT_EQ(run({"audit", "--samples", "3"}).code, 2);                            // no --seed
  EXPECT_EQ(run({"oracle", "agree"}).code, 2);
  auto r = run({"synth", "--props", "p", "--property", "1", "--logic", "d"});     // not closed
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("downward closed"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ThinAdapterMatrix) {
  // Every command's output equals the direct library call.
  auto ctx = PropContext::parse("p q");
  std::vector<std::string> formulas = {"1 <= p & 0 1 <= q p", "p <=* 1 | q <=* 0", "top || 1 0 <=! p q", "p <= 1 || q <= 0", "bot"};
  std::map<std::string, LogicId> logic_of = {{formulas[0], LogicId::Lqu}, {formulas[1], LogicId::Lqd}, {formulas[2], LogicId::Lu},
                                             {formulas[3], LogicId::Ld}, {formulas[4], LogicId::Ld}};
  for (auto const& text: formulas) {
    auto f = parse(text, ctx);
    for (auto t: enumerate_teams(ctx)) {
      auto r = run({"eval", "--props", "p q", "--team", format_team(t, ctx), "--formula", text});
      EXPECT_EQ(r.code == 0, eval(t, f, ctx)) << text;
    }
    auto c = denotation(f, ctx);
    EXPECT_EQ(trimmed(run({"denote", "--props", "p q", "--formula", text}).out), format_property(c, ctx));
    auto l = logic_of[text];
    EXPECT_EQ(trimmed(run({"normalize", "--props", "p q", "--formula", text, "--logic", logic_name(l)}).out),
              to_string(normalize_semantic(f, l, ctx).formula));
    for (auto k: {"d", "qd", "u", "qu"}) {
      EXPECT_EQ(run({"closure", "--props", "p q", "--formula", text, "--kind", k}).code == 0, check_closure(c, parse_closure_kind(k)));
      EXPECT_EQ(trimmed(run({"close", "--props", "p q", "--formula", text, "--kind", k}).out),
                format_property(close(c, parse_closure_kind(k)), ctx));
    }
    auto syn = run({"synth", "--props", "p q", "--property", format_property(c, ctx), "--logic", logic_name(l)});
    EXPECT_EQ(trimmed(syn.out), to_string(synthesize(c, l, ctx).formula));
  }
}

TEST(Cli, PropsDefaultToSortedSymbols) {
  EXPECT_EQ(trimmed(run({"denote", "--formula", "q <= 1"}).out), "EMPTY;1");
  EXPECT_EQ(run({"denote", "--formula", "1 <= q & 0 <= p"}).out, run({"denote", "--props", "p,q", "--formula", "1 <= q & 0 <= p"}).out);
}

TEST(Cli, ClosureReportAndJson) {
  auto r = run({"closure", "--props", "p", "--property", "EMPTY;1;FULL"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("qu true"), std::string::npos);
  EXPECT_NE(r.out.find("d false"), std::string::npos);
  auto j = nlohmann::json::parse(run({"closure", "--props", "p", "--property", "EMPTY;1;FULL", "--json"}).out);
  EXPECT_TRUE(j["u"].get<bool>() == false && j["qu"].get<bool>());
  auto s = nlohmann::json::parse(run({"synth", "--props", "p", "--property", "1", "--logic", "qu", "--close", "--json"}).out);
  EXPECT_EQ(s["formula"], "1 <= p");
}

TEST(Cli, CheckProofGoldenAndMutations) {
  for (auto const& name: golden::names()) {
    auto r = run({"check-proof", "--file", golden::path(name)});
    EXPECT_EQ(r.code, 0) << name << r.out;
    EXPECT_EQ(r.out.rfind("ok", 0), 0u);
  }
  EXPECT_EQ(run({"check-proof", "--file", golden::path("qu_example"), "--logic", "u"}).code, 1);
  for (auto const& m: golden::mutations()) {
    auto path = temp_path("mutation.json");
    save_proof(path, m.derivation, m.logic);
    auto r = run({"check-proof", "--file", path, "--json"});
    EXPECT_EQ(r.code, 1) << m.name;
    auto j = nlohmann::json::parse(r.out);
    bool at_node = false;
    for (auto const& v: j["violations"]) at_node |= v["path"] == m.node;
    EXPECT_TRUE(at_node) << m.name;
    std::remove(path.c_str());
  }
  EXPECT_EQ(run({"check-proof", "--file", temp_path("missing.json")}).code, 2);
}

TEST(Cli, DeriveThenCheck) {
  auto path = temp_path("derived.json");
  auto r = run({"derive", "--props", "p q", "--logic", "qd", "--lhs", "p <=* 1 & q <=* 0", "--rhs", "p q <=* 1 0", "--file", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto c = run({"check-proof", "--file", path, "--json"});
  EXPECT_EQ(c.code, 0);
  auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j["conclusion"], "p q <=* 1 0");
  EXPECT_EQ(j["open_assumptions"][0]["formula"], "p <=* 1 & q <=* 0");
  std::remove(path.c_str());

  auto nf = nlohmann::json::parse(run({"derive", "--props", "p", "--logic", "qu", "--formula", "[] <= []"}).out);
  EXPECT_EQ(nf["normal_form"], to_string(normalize_semantic(parse("[] <= []"), LogicId::Lqu, PropContext::parse("p")).formula));
  EXPECT_TRUE(check(proof_from_json(nf["forward"]).root, LogicId::Lqu).ok);
  EXPECT_TRUE(check(proof_from_json(nf["backward"]).root, LogicId::Lqu).ok);

  auto aug = run({"derive", "--rule", "aug", "--formula", "p <=* 1", "--formula", "q <=* 0"});
  ASSERT_EQ(aug.code, 0);
  auto pf = proof_from_string(aug.out);
  EXPECT_EQ(to_string(check(pf.root, pf.logic).conclusion), "p q <=* 1 0");
}

TEST(Cli, DeriveFailures) {
  auto ne = run({"derive", "--props", "p", "--logic", "qu", "--lhs", "[] <= []", "--rhs", "1 <= p"});
  EXPECT_EQ(ne.code, 1);
  EXPECT_NE(ne.out.find("counterexample"), std::string::npos);
  auto nd = run({"derive", "--props", "p", "--logic", "qd", "--lhs", "[] <=* []", "--rhs", "p p <=* 1 0 || p <=* 0 || p <=* 1"});
  EXPECT_EQ(nd.code, 1);
  EXPECT_NE(nd.err.find("not derivable"), std::string::npos);
  EXPECT_EQ(run({"derive", "--rule", "nope", "--formula", "p <=* 1"}).code, 2);
}

TEST(Cli, AuditAndMutation) {
  auto r = run({"audit", "--seed", "4", "--samples", "40", "--logic", "d"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("logic,rule,", 0), 0u);
  auto m = run({"audit", "--seed", "4", "--samples", "500", "--logic", "qd", "--unchecked-or-elim", "--json"});
  EXPECT_EQ(m.code, 1);
  bool found = false;
  for (auto const& row: nlohmann::json::parse(m.out))
    if (row["rule"] == "orE") found = row["counterexamples"].get<std::size_t>() > 0;
  EXPECT_TRUE(found);
}

TEST(Cli, OracleReports) {
  auto c = run({"oracle", "counts", "--max-props", "1"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("d,0,2"), std::string::npos);
  auto a = run({"oracle", "agree", "--seed", "1", "--samples", "100"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(trimmed(a.out), "formula,team,eval,reference");
}

TEST(Cli, CorpusSnapshotMatchesGenerator) {
  std::ifstream in(std::string(TEAMLOGIC_DATA_DIR) + "/golden/eval_corpus.txt");
  ASSERT_TRUE(in);
  std::stringstream file;
  file << in.rdbuf();
  auto r = run({"oracle", "corpus", "--props", "p q", "--seed", "2024", "--samples", "10000", "--depth", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, file.str());
}
