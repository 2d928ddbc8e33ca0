// Golden derivations shipped in data/golden and the mutated variants the checker must reject.
// Shared by the unit tests and the acceptance runner.

#ifndef TEAMLOGIC_TESTS_GOLDEN_HPP
#define TEAMLOGIC_TESTS_GOLDEN_HPP

#include <functional>
#include <string>
#include <vector>

#include <teamlogic/proof.hpp>
#include <teamlogic/proof_json.hpp>

namespace teamlogic::golden {

  inline auto path(std::string const& name) -> std::string { return std::string(TEAMLOGIC_DATA_DIR) + "/golden/" + name + ".json"; }

  inline auto load(std::string const& name) -> ProofFile { return load_proof(path(name)); }

  inline auto names() -> std::vector<std::string> { return {"qu_example", "u_example", "qd_aug"}; }

  // Rebuild d with the node at `at` (premise indices from the root) replaced by f(node).
  inline auto rewrite(Derivation const& d, std::vector<std::size_t> const& at, std::function<Derivation(Derivation const&)> const& f,
                      std::size_t depth = 0) -> Derivation {
    if (depth == at.size()) return f(d);
    auto ps = d.premises();
    ps.at(at[depth]) = rewrite(ps[at[depth]], at, f, depth + 1);
    return Derivation::infer(d.rule(), d.conclusion(), ps, d.discharge());
  }

  inline auto retag(Derivation const& leaf, std::string tag) -> Derivation { return Derivation::assume(leaf.conclusion(), std::move(tag)); }

  struct Mutation {
    std::string name;
    LogicId logic;
    Derivation derivation;
    std::string node;    // path of the mutated node
    std::string keyword; // expected in the violation message at that node
  };

  inline auto mutations() -> std::vector<Mutation> {
    std::vector<Mutation> out;
    auto qu = load("qu_example").root;
    auto u = load("u_example").root;
    auto aug = load("qd_aug").root;
    auto f = [](char const* s) { return parse(s); };
    auto A = [](Formula g, std::optional<std::string> tag = std::nullopt) { return Derivation::assume(std::move(g), std::move(tag)); };

    {
      auto ps = qu.premises();
      ps.pop_back();
      out.push_back({"ext missing a branch", LogicId::Lqu, Derivation::infer(qu.rule(), qu.conclusion(), ps, qu.discharge()), "root", "premise"});
    }
    out.push_back({"qu undischarged tag", LogicId::Lqu, rewrite(qu, {1, 0}, [](Derivation const& l) { return retag(l, "z"); }), "root/1/0", "not discharged"});
    {
      auto c = f("1 1 <=! p p || 1 0 <=! p p");
      auto a = f("1 1 <=! p p"), b = f("1 0 <=! p p");
      auto d = Derivation::infer(RuleId::Ext, c,
                                 {A(f("1 <=! p")), Derivation::infer(RuleId::GorI, c, {A(a, "a")}), Derivation::infer(RuleId::GorI, c, {A(b, "b")})},
                                 {{"a", a}, {"b", b}});
      out.push_back({"u ext non-fresh variable", LogicId::Lu, d, "root", "fresh"});
    }
    out.push_back({"u gorI extra premise", LogicId::Lu,
                   rewrite(u, {1}, [&](Derivation const& n) {
                     auto ps = n.premises();
                     ps.push_back(A(f("1 <=! p")));
                     return Derivation::infer(n.rule(), n.conclusion(), ps, n.discharge());
                   }),
                   "root/1", "premise"});
    out.push_back({"aug botE missing premise", LogicId::Lqd,
                   rewrite(aug, {1, 2}, [](Derivation const& n) {
                     return Derivation::infer(n.rule(), n.conclusion(), {n.premises()[0]}, n.discharge());
                   }),
                   "root/1/2", "premise"});
    out.push_back({"aug undischarged tag", LogicId::Lqd, rewrite(aug, {1, 2, 1, 0}, [](Derivation const& l) { return retag(l, "e"); }),
                   "root/1/2/1/0", "not discharged"});
    {
      auto c = f("p <=* 1 || p <=* 0");
      auto d = Derivation::infer(RuleId::OrE, c,
                                 {A(f("p <=* 1 | p <=* 0")), Derivation::infer(RuleId::GorI, c, {A(f("p <=* 1"), "a")}),
                                  Derivation::infer(RuleId::GorI, c, {A(f("p <=* 0"), "b")})},
                                 {{"a", f("p <=* 1")}, {"b", f("p <=* 0")}});
      out.push_back({"qd orE global disjunction in conclusion", LogicId::Lqd, d, "root", "global disjunction"});
    }
    {
      auto c = f("p <= 1 || p <= 0");
      auto d = Derivation::infer(RuleId::OrE, c,
                                 {A(f("p <= 1 | p <= 0")), Derivation::infer(RuleId::GorI, c, {A(f("p <= 1"), "a")}),
                                  Derivation::infer(RuleId::GorI, c, {A(f("p <= 0"), "b")})},
                                 {{"a", f("p <= 1")}, {"b", f("p <= 0")}});
      out.push_back({"d orE global disjunction in conclusion", LogicId::Ld, d, "root", "global disjunction"});
    }
    out.push_back({"qd orI introduces full", LogicId::Lqd, Derivation::infer(RuleId::OrI, f("p <=* 1 | full"), {A(f("p <=* 1"))}), "root",
                   "full-free"});
    out.push_back({"qd botE concludes full", LogicId::Lqd,
                   Derivation::infer(RuleId::BotE, Formula::full(), {A(f("p <=* 1")), A(f("p <=* 0"))}), "root", "full-free"});
    return out;
  }

  // The mutated node carries a violation mentioning the keyword.
  inline auto rejected_at_node(CheckReport const& r, Mutation const& m) -> bool {
    if (r.ok) return false;
    for (auto const& v: r.violations)
      if (v.path == m.node && v.message.find(m.keyword) != std::string::npos) return true;
    return false;
  }

}

#endif // TEAMLOGIC_TESTS_GOLDEN_HPP
