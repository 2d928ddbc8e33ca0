// Acceptance runner: one PASS/FAIL line per criterion, each against its time limit.
// Exit status is the number of failed criteria.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <teamlogic/teamlogic.hpp>

#include "support/golden.hpp"

using namespace teamlogic;

namespace {

  struct Outcome {
    bool ok = true;
    std::string detail;

    // Record a failure; keeps the first message.
    void fail(std::string const& msg) {
      if (ok) detail = msg;
      ok = false;
    }
  };

  auto ctx_n(std::size_t n) {
    std::vector<std::string> s = {"p", "q", "r"};
    s.resize(n);
    return PropContext(s);
  }

  auto logic_for(ClosureKind k) {
    switch (k) {
      case ClosureKind::QuasiUpward: return LogicId::Lqu;
      case ClosureKind::Upward: return LogicId::Lu;
      case ClosureKind::QuasiDownward: return LogicId::Lqd;
      default: return LogicId::Ld;
    }
  }

  constexpr ClosureKind four_kinds[] = {ClosureKind::QuasiUpward, ClosureKind::Upward, ClosureKind::QuasiDownward, ClosureKind::Downward};

  // 1. synthesize round trip over every closed property at two propositions.
  auto round_trip() -> Outcome {
    Outcome o;
    auto ctx = ctx_n(2);
    std::size_t total = 0;
    for (auto k: four_kinds) {
      auto l = logic_for(k);
      for (auto const& c: enumerate_closed_properties(ctx, k)) {
        total++;
        auto nf = synthesize(c, l, ctx);
        if (!(denotation(nf.formula, ctx) == c)) o.fail(std::string(logic_name(l)) + ": " + format_property(c, ctx));
      }
    }
    o.detail = o.ok ? std::to_string(total) + " properties" : o.detail;
    return o;
  }

  // 2. Characteristic formulas: exhaustive lemma table and the entailment criterion on random families.
  auto lemmas() -> Outcome {
    Outcome o;
    auto ctx = ctx_n(2);
    auto teams = enumerate_teams(ctx);
    for (auto t: teams) {
      auto pp = psi_prime(t, ctx), ps = psi_star(t, ctx), tp = theta_prime(t, ctx);
      for (auto s: teams) {
        if (reference_eval(s, pp, ctx) != (s.is_empty() || t.subset_of(s))) o.fail("psi' at " + format_team(t, ctx));
        if (reference_eval(s, ps, ctx) != t.subset_of(s)) o.fail("psi* at " + format_team(t, ctx));
        if (reference_eval(s, tp, ctx) != (s.subset_of(t) || s.is_full())) o.fail("theta' at " + format_team(t, ctx));
      }
    }
    std::mt19937_64 rng(2);
    auto family = [&](bool allow_empty, bool allow_full) {
      std::vector<Team> ts;
      while (ts.empty())
        for (auto t: teams)
          if ((allow_empty || !t.is_empty()) && (allow_full || !t.is_full()) && rng() % 4 == 0) ts.push_back(t);
      return ts;
    };
    auto disjunction = [&](std::vector<Team> const& ts, LogicId l) {
      std::vector<Formula> xs;
      for (auto t: ts) xs.push_back(characteristic(t, l, ctx));
      return Formula::fold(Connective::GlobalOr, xs, Formula::bot());
    };
    std::size_t pairs = 0;
    for (int i = 0; i < 1000; i++)
      for (auto l: {LogicId::Lqu, LogicId::Lu, LogicId::Lqd}) {
        bool up = is_upward_logic(l);
        auto d = family(l != LogicId::Lqu, l != LogicId::Lqd), c = family(l != LogicId::Lqu, l != LogicId::Lqd);
        // every disjunct of D is dominated by one of C
        bool dominated = true;
        for (auto s: d) {
          bool found = false;
          for (auto t: c) found |= up ? t.subset_of(s) : s.subset_of(t);
          dominated &= found;
        }
        pairs++;
        if (entails({disjunction(d, l)}, disjunction(c, l), ctx) != dominated) o.fail(std::string("criterion (ii) in ") + logic_name(l));
      }
    if (o.ok) o.detail = "256 team pairs x 3 lemmas, " + std::to_string(pairs) + " (C,D) pairs";
    return o;
  }

  // 3. Denotations of random formulas have the logic's closure kind.
  auto closure_props() -> Outcome {
    Outcome o;
    std::size_t total = 0;
    struct Batch {
      std::size_t props, count;
    };
    for (auto l: all_logics)
      for (auto b: {Batch{0, 2000}, Batch{1, 3000}, Batch{2, 5000}, Batch{3, 1000}}) {
        auto ctx = ctx_n(b.props);
        GenConfig cfg;
        cfg.seed = 300 + b.props * 10 + static_cast<std::uint64_t>(l);
        cfg.ctx = ctx;
        cfg.max_depth = 3;
        FormulaGenerator gen(cfg);
        for (std::size_t i = 0; i < b.count; i++) {
          auto f = gen.next(l);
          total++;
          if (!logic_membership(f, l)) o.fail("generator left " + std::string(logic_name(l)) + ": " + to_string(f));
          if (!check_closure(denotation(f, ctx), kind_of(l))) o.fail(std::string(logic_name(l)) + ": " + to_string(f));
        }
      }
    if (o.ok) o.detail = std::to_string(total) + " formulas";
    return o;
  }

  // 4. Collapse, distributivity and might equivalences.
  auto equivalences() -> Outcome {
    Outcome o;
    auto ctx = ctx_n(2);
    GenConfig cfg;
    cfg.seed = 4;
    cfg.ctx = ctx;
    cfg.max_depth = 2;
    FormulaGenerator gen(cfg);
    auto same = [&](Formula const& a, Formula const& b, char const* what) {
      if (!(denotation(a, ctx) == denotation(b, ctx))) o.fail(std::string(what) + ": " + to_string(a) + " vs " + to_string(b));
    };
    for (int i = 0; i < 2000; i++) {
      auto a = gen.next(LogicId::Lqu), b = gen.next(LogicId::Lqu);
      same(Formula::split_or(a, b), Formula::global_or(a, b), "qu collapse");
      same(Formula::split_or(a, b), Formula::strict_or(a, b), "qu strict collapse");
      auto c = gen.next(LogicId::Lu), d = gen.next(LogicId::Lu);
      same(Formula::split_or(c, d), Formula::conj(c, d), "u collapse");
      auto x = gen.next_mixed(), y = gen.next_mixed(), z = gen.next_mixed();
      same(Formula::conj(x, Formula::global_or(y, z)), Formula::global_or(Formula::conj(x, y), Formula::conj(x, z)), "and-gor");
      same(Formula::split_or(x, Formula::global_or(y, z)), Formula::global_or(Formula::split_or(x, y), Formula::split_or(x, z)),
           "or-gor");
    }
    // Every upward atom x <= p over p, q (distinct propositions): might of the literal conjunction.
    std::size_t atoms = 0;
    for (std::size_t n = 1; n <= 2; n++) {
      auto c = ctx_n(n);
      std::vector<TermSeq> prop_seqs = {{}};
      for (std::size_t i = 0; i < n; i++) prop_seqs.push_back({Term::prop(c.symbol(i))});
      if (n == 2) {
        prop_seqs.push_back({Term::prop("p"), Term::prop("q")});
        prop_seqs.push_back({Term::prop("q"), Term::prop("p")});
      }
      for (auto const& p: prop_seqs)
        for (std::uint32_t bits = 0; bits < (1u << p.size()); bits++) {
          TermSeq x;
          for (std::size_t i = 0; i < p.size(); i++) x.push_back(Term::constant((bits >> i) & 1u));
          auto lit = dual_atom_expand(Formula::incl(p, x));
          atoms++;
          auto eq = [&](Formula const& a, Formula const& b, char const* what) {
            if (!(denotation(a, c) == denotation(b, c))) o.fail(std::string(what) + ": " + to_string(a));
          };
          eq(Formula::incl(x, p), Formula::might(MightKind::Subteam, lit), "x <= p vs might");
          eq(Formula::incl(x, p, InclFlavor::NonEmpty), Formula::might(MightKind::NonemptySubteam, lit), "x <=! p vs MIGHT");
          eq(Formula::might(MightKind::Single, lit), Formula::might(MightKind::Subteam, lit), "might1 vs might");
        }
    }
    if (o.ok) o.detail = "2000 random rounds, " + std::to_string(atoms) + " atoms";
    return o;
  }

  // 5. Golden derivations and their mutations.
  auto golden_suite() -> Outcome {
    Outcome o;
    for (auto const& name: golden::names()) {
      auto pf = golden::load(name);
      auto r = check(pf.root, pf.logic);
      if (!r.ok) o.fail(name + " rejected: " + r.violations[0].path + " " + r.violations[0].message);
      else if (!entails(r.open_formulas(), r.conclusion, ctx_n(2))) o.fail(name + " not semantically valid");
    }
    auto ms = golden::mutations();
    if (ms.size() != 10) o.fail("expected ten mutations");
    for (auto const& m: ms)
      if (!golden::rejected_at_node(check(m.derivation, m.logic), m)) o.fail("mutation accepted or misplaced: " + m.name);
    if (o.ok) o.detail = "3 golden, 10 mutations rejected at their node";
    return o;
  }

  // 6. Soundness audit and the orE mutation.
  auto soundness() -> Outcome {
    Outcome o;
    AuditOptions opts;
    opts.seed = 6;
    std::size_t rules = 0, instances = 0;
    for (auto l: all_logics)
      for (auto const& r: audit(l, opts)) {
        rules++;
        instances += r.accepted;
        if (!r.passed(opts.samples))
          o.fail(std::string(logic_name(l)) + " " + rule_name(r.rule) + ": accepted " + std::to_string(r.accepted) + " "
                 + r.first_counterexample.value_or(""));
      }
    AuditOptions mut = opts;
    mut.check.or_elim_requires_gor_free = false;
    for (auto l: {LogicId::Lqd, LogicId::Ld})
      if (audit_rule(l, RuleId::OrE, mut).counterexamples == 0) o.fail(std::string("mutation run found nothing in ") + logic_name(l));
    if (o.ok) o.detail = std::to_string(rules) + " rules, " + std::to_string(instances) + " instances, mutation caught";
    return o;
  }

  // 7. Constructive normal forms and completeness.
  auto constructive() -> Outcome {
    Outcome o;
    auto ctx = ctx_n(2);
    std::size_t nd = 0;
    for (auto l: all_logics) {
      GenConfig cfg;
      cfg.seed = 700 + static_cast<std::uint64_t>(l);
      cfg.ctx = ctx;
      cfg.max_depth = 4;
      FormulaGenerator gen(cfg);
      for (int i = 0; i < 500; i++) {
        auto f = gen.next(l);
        try {
          auto r = derive_normal_form(f, l, ctx);
          auto a = check(r.forward, l), b = check(r.backward, l);
          bool good = a.ok && b.ok && a.conclusion == r.nf.formula && b.conclusion == f
                      && a.open_formulas() == std::vector<Formula>{f} && b.open_formulas() == std::vector<Formula>{r.nf.formula}
                      && denotation(r.nf.formula, ctx) == denotation(f, ctx);
          if (!good) o.fail(std::string("normal form ") + logic_name(l) + ": " + to_string(f));
        } catch (std::exception const& e) {
          o.fail(std::string("normal form ") + logic_name(l) + ": " + to_string(f) + ": " + e.what());
        }
      }
      std::size_t pairs = 0;
      for (std::size_t tries = 0; pairs < 200 && tries < 1000000; tries++) {
        auto g = gen.next(l), f = gen.next(l);
        if (!entails({g}, f, ctx)) continue;
        pairs++;
        try {
          auto r = check(derive_entailment(g, f, l, ctx), l);
          bool good = r.ok && r.conclusion == f;
          for (auto const& x: r.open_formulas()) good &= x == g;
          if (!good) o.fail(std::string("entailment ") + logic_name(l) + ": " + to_string(g) + " |- " + to_string(f));
        } catch (NotDerivable const&) {
          nd++;
          o.fail(std::string("not derivable in ") + logic_name(l) + ": " + to_string(g) + " |- " + to_string(f));
        } catch (std::exception const& e) {
          o.fail(std::string("entailment ") + logic_name(l) + ": " + e.what());
        }
      }
      if (pairs < 200) o.fail(std::string("too few entailed pairs in ") + logic_name(l));
    }
    if (o.ok) o.detail = "4 x 500 normal forms, 4 x 200 entailments";
    else if (nd) o.detail += " (" + std::to_string(nd) + " not derivable)";
    return o;
  }

  // 8. Both evaluators on the committed corpus.
  auto dual_eval() -> Outcome {
    Outcome o;
    auto ctx = ctx_n(2);
    std::ifstream in(std::string(TEAMLOGIC_DATA_DIR) + "/golden/eval_corpus.txt");
    if (!in) {
      o.fail("corpus missing");
      return o;
    }
    auto teams = enumerate_teams(ctx);
    std::size_t formulas = 0, pairs = 0;
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      auto f = parse(line, ctx);
      formulas++;
      for (auto t: teams) {
        pairs++;
        if (eval(t, f, ctx) != reference_eval(t, f, ctx)) o.fail(line + " on " + format_team(t, ctx));
      }
    }
    if (formulas < 10000) o.fail("corpus has only " + std::to_string(formulas) + " formulas");
    if (o.ok) o.detail = std::to_string(formulas) + " formulas x 16 teams = " + std::to_string(pairs) + " pairs";
    return o;
  }

}

int main() {
  struct Criterion {
    int id;
    char const* name;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
    {1, "synthesize round trip, all closed properties at |P|=2", 60, round_trip},
    {2, "characteristic-formula lemmas and entailment criterion", 30, lemmas},
    {3, "closure kind of random formulas at |P|<=3", 120, closure_props},
    {4, "collapse, distributivity and might equivalences", 30, equivalences},
    {5, "golden derivations and ten mutations", 5, golden_suite},
    {6, "soundness audit of all rules and the orE mutation", 120, soundness},
    {7, "derivable normal forms and completeness", 300, constructive},
    {8, "eval against the reference evaluator on the corpus", 60, dual_eval},
  };
  int failed = 0;
  for (auto const& c: criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit) o.fail("took longer than the limit");
    failed += !o.ok;
    std::ostringstream line;
    line << (o.ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed << std::setprecision(2) << secs << " s / "
         << std::setprecision(0) << c.limit << " s): " << o.detail;
    std::cout << line.str() << std::endl;
  }
  return failed;
}
