// The teamlogic command line. run() takes the arguments after the program name and writes to the
// given streams, so tests drive it directly.
//
// Exit codes: 0 success or "true", 1 "false" or a failed check, 2 usage or input error.

#ifndef TEAMLOGIC_CLI_HPP
#define TEAMLOGIC_CLI_HPP

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <teamlogic/teamlogic.hpp>

namespace teamlogic::cli {

  namespace detail {

    using nlohmann::json;

    struct Args {
      std::string props;
      bool props_given = false;
      std::string team, property, logic, kind, file, rule;
      std::vector<std::string> formulas, lhs;
      std::string rhs;
      bool json = false, close_first = false, unchecked_or_elim = false;
      std::uint64_t seed = 0;
      std::size_t samples = 500, depth = 3, max_props = 2;
    };

    // Input that cannot be acted on; reported like a usage error.
    struct InputError: Error {
      using Error::Error;
    };

    class Runner {
    public:
      Runner(Args const& a, std::ostream& out): a_(a), out_(out) {}

      // The context from --props, or else the symbols of the given formulas in sorted order.
      auto context(std::vector<std::string> const& texts) const -> PropContext {
        if (a_.props_given) {
          auto s = a_.props;
          std::replace(s.begin(), s.end(), ',', ' ');
          return PropContext::parse(s);
        }
        std::set<std::string> syms;
        for (auto const& t: texts)
          for (auto const& s: free_props(parse(t))) syms.insert(s);
        return PropContext(std::vector<std::string>(syms.begin(), syms.end()));
      }

      auto formula() const -> std::string const& {
        if (a_.formulas.size() != 1) throw InputError("exactly one --formula is required");
        return a_.formulas[0];
      }

      auto logic() const -> LogicId {
        if (a_.logic.empty()) throw InputError("--logic is required");
        return parse_logic(a_.logic);
      }

      auto emit(json const& j, std::string const& text) -> void {
        if (a_.json) out_ << j.dump() << "\n";
        else out_ << text << "\n";
      }

      auto eval_cmd() -> int {
        auto ctx = context({formula()});
        auto f = parse(formula(), ctx);
        auto v = eval(parse_team(a_.team, ctx), f, ctx);
        emit({{"value", v}}, v ? "true" : "false");
        return v ? 0 : 1;
      }

      auto denote_cmd() -> int {
        auto ctx = context({formula()});
        auto c = denotation(parse(formula(), ctx), ctx);
        emit({{"property", property_to_json(c, ctx)}}, format_property(c, ctx));
        return 0;
      }

      // --property, or the denotation of --formula
      auto property_input(PropContext const& ctx) const -> TeamProperty {
        if (!a_.property.empty()) return parse_property(a_.property, ctx);
        if (a_.formulas.size() == 1) return denotation(parse(a_.formulas[0], ctx), ctx);
        throw InputError("give --property or one --formula");
      }

      auto closure_cmd() -> int {
        auto ctx = context(a_.formulas);
        auto c = property_input(ctx);
        if (!a_.kind.empty()) {
          auto v = check_closure(c, parse_closure_kind(a_.kind));
          emit({{"kind", a_.kind}, {"value", v}}, v ? "true" : "false");
          return v ? 0 : 1;
        }
        json j = json::object();
        std::string text;
        for (auto k: {ClosureKind::Downward, ClosureKind::QuasiDownward, ClosureKind::Upward, ClosureKind::QuasiUpward,
                      ClosureKind::UnionClosed, ClosureKind::EmptyTeam, ClosureKind::FullTeam}) {
          bool v = check_closure(c, k);
          j[closure_kind_name(k)] = v;
          text += std::string(text.empty() ? "" : "\n") + closure_kind_name(k) + " " + (v ? "true" : "false");
        }
        emit(j, text);
        return 0;
      }

      auto close_cmd() -> int {
        auto ctx = context(a_.formulas);
        if (a_.kind.empty()) throw InputError("--kind is required");
        auto c = close(property_input(ctx), parse_closure_kind(a_.kind));
        emit({{"property", property_to_json(c, ctx)}}, format_property(c, ctx));
        return 0;
      }

      auto print_nf(NormalForm const& nf, PropContext const& ctx) -> void {
        emit({{"formula", to_string(nf.formula)}, {"index", property_to_json(nf.index(ctx.size()), ctx)}}, to_string(nf.formula));
      }

      auto synth_cmd() -> int {
        auto ctx = context({});
        if (a_.property.empty()) throw InputError("--property is required");
        auto c = parse_property(a_.property, ctx);
        print_nf(a_.close_first ? synthesize_closure(c, logic(), ctx) : synthesize(c, logic(), ctx), ctx);
        return 0;
      }

      auto normalize_cmd() -> int {
        auto ctx = context({formula()});
        print_nf(normalize_semantic(parse(formula(), ctx), logic(), ctx), ctx);
        return 0;
      }

      auto entail_cmd() -> int {
        if (a_.rhs.empty()) throw InputError("--rhs is required");
        auto texts = a_.lhs;
        texts.push_back(a_.rhs);
        auto ctx = context(texts);
        std::vector<Formula> gamma;
        for (auto const& t: a_.lhs) gamma.push_back(parse(t, ctx));
        auto cx = entailment_counterexample(gamma, parse(a_.rhs, ctx), ctx);
        if (!cx) {
          emit({{"entails", true}}, "true");
          return 0;
        }
        emit({{"entails", false}, {"counterexample", format_team(*cx, ctx)}}, "false\ncounterexample " + format_team(*cx, ctx));
        return 1;
      }

      auto check_proof_cmd() -> int {
        if (a_.file.empty()) throw InputError("--file is required");
        auto pf = load_proof(a_.file);
        auto l = a_.logic.empty() ? pf.logic : logic();
        auto r = check(pf.root, l);
        json j{{"ok", r.ok}, {"logic", logic_name(l)}, {"conclusion", to_string(r.conclusion)}};
        j["open_assumptions"] = json::array();
        j["violations"] = json::array();
        std::string text = std::string(r.ok ? "ok" : "rejected") + "\nconclusion: " + to_string(r.conclusion);
        for (auto const& [f, n]: r.open_assumptions) {
          j["open_assumptions"].push_back({{"formula", to_string(f)}, {"count", n}});
          text += "\nopen: " + to_string(f) + (n > 1 ? " (x" + std::to_string(n) + ")" : "");
        }
        for (auto const& v: r.violations) {
          j["violations"].push_back({{"path", v.path}, {"message", v.message}});
          text += "\nviolation at " + v.path + ": " + v.message;
        }
        emit(j, text);
        return r.ok ? 0 : 1;
      }

      auto write_or_print(json const& j) -> void {
        if (a_.file.empty()) {
          out_ << j.dump(2) << "\n";
          return;
        }
        std::ofstream f(a_.file);
        if (!f) throw Error("cannot write '" + a_.file + "'");
        f << j.dump(2) << "\n";
        out_ << "wrote " << a_.file << "\n";
      }

      auto derive_cmd() -> int {
        if (!a_.rule.empty()) {
          std::vector<Formula> args;
          for (auto const& t: a_.formulas) args.push_back(parse(t));
          auto d = derived_rule(a_.rule, args);
          write_or_print(proof_to_json(d, LogicId::Lqd));
          return 0;
        }
        auto l = logic();
        if (!a_.rhs.empty()) {
          if (a_.lhs.size() != 1) throw InputError("entailment derivations take one --lhs and one --rhs");
          auto ctx = context({a_.lhs[0], a_.rhs});
          try {
            write_or_print(proof_to_json(derive_entailment(parse(a_.lhs[0], ctx), parse(a_.rhs, ctx), l, ctx), l));
            return 0;
          } catch (NotEntailed const& e) {
            emit({{"entails", false}, {"counterexample", format_team(e.counterexample(), ctx)}},
                 "false\ncounterexample " + format_team(e.counterexample(), ctx));
            return 1;
          }
        }
        auto ctx = context({formula()});
        auto r = derive_normal_form(parse(formula(), ctx), l, ctx);
        write_or_print({{"normal_form", to_string(r.nf.formula)}, {"forward", proof_to_json(r.forward, l)},
                        {"backward", proof_to_json(r.backward, l)}});
        return 0;
      }

      auto audit_cmd(bool seed_given) -> int {
        if (!seed_given) throw InputError("--seed is required");
        AuditOptions o;
        o.seed = a_.seed;
        o.samples = a_.samples;
        o.ctx = a_.props_given ? context({}) : PropContext::parse("p q");
        o.check.or_elim_requires_gor_free = !a_.unchecked_or_elim;
        std::vector<LogicId> logics;
        if (a_.logic.empty()) logics.assign(std::begin(all_logics), std::end(all_logics));
        else logics.push_back(logic());
        json j = json::array();
        std::string text = "logic,rule,generated,accepted,nonvacuous,counterexamples,first_counterexample";
        bool ok = true;
        for (auto l: logics)
          for (auto const& r: audit(l, o)) {
            ok &= r.passed(o.samples);
            auto cx = r.first_counterexample.value_or("");
            j.push_back({{"logic", logic_name(l)}, {"rule", rule_name(r.rule)}, {"generated", r.generated}, {"accepted", r.accepted},
                         {"nonvacuous", r.nonvacuous}, {"counterexamples", r.counterexamples}, {"first_counterexample", cx}});
            text += "\n" + std::string(logic_name(l)) + "," + rule_name(r.rule) + "," + std::to_string(r.generated) + ","
                    + std::to_string(r.accepted) + "," + std::to_string(r.nonvacuous) + "," + std::to_string(r.counterexamples) + ",\""
                    + cx + "\"";
          }
        emit(j, text);
        return ok ? 0 : 1;
      }

      auto oracle_counts_cmd() -> int {
        if (a_.max_props > 2) throw InputError("--max-props is at most 2");
        json j = json::array();
        std::string text = "kind,props,count";
        for (auto k: {ClosureKind::Downward, ClosureKind::QuasiDownward, ClosureKind::Upward, ClosureKind::QuasiUpward})
          for (std::size_t n = 0; n <= a_.max_props; n++) {
            std::vector<std::string> syms;
            for (std::size_t i = 0; i < n; i++) syms.push_back("p" + std::to_string(i + 1));
            auto count = enumerate_closed_properties(PropContext(syms), k).size();
            j.push_back({{"kind", closure_kind_name(k)}, {"props", n}, {"count", count}});
            text += "\n" + std::string(closure_kind_name(k)) + "," + std::to_string(n) + "," + std::to_string(count);
          }
        emit(j, text);
        return 0;
      }

      auto oracle_agree_cmd(bool seed_given) -> int {
        if (!seed_given) throw InputError("--seed is required");
        GenConfig cfg;
        cfg.seed = a_.seed;
        cfg.ctx = a_.props_given ? context({}) : PropContext::parse("p q");
        cfg.max_depth = a_.depth;
        FormulaGenerator gen(cfg);
        auto teams = enumerate_teams(cfg.ctx);
        json j = json::array();
        std::string text = "formula,team,eval,reference";
        for (std::size_t i = 0; i < a_.samples; i++) {
          auto f = gen.next_mixed();
          for (auto t: teams) {
            bool x = eval(t, f, cfg.ctx), y = reference_eval(t, f, cfg.ctx);
            if (x == y) continue;
            j.push_back({{"formula", to_string(f)}, {"team", format_team(t, cfg.ctx)}, {"eval", x}, {"reference", y}});
            text += "\n\"" + to_string(f) + "\",\"" + format_team(t, cfg.ctx) + "\"," + (x ? "true" : "false") + "," + (y ? "true" : "false");
          }
        }
        emit(j, text);
        return j.empty() ? 0 : 1;
      }

      auto oracle_corpus_cmd(bool seed_given) -> int {
        if (!seed_given) throw InputError("--seed is required");
        GenConfig cfg;
        cfg.seed = a_.seed;
        cfg.ctx = a_.props_given ? context({}) : PropContext::parse("p q");
        cfg.max_depth = a_.depth;
        FormulaGenerator gen(cfg);
        std::set<std::string> seen;
        for (std::size_t tries = 0; seen.size() < a_.samples && tries < 100 * a_.samples; tries++) {
          auto text = to_string(gen.next_mixed());
          if (seen.insert(text).second) out_ << text << "\n";
        }
        if (seen.size() < a_.samples) throw Error("only " + std::to_string(seen.size()) + " distinct formulas at this depth");
        return 0;
      }

    private:
      Args const& a_;
      std::ostream& out_;
    };

  }

  inline auto run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) -> int {
    detail::Args a;
    CLI::App app{"Team logics workbench: evaluation, closure, normal forms and natural deduction", "teamlogic"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    auto props = [&](CLI::App* c) {
      c->add_option("--props", a.props, "Proposition symbols in order, e.g. \"p q\" (default: symbols of the formulas, sorted)");
    };
    auto json_flag = [&](CLI::App* c) { c->add_flag("--json", a.json, "Machine-readable output"); };
    auto logics = CLI::IsMember({"qu", "u", "qd", "d", "Lqu", "Lu", "Lqd", "Ld"});
    auto kinds = CLI::IsMember({"d", "qd", "u", "qu", "union", "empty", "full"});

    auto* eval_c = app.add_subcommand("eval", "Does the team satisfy the formula?");
    props(eval_c);
    eval_c->add_option("--team", a.team, "Team literal: \"10,01\", EMPTY or FULL")->required();
    eval_c->add_option("--formula", a.formulas, "Formula")->required()->allow_extra_args(false);
    json_flag(eval_c);

    auto* denote_c = app.add_subcommand("denote", "All teams satisfying the formula");
    props(denote_c);
    denote_c->add_option("--formula", a.formulas, "Formula")->required()->allow_extra_args(false);
    json_flag(denote_c);

    auto* closure_c = app.add_subcommand("closure", "Closure properties of a team property or of a formula's denotation");
    props(closure_c);
    closure_c->add_option("--property", a.property, "Team property: \"EMPTY;10;FULL\" or a JSON array");
    closure_c->add_option("--formula", a.formulas, "Formula whose denotation is tested")->allow_extra_args(false);
    closure_c->add_option("--kind", a.kind, "Test only this kind")->check(kinds);
    json_flag(closure_c);

    auto* close_c = app.add_subcommand("close", "Close a team property under a kind");
    props(close_c);
    close_c->add_option("--property", a.property, "Team property");
    close_c->add_option("--formula", a.formulas, "Formula whose denotation is closed")->allow_extra_args(false);
    close_c->add_option("--kind", a.kind, "d, qd, u or qu")->required()->check(CLI::IsMember({"d", "qd", "u", "qu"}));
    json_flag(close_c);

    auto* synth_c = app.add_subcommand("synth", "A normal form defining a closed team property");
    props(synth_c);
    synth_c->add_option("--property", a.property, "Team property")->required();
    synth_c->add_option("--logic", a.logic, "qu, u, qd or d")->required()->check(logics);
    synth_c->add_flag("--close", a.close_first, "Accept any property and define its closure");
    json_flag(synth_c);

    auto* norm_c = app.add_subcommand("normalize", "The normal form equivalent to a formula");
    props(norm_c);
    norm_c->add_option("--formula", a.formulas, "Formula")->required()->allow_extra_args(false);
    norm_c->add_option("--logic", a.logic, "qu, u, qd or d")->required()->check(logics);
    json_flag(norm_c);

    auto* entail_c = app.add_subcommand("entail", "Semantic entailment, with a counterexample team when it fails");
    props(entail_c);
    entail_c->add_option("--lhs", a.lhs, "Premise (repeatable; none means every team)")->allow_extra_args(false);
    entail_c->add_option("--rhs", a.rhs, "Conclusion")->required();
    json_flag(entail_c);

    auto* check_c = app.add_subcommand("check-proof", "Check a proof file");
    check_c->add_option("--file", a.file, "Proof JSON")->required();
    check_c->add_option("--logic", a.logic, "Rule system (default: the file's logic)")->check(logics);
    json_flag(check_c);

    auto* derive_c = app.add_subcommand("derive", "Build a derivation: normal form, entailment or derived rule");
    props(derive_c);
    derive_c->add_option("--logic", a.logic, "qu, u, qd or d")->check(logics);
    derive_c->add_option("--formula", a.formulas, "Formula to normalize, or the derived rule's arguments (repeatable)")->allow_extra_args(false);
    derive_c->add_option("--lhs", a.lhs, "Premise of an entailment")->allow_extra_args(false);
    derive_c->add_option("--rhs", a.rhs, "Conclusion of an entailment");
    derive_c->add_option("--rule", a.rule, "Derived rule name (aug, weaken, and-or-distr, ...)");
    derive_c->add_option("--file", a.file, "Write the JSON here instead of stdout");
    json_flag(derive_c);

    auto* audit_c = app.add_subcommand("audit", "Soundness audit of the rule systems on random instances");
    props(audit_c);
    audit_c->add_option("--logic", a.logic, "Only this system")->check(logics);
    auto* audit_seed = audit_c->add_option("--seed", a.seed, "Random seed");
    audit_c->add_option("--samples", a.samples, "Accepted instances per rule")->capture_default_str();
    audit_c->add_flag("--unchecked-or-elim", a.unchecked_or_elim, "Drop the global-disjunction side condition of orE");
    json_flag(audit_c);

    auto* oracle_c = app.add_subcommand("oracle", "Brute-force oracle reports (CSV)");
    oracle_c->require_subcommand(1);
    auto* counts_c = oracle_c->add_subcommand("counts", "Number of closed team properties per kind and context size");
    counts_c->add_option("--max-props", a.max_props, "Largest context size (at most 2)")->capture_default_str();
    json_flag(counts_c);
    auto* agree_c = oracle_c->add_subcommand("agree", "Disagreements between eval and the reference evaluator");
    props(agree_c);
    auto* agree_seed = agree_c->add_option("--seed", a.seed, "Random seed");
    agree_c->add_option("--samples", a.samples, "Number of random formulas")->capture_default_str();
    agree_c->add_option("--depth", a.depth, "Maximal formula depth")->capture_default_str();
    json_flag(agree_c);
    auto* corpus_c = oracle_c->add_subcommand("corpus", "Print a seeded corpus of distinct random formulas, one per line");
    props(corpus_c);
    auto* corpus_seed = corpus_c->add_option("--seed", a.seed, "Random seed");
    corpus_c->add_option("--samples", a.samples, "Number of formulas")->capture_default_str();
    corpus_c->add_option("--depth", a.depth, "Maximal formula depth")->capture_default_str();

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (CLI::ParseError const& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }

    a.props_given = false;
    for (auto* c: {eval_c, denote_c, closure_c, close_c, synth_c, norm_c, entail_c, derive_c, audit_c, agree_c, corpus_c})
      if (c->parsed() && c->count("--props") > 0) a.props_given = true;

    detail::Runner r(a, out);
    try {
      if (eval_c->parsed()) return r.eval_cmd();
      if (denote_c->parsed()) return r.denote_cmd();
      if (closure_c->parsed()) return r.closure_cmd();
      if (close_c->parsed()) return r.close_cmd();
      if (synth_c->parsed()) return r.synth_cmd();
      if (norm_c->parsed()) return r.normalize_cmd();
      if (entail_c->parsed()) return r.entail_cmd();
      if (check_c->parsed()) return r.check_proof_cmd();
      if (derive_c->parsed()) return r.derive_cmd();
      if (audit_c->parsed()) return r.audit_cmd(audit_seed->count() > 0);
      if (counts_c->parsed()) return r.oracle_counts_cmd();
      if (agree_c->parsed()) return r.oracle_agree_cmd(agree_seed->count() > 0);
      if (corpus_c->parsed()) return r.oracle_corpus_cmd(corpus_seed->count() > 0);
    } catch (NotDerivable const& e) {
      err << "not derivable: " << e.what() << "\n";
      return 1;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    return 2;
  }

}

#endif // TEAMLOGIC_CLI_HPP
