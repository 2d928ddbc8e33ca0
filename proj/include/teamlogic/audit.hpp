// Soundness audit of the rule systems on random one-step instances.
//
// An instance is a single rule application whose premises are assumption leaves. It passes when
// for every background Gamma:
//   Gamma, H_i |= P_i for each premise P_i with its discharged hypotheses H_i
//   implies Gamma |= C.
// Gamma is empty, the hypothesis-free premises, or a random formula of the logic.

#ifndef TEAMLOGIC_AUDIT_HPP
#define TEAMLOGIC_AUDIT_HPP

#include <optional>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "proof.hpp"
#include "semantics.hpp"
#include "syntax.hpp"

namespace teamlogic {

  struct RuleInstance {
    RuleId rule = RuleId::TopI;
    Formula conclusion = Formula::top();
    std::vector<Formula> premises;
    std::vector<std::vector<Formula>> hypotheses; // per premise
    std::vector<Formula> gamma;

    // The one-step derivation, with discharges as the rule expects them.
    auto derivation() const -> Derivation {
      std::vector<Derivation> ps;
      std::vector<Discharge> ds;
      int tag = 0;
      for (std::size_t i = 0; i < premises.size(); i++) {
        ps.push_back(Derivation::assume(premises[i]));
        for (auto const& h: hypotheses[i]) ds.push_back({"a" + std::to_string(++tag), h});
      }
      return Derivation::infer(rule, conclusion, std::move(ps), std::move(ds));
    }

    auto describe() const -> std::string {
      std::string s = std::string(rule_name(rule)) + ":";
      for (std::size_t i = 0; i < premises.size(); i++) {
        s += " [";
        for (std::size_t k = 0; k < hypotheses[i].size(); k++) s += (k ? ", " : "") + to_string(hypotheses[i][k]);
        s += "] " + to_string(premises[i]) + " ;";
      }
      s += " |- " + to_string(conclusion);
      if (!gamma.empty()) {
        s += " under";
        for (auto const& g: gamma) s += " " + to_string(g) + ";";
      }
      return s;
    }
  };

  struct AuditOptions {
    std::uint64_t seed = 1;
    std::size_t samples = 500;     // accepted instances per rule
    std::size_t max_attempts = 50; // per requested sample
    PropContext ctx = PropContext::parse("p q");
    CheckOptions check;
    SemanticsOptions semantics;
  };

  struct RuleAudit {
    LogicId logic = LogicId::Lqu;
    RuleId rule = RuleId::TopI;
    std::size_t generated = 0;
    std::size_t accepted = 0;
    std::size_t nonvacuous = 0; // accepted instances whose premises all held
    std::size_t counterexamples = 0;
    std::optional<std::string> first_counterexample;

    auto passed(std::size_t samples) const -> bool { return accepted >= samples && counterexamples == 0; }
  };

  // Semantic contract of an instance; nullopt when it holds, else the offending team.
  inline auto instance_counterexample(RuleInstance const& in, PropContext const& ctx, SemanticsOptions const& opts,
                                      bool* vacuous = nullptr) -> std::optional<Team> {
    for (std::size_t i = 0; i < in.premises.size(); i++) {
      auto ctxf = in.gamma;
      ctxf.insert(ctxf.end(), in.hypotheses[i].begin(), in.hypotheses[i].end());
      if (!entails(ctxf, in.premises[i], ctx, opts)) {
        if (vacuous) *vacuous = true;
        return std::nullopt;
      }
    }
    if (vacuous) *vacuous = false;
    return entailment_counterexample(in.gamma, in.conclusion, ctx, opts);
  }

  namespace detail {

    class InstanceGenerator {
    public:
      InstanceGenerator(LogicId logic, AuditOptions const& o): logic_(logic), ctx_(o.ctx), any_(config(o, 0, false, false)),
        plain_(config(o, 1, true, false)), flat_(config(o, 2, false, true)), atoms_(config(o, 3, false, false)) {}

      auto next(RuleId r) -> std::optional<RuleInstance> {
        RuleInstance in;
        in.rule = r;
        auto phi = any(), psi = any();
        auto so = [](Formula a, Formula b) { return Formula::split_or(std::move(a), std::move(b)); };
        auto go = [](Formula a, Formula b) { return Formula::global_or(std::move(a), std::move(b)); };
        auto set = [&](Formula c, std::vector<Formula> ps, std::vector<std::vector<Formula>> hs = {}) {
          in.conclusion = std::move(c);
          in.premises = std::move(ps);
          hs.resize(in.premises.size());
          in.hypotheses = std::move(hs);
        };
        bool downward = !is_upward_logic(logic_);
        switch (r) {
          case RuleId::BotE:
            if (logic_ == LogicId::Lqu) { set(phi, {Formula::bot()}); break; }
            {
              auto q = TermSeq{Term::prop(symbol())};
              auto c = logic_ == LogicId::Lqd ? plain_.next(logic_) : phi;
              set(c, {Formula::incl(q, {Term::top()}, flavor()), Formula::incl(q, {Term::bot()}, flavor())});
            }
            break;
          case RuleId::TopI: set(logic_ == LogicId::Lu ? Formula::top() : Formula::incl({}, {}, flavor()), {}); break;
          case RuleId::AndI: set(Formula::conj(phi, psi), {phi, psi}); break;
          case RuleId::AndE: set(coin() ? phi : psi, {Formula::conj(phi, psi)}); break;
          case RuleId::GorI: set(coin() ? go(phi, psi) : go(psi, phi), {phi}); break;
          case RuleId::OrI: {
            auto side = logic_ == LogicId::Lqd ? plain_.next(logic_) : psi;
            set(coin() ? so(phi, side) : so(side, phi), {phi});
            break;
          }
          case RuleId::GorE: case RuleId::OrE: {
            auto major = r == RuleId::GorE ? go(phi, psi) : so(phi, psi);
            Formula chi = any();
            switch (pick(4)) {
              case 0: chi = go(phi, psi); break;
              case 1: if (downward) chi = so(phi, psi); break;
              case 2: if (downward) chi = so(psi, phi); break;
              default: chi = r == RuleId::OrE && pick(2) == 0 ? flat_.next(logic_) : chi; break;
            }
            set(chi, {major, chi, chi}, {{}, {phi}, {psi}});
            break;
          }
          case RuleId::Proj: {
            auto a = long_atom(1);
            if (!a) return std::nullopt;
            auto l = a->lhs(), rr = a->rhs();
            l.pop_back();
            rr.pop_back();
            set(Formula::incl(l, rr, flavor()), {*a});
            break;
          }
          case RuleId::Perm: {
            auto a = long_atom(0);
            if (!a) return std::nullopt;
            auto n = a->lhs().size();
            auto i = any_.uniform(0, n), j = any_.uniform(i, n);
            auto rot = [&](TermSeq s) {
              std::rotate(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(j), s.end());
              return s;
            };
            set(Formula::incl(rot(a->lhs()), rot(a->rhs()), flavor()), {*a});
            break;
          }
          case RuleId::Ext: {
            auto a = atoms_.atom(logic_);
            if (downward) {
              auto q = TermSeq{Term::prop(symbol())};
              auto lhs = concat(a.lhs(), q);
              set(so(Formula::incl(lhs, concat(a.rhs(), {Term::top()}), flavor()), Formula::incl(lhs, concat(a.rhs(), {Term::bot()}), flavor())),
                  {a});
              break;
            }
            std::vector<std::string> missing;
            for (auto const& s: ctx_.props())
              if (std::none_of(a.rhs().begin(), a.rhs().end(), [&](Term const& t) { return t.name == s; })) missing.push_back(s);
            if (missing.empty()) return std::nullopt;
            auto rhs = concat(a.rhs(), {Term::prop(missing[any_.uniform(0, missing.size() - 1)])});
            auto x1 = Formula::incl(concat(a.lhs(), {Term::top()}), rhs, flavor());
            auto x0 = Formula::incl(concat(a.lhs(), {Term::bot()}), rhs, flavor());
            auto chi = coin() ? go(x1, x0) : any();
            set(chi, {a, chi, chi}, {{}, {x1}, {x0}});
            break;
          }
          case RuleId::BulletI: set(Formula::full(), {so(phi, Formula::full())}); break;
          case RuleId::BulletE: set(phi, {Formula::full()}); break;
          case RuleId::BotOrE: {
            Formula z = Formula::bot();
            if (logic_ == LogicId::Lqd) {
              auto q = Term::prop(symbol());
              z = Formula::incl({q, q}, {Term::top(), Term::bot()}, flavor());
            }
            set(phi, {so(phi, z)});
            break;
          }
          case RuleId::OrCom: set(so(psi, phi), {so(phi, psi)}); break;
          case RuleId::OrMon: {
            auto theta = any();
            Formula chi = theta;
            switch (pick(3)) {
              case 0: chi = so(psi, theta); break;
              case 1: chi = go(psi, theta); break;
              default: break;
            }
            set(so(phi, chi), {so(phi, psi), chi}, {{}, {psi}});
            break;
          }
          case RuleId::OrGorDistr: {
            auto theta = any();
            set(go(so(phi, psi), so(phi, theta)), {so(phi, go(psi, theta))});
            break;
          }
        }
        // background
        switch (pick(4)) {
          case 0: break;
          case 1: in.gamma = {any()}; break;
          default:
            for (std::size_t i = 0; i < in.premises.size(); i++)
              if (in.hypotheses[i].empty()) in.gamma.push_back(in.premises[i]);
            break;
        }
        return in;
      }

    private:
      static auto config(AuditOptions const& o, std::uint64_t k, bool bullet_free, bool gor_free) -> GenConfig {
        GenConfig c;
        c.seed = o.seed * 1000003 + k;
        c.ctx = o.ctx;
        c.max_depth = 2;
        c.bullet_free = bullet_free;
        c.gor_free = gor_free;
        return c;
      }

      auto flavor() const -> InclFlavor { return atom_flavor(logic_); }
      auto any() -> Formula { return any_.next(logic_); }
      auto coin() -> bool { return any_.uniform(0, 1) == 1; }
      auto pick(std::size_t n) -> std::size_t { return any_.uniform(0, n - 1); }
      auto symbol() -> std::string { return ctx_.symbol(any_.uniform(0, ctx_.size() - 1)); }

      auto long_atom(std::size_t min_len) -> std::optional<Formula> {
        for (int k = 0; k < 20; k++) {
          auto a = atoms_.atom(logic_);
          if (a.lhs().size() >= min_len) return a;
        }
        return std::nullopt;
      }

      LogicId logic_;
      PropContext ctx_;
      FormulaGenerator any_, plain_, flat_, atoms_;
    };

  }

  inline auto audit_rule(LogicId logic, RuleId rule, AuditOptions const& o) -> RuleAudit {
    if (o.ctx.size() == 0) throw PreconditionError("the audit needs at least one proposition");
    RuleAudit out;
    out.logic = logic;
    out.rule = rule;
    auto sys = RuleSystem::of(logic);
    AuditOptions local = o;
    local.seed = o.seed * 131 + static_cast<std::uint64_t>(rule) * 7 + static_cast<std::uint64_t>(logic);
    detail::InstanceGenerator gen(logic, local);
    std::size_t budget = o.samples * o.max_attempts;
    while (out.accepted < o.samples && out.generated < budget) {
      auto in = gen.next(rule);
      out.generated++;
      if (!in || !check(in->derivation(), sys, o.check).ok) continue;
      out.accepted++;
      bool vacuous = true;
      auto cx = instance_counterexample(*in, o.ctx, o.semantics, &vacuous);
      if (!vacuous) out.nonvacuous++;
      if (cx) {
        if (out.counterexamples++ == 0) out.first_counterexample = in->describe() + " fails on " + format_team(*cx, o.ctx);
      }
    }
    return out;
  }

  inline auto audit(LogicId logic, AuditOptions const& o) -> std::vector<RuleAudit> {
    std::vector<RuleAudit> out;
    for (auto r: RuleSystem::of(logic).rules) out.push_back(audit_rule(logic, r, o));
    return out;
  }

}

#endif // TEAMLOGIC_AUDIT_HPP
