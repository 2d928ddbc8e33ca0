// Characteristic formulas of teams and the normal forms built from them.
//
//   psi'_T  = AND_{v in T} x^v <= p      (Lqu)      psi*_T  = AND x^v <=! p   (Lu)
//   theta'_T = OR_{v in T} p <=* x^v     (Lqd)      theta*_T = OR p <= x^v    (Ld)
//
// with x^v the constant signature of v and p the whole context in order. Normal forms are global
// disjunctions of these over a team property.

#ifndef TEAMLOGIC_NORMAL_FORM_HPP
#define TEAMLOGIC_NORMAL_FORM_HPP

#include <optional>
#include <vector>

#include "context.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "membership.hpp"
#include "semantics.hpp"
#include "syntax.hpp"
#include "team.hpp"

namespace teamlogic {

  inline auto signature(Valuation v, PropContext const& ctx) -> TermSeq {
    TermSeq out;
    for (std::size_t i = 0; i < ctx.size(); i++) out.push_back(Term::constant(ctx.value(v, i)));
    return out;
  }

  inline auto context_sequence(PropContext const& ctx) -> TermSeq {
    TermSeq out;
    for (auto const& s: ctx.props()) out.push_back(Term::prop(s));
    return out;
  }

  inline auto psi_prime(Team t, PropContext const& ctx) -> Formula {
    std::vector<Formula> xs;
    for (auto v: t.members()) xs.push_back(Formula::incl(signature(v, ctx), context_sequence(ctx)));
    return Formula::fold(Connective::And, xs, Formula::incl({}, {}));
  }

  inline auto psi_star(Team t, PropContext const& ctx) -> Formula {
    std::vector<Formula> xs;
    for (auto v: t.members()) xs.push_back(Formula::incl(signature(v, ctx), context_sequence(ctx), InclFlavor::NonEmpty));
    return Formula::fold(Connective::And, xs, Formula::top());
  }

  // theta'_{} is the atom p1 p <=* 1 0 ... 0, which only the empty and the full team satisfy.
  inline auto theta_prime_empty(PropContext const& ctx) -> Formula {
    if (ctx.size() == 0) throw PreconditionError("theta' of the empty team needs at least one proposition");
    TermSeq lhs{Term::prop(ctx.symbol(0))}, rhs{Term::top()};
    for (auto const& t: context_sequence(ctx)) {
      lhs.push_back(t);
      rhs.push_back(Term::bot());
    }
    return Formula::incl(lhs, rhs, InclFlavor::Full);
  }

  inline auto theta_prime(Team t, PropContext const& ctx) -> Formula {
    if (t.is_empty()) return theta_prime_empty(ctx);
    std::vector<Formula> xs;
    for (auto v: t.members()) xs.push_back(Formula::incl(context_sequence(ctx), signature(v, ctx), InclFlavor::Full));
    return Formula::fold(Connective::SplitOr, xs, Formula::bot());
  }

  inline auto theta_star(Team t, PropContext const& ctx) -> Formula {
    std::vector<Formula> xs;
    for (auto v: t.members()) xs.push_back(Formula::incl(context_sequence(ctx), signature(v, ctx)));
    return Formula::fold(Connective::SplitOr, xs, Formula::bot());
  }

  inline auto characteristic(Team t, LogicId logic, PropContext const& ctx) -> Formula {
    switch (logic) {
      case LogicId::Lqu: return psi_prime(t, ctx);
      case LogicId::Lu: return psi_star(t, ctx);
      case LogicId::Lqd: return theta_prime(t, ctx);
      case LogicId::Ld: return theta_star(t, ctx);
    }
    return Formula::bot();
  }

  struct NormalForm {
    enum class Special { None, Bot, Full };

    LogicId logic = LogicId::Lqu;
    Special special = Special::None;
    std::vector<Team> teams; // disjunct index, ascending by bitmask
    Formula formula = Formula::bot();

    // The indexing property: the disjunct teams, plus the empty team for Lqu and the full team
    // for Lqd (the teams the special forms stand for).
    auto index(std::size_t num_props) const -> TeamProperty {
      TeamProperty p(num_props);
      for (auto t: teams) p.insert(t);
      if (logic == LogicId::Lqu) p.insert(Team::empty(num_props));
      if (logic == LogicId::Lqd) p.insert(Team::full(num_props));
      return p;
    }
  };

  // The global disjunction of characteristic formulas over `disjuncts`; an empty index yields the
  // special form bot (Lqu) or full (Lqd) and is an error for Lu and Ld.
  inline auto make_normal_form(LogicId logic, TeamProperty const& disjuncts, PropContext const& ctx) -> NormalForm {
    NormalForm nf;
    nf.logic = logic;
    nf.teams = disjuncts.teams();
    if (nf.teams.empty()) {
      if (logic == LogicId::Lqu) { nf.special = NormalForm::Special::Bot; nf.formula = Formula::bot(); return nf; }
      if (logic == LogicId::Lqd) { nf.special = NormalForm::Special::Full; nf.formula = Formula::full(); return nf; }
      throw PreconditionError("a normal form needs a nonempty team property");
    }
    std::vector<Formula> xs;
    for (auto t: nf.teams) xs.push_back(characteristic(t, logic, ctx));
    nf.formula = Formula::fold(Connective::GlobalOr, xs, Formula::bot());
    return nf;
  }

  namespace detail {

    // The teams a logic's normal form is indexed by, given C: drop the empty team for Lqu and
    // the full team for Lqd.
    inline auto disjunct_index(TeamProperty c, LogicId logic) -> TeamProperty {
      if (logic == LogicId::Lqu) c.erase(Team::empty(c.num_props()));
      if (logic == LogicId::Lqd) c.erase(Team::full(c.num_props()));
      return c;
    }

  }

  // A formula of `logic` whose denotation is exactly C, for C with the logic's closure kind.
  inline auto synthesize(TeamProperty const& c, LogicId logic, PropContext const& ctx) -> NormalForm {
    if (c.num_props() != ctx.size()) throw ContextError("team property and context differ in size");
    if (c.is_empty()) throw PreconditionError("cannot synthesize the empty team property");
    auto kind = kind_of(logic);
    if (!check_closure(c, kind))
      throw PreconditionError("team property is not " + closure_kind_long_name(kind) + "; use synthesize_closure to close it");
    return make_normal_form(logic, detail::disjunct_index(c, logic), ctx);
  }

  // The normal form indexed by C itself, which denotes the closure of C under the logic's kind.
  inline auto synthesize_closure(TeamProperty const& c, LogicId logic, PropContext const& ctx) -> NormalForm {
    if (c.num_props() != ctx.size()) throw ContextError("team property and context differ in size");
    if (c.is_empty()) throw PreconditionError("cannot synthesize the empty team property");
    return make_normal_form(logic, detail::disjunct_index(c, logic), ctx);
  }

  inline auto normalize_semantic(Formula const& f, LogicId logic, PropContext const& ctx,
                                 SemanticsOptions const& opts = {}) -> NormalForm {
    if (auto v = membership_violation(f, logic))
      throw PreconditionError("formula is not in " + std::string(logic_name(logic)) + ": '" + to_string(v->subterm)
                              + "': " + v->reason);
    return synthesize(denotation(f, ctx, opts), logic, ctx);
  }

  namespace detail {

    inline auto signature_valuation(TermSeq const& s) -> std::optional<Valuation> {
      Valuation v = 0;
      for (auto const& t: s) {
        if (!t.is_constant()) return std::nullopt;
        v = (v << 1) | static_cast<Valuation>(t.kind == Term::Kind::True);
      }
      return v;
    }

    // One characteristic-formula disjunct; returns its team.
    inline auto recognize_disjunct(Formula const& d, LogicId logic, PropContext const& ctx) -> std::optional<Team> {
      std::size_t n = ctx.size();
      auto p = context_sequence(ctx);
      if (logic == LogicId::Lu && d.is(Connective::Top)) return Team::empty(n);
      if (logic == LogicId::Ld && d.is(Connective::Bot)) return Team::empty(n);
      if (logic == LogicId::Lqd && n > 0 && d == theta_prime_empty(ctx)) return Team::empty(n);
      bool upward = is_upward_logic(logic);
      Connective joint = upward ? Connective::And : Connective::SplitOr;
      Team t = Team::empty(n);
      for (auto const& a: flatten(d, joint)) {
        if (!a.is(Connective::Incl) || a.flavor() != atom_flavor(logic)) return std::nullopt;
        if ((upward ? a.rhs() : a.lhs()) != p) return std::nullopt;
        auto v = signature_valuation(upward ? a.lhs() : a.rhs());
        if (!v) return std::nullopt;
        t = t | Team::singleton(*v, n);
      }
      return t;
    }

  }

  // The index property when f has the shape of one of the logic's normal forms (disjunct order is
  // free), see NormalForm::index.
  inline auto is_normal_form(Formula const& f, LogicId logic, PropContext const& ctx) -> std::optional<TeamProperty> {
    std::size_t n = ctx.size();
    if (n > TeamProperty::max_props) return std::nullopt;
    TeamProperty out(n);
    if (logic == LogicId::Lqu && f.is(Connective::Bot)) { out.insert(Team::empty(n)); return out; }
    if (logic == LogicId::Lqd && f.is(Connective::Full)) { out.insert(Team::full(n)); return out; }
    for (auto const& d: flatten(f, Connective::GlobalOr)) {
      auto t = detail::recognize_disjunct(d, logic, ctx);
      if (!t) return std::nullopt;
      out.insert(*t);
    }
    if (logic == LogicId::Lqu) out.insert(Team::empty(n));
    if (logic == LogicId::Lqd) out.insert(Team::full(n));
    return out;
  }

}

#endif // TEAMLOGIC_NORMAL_FORM_HPP
