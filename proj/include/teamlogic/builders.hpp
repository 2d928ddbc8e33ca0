// Constructive derivations: provable equivalence with a normal form, entailment between formulas
// of one logic, and the derived rules of the Lqd system.
//
// Every derivation is built from the primitive rules of the logic's system only, so the checker
// can validate it. Subderivations are shared, not copied.
//
// Normal-form index per logic, C being the formula's denotation:
//   Lqu  C \ {empty}   (empty index: bot)
//   Lu   C
//   Ld   C
//   Lqd  the denotation with the full-team clause switched off (full never holds, <=* reads as <=);
//        empty index: full. This index may contain the full team itself, since theta'_F is what
//        the atom case produces for atoms every valuation satisfies.

#ifndef TEAMLOGIC_BUILDERS_HPP
#define TEAMLOGIC_BUILDERS_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "context.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "membership.hpp"
#include "normal_form.hpp"
#include "proof.hpp"
#include "semantics.hpp"
#include "team.hpp"

namespace teamlogic {

  // The premise does not entail the conclusion; `counterexample` satisfies one but not the other.
  class NotEntailed: public PreconditionError {
  public:
    NotEntailed(std::string const& msg, Team counterexample): PreconditionError(msg), counterexample_(counterexample) {}
    auto counterexample() const noexcept -> Team { return counterexample_; }
  private:
    Team counterexample_;
  };

  // Entailed, but only because every formula holds on the full team; the rules cannot derive it.
  class NotDerivable: public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
  };

  struct NormalFormDerivation {
    NormalForm nf;
    Derivation forward = Derivation::assume(Formula::top());  // f |- Psi
    Derivation backward = Derivation::assume(Formula::top()); // Psi |- f
  };

  class ProofBuilder {
  public:
    ProofBuilder(LogicId logic, PropContext ctx, SemanticsOptions opts = {}): logic_(logic), ctx_(std::move(ctx)), opts_(opts) {
      if (logic_ == LogicId::Lqd) opts_.ignore_full_clause = true;
      n_ = ctx_.size();
    }

    auto normal_form(Formula const& f) -> NormalFormDerivation {
      require_member(f);
      require_props();
      auto const& fam = family(f);
      NormalFormDerivation out;
      out.nf.logic = logic_;
      out.nf.teams = fam.teams;
      out.nf.formula = fam.formula;
      if (fam.special) out.nf.special = logic_ == LogicId::Lqu ? NormalForm::Special::Bot : NormalForm::Special::Full;
      out.forward = forward(Derivation::assume(f), f);
      out.backward = backward(Derivation::assume(fam.formula), f);
      return out;
    }

    // gamma |- f. Throws NotEntailed, or NotDerivable for the Lqd pairs that hold only through
    // the full team.
    auto entailment(Formula const& gamma, Formula const& f) -> Derivation {
      require_member(gamma);
      require_member(f);
      require_props();
      SemanticsOptions plain = opts_;
      plain.ignore_full_clause = false;
      if (auto t = entailment_counterexample({gamma}, f, ctx_, plain))
        throw NotEntailed("not entailed: the team " + format_team(*t, ctx_) + " satisfies '" + to_string(gamma) + "' but not '"
                              + to_string(f) + "'",
                          *t);
      if (gamma == f) return Derivation::assume(gamma);
      auto d = forward(Derivation::assume(gamma), gamma);
      d = dominate(d, family(gamma), family(f));
      return backward(d, f);
    }

    // A derived rule of the Lqd system, instantiated at `args`:
    //   bullet-or        [phi]            phi | full |- full
    //   bullet-or-rev    [phi]            full |- phi | full
    //   bullet-gor       [phi]            phi || full |- phi
    //   bullet-gor-rev   [phi]            phi |- phi || full
    //   aug              [p<=*x, q<=*y]   p <=* x, q <=* y |- p q <=* x y
    //   aug-rev          [p<=*x, q<=*y]   p q <=* x y |- p <=* x & q <=* y
    //   weaken           [p<=*x, q<=*y]   p q <=* x y |- p q q <=* x y y
    //   weaken-rev       [p<=*x, q<=*y]   p q q <=* x y y |- p q <=* x y
    //   or-gor-or-distr  [phi, psi, chi]  (phi | psi) || (phi | chi) |- phi | (psi || chi)
    //   and-gor-distr    [phi, psi, chi]  phi & (psi || chi) |- (phi & psi) || (phi & chi)
    //   and-gor-distr-rev
    //   and-or-distr     [a, b1, b2]      a & (b1 | b2) |- (a & b1) | (a & b2), all full- and gor-free
    //   and-or-distr-rev
    auto derived(std::string const& name, std::vector<Formula> const& args) -> Derivation {
      if (logic_ != LogicId::Lqd) throw PreconditionError("derived rules belong to the Lqd system");
      for (auto const& a: args) require_member(a);
      auto arity = [&](std::size_t k) {
        if (args.size() != k) throw PreconditionError("derived rule '" + name + "' takes " + std::to_string(k) + " formula(s)");
      };
      auto atoms = [&] {
        arity(2);
        for (auto const& a: args)
          if (!a.is(Connective::Incl)) throw PreconditionError("derived rule '" + name + "' takes two inclusion atoms");
      };
      auto A = [](Formula const& f) { return Derivation::assume(f); };
      auto so = [](Formula const& a, Formula const& b) { return Formula::split_or(a, b); };
      auto go = [](Formula const& a, Formula const& b) { return Formula::global_or(a, b); };
      auto cj = [](Formula const& a, Formula const& b) { return Formula::conj(a, b); };
      auto full = Formula::full();

      if (name == "bullet-or") { arity(1); return I(RuleId::BulletI, full, {A(so(args[0], full))}); }
      if (name == "bullet-or-rev") { arity(1); return I(RuleId::BulletE, so(args[0], full), {A(full)}); }
      if (name == "bullet-gor") {
        arity(1);
        auto s = fresh(), t = fresh();
        return I(RuleId::GorE, args[0],
                 {A(go(args[0], full)), Derivation::assume(args[0], s), I(RuleId::BulletE, args[0], {Derivation::assume(full, t)})},
                 {{s, args[0]}, {t, full}});
      }
      if (name == "bullet-gor-rev") { arity(1); return I(RuleId::GorI, go(args[0], full), {A(args[0])}); }
      if (name == "aug") { atoms(); return augment(A(args[0]), A(args[1])); }
      if (name == "aug-rev" || name == "weaken" || name == "weaken-rev") {
        atoms();
        auto p = args[0].lhs(), x = args[0].rhs(), q = args[1].lhs(), y = args[1].rhs();
        auto pq = detail::concat(p, q), xy = detail::concat(x, y);
        auto joint = Formula::incl(pq, xy, InclFlavor::Full);
        if (name == "aug-rev") {
          std::vector<std::size_t> head(p.size()), tail(q.size());
          std::iota(head.begin(), head.end(), std::size_t{0});
          std::iota(tail.begin(), tail.end(), p.size());
          auto d = A(joint);
          return I(RuleId::AndI, cj(args[0], args[1]), {select(d, head), select(d, tail)});
        }
        auto longer = Formula::incl(detail::concat(pq, q), detail::concat(xy, y), InclFlavor::Full);
        if (name == "weaken-rev") {
          std::vector<std::size_t> keep(pq.size());
          std::iota(keep.begin(), keep.end(), std::size_t{0});
          return select(A(longer), keep);
        }
        return duplicate(A(joint), q, y, longer);
      }
      if (name == "or-gor-or-distr") {
        arity(3);
        auto const &phi = args[0], &psi = args[1], &chi = args[2];
        auto target = so(phi, go(psi, chi));
        auto branch = [&](Formula const& side) {
          auto t = fresh(), u = fresh();
          auto g = I(RuleId::GorI, go(psi, chi), {Derivation::assume(side, u)});
          return std::pair{t, I(RuleId::OrMon, target, {Derivation::assume(so(phi, side), t), g}, {{u, side}})};
        };
        auto [a, da] = branch(psi);
        auto [b, db] = branch(chi);
        return I(RuleId::GorE, target, {A(go(so(phi, psi), so(phi, chi))), da, db}, {{a, so(phi, psi)}, {b, so(phi, chi)}});
      }
      if (name == "and-gor-distr" || name == "and-gor-distr-rev") {
        arity(3);
        auto const &phi = args[0], &p1 = args[1], &p2 = args[2];
        auto lhs = cj(phi, go(p1, p2)), rhs = go(cj(phi, p1), cj(phi, p2));
        auto s = fresh(), t = fresh();
        if (name == "and-gor-distr") {
          auto d = A(lhs);
          auto left = I(RuleId::AndE, phi, {d});
          auto mk = [&](Formula const& p, std::string const& tag) {
            return I(RuleId::GorI, rhs, {I(RuleId::AndI, cj(phi, p), {left, Derivation::assume(p, tag)})});
          };
          return I(RuleId::GorE, rhs, {I(RuleId::AndE, go(p1, p2), {d}), mk(p1, s), mk(p2, t)}, {{s, p1}, {t, p2}});
        }
        auto mk = [&](Formula const& p, std::string const& tag) {
          auto h = Derivation::assume(cj(phi, p), tag);
          return I(RuleId::AndI, lhs, {I(RuleId::AndE, phi, {h}), I(RuleId::GorI, go(p1, p2), {I(RuleId::AndE, p, {h})})});
        };
        return I(RuleId::GorE, lhs, {A(rhs), mk(p1, s), mk(p2, t)}, {{s, cj(phi, p1)}, {t, cj(phi, p2)}});
      }
      if (name == "and-or-distr" || name == "and-or-distr-rev") {
        arity(3);
        for (auto const& a: args)
          if (!is_bullet_free(a) || !is_gor_free(a))
            throw PreconditionError("'" + to_string(a) + "' is outside the full- and gor-free fragment");
        auto const &a = args[0], &b1 = args[1], &b2 = args[2];
        auto lhs = cj(a, so(b1, b2)), rhs = so(cj(a, b1), cj(a, b2));
        auto s = fresh(), t = fresh();
        if (name == "and-or-distr") {
          auto d = A(lhs);
          auto left = I(RuleId::AndE, a, {d});
          auto l = I(RuleId::OrI, rhs, {I(RuleId::AndI, cj(a, b1), {left, Derivation::assume(b1, s)})});
          auto r = I(RuleId::OrI, rhs, {I(RuleId::AndI, cj(a, b2), {left, Derivation::assume(b2, t)})});
          return I(RuleId::OrE, rhs, {I(RuleId::AndE, so(b1, b2), {d}), l, r}, {{s, b1}, {t, b2}});
        }
        auto d = A(rhs);
        auto alpha = I(RuleId::OrE, a,
                       {d, I(RuleId::AndE, a, {Derivation::assume(cj(a, b1), s)}), I(RuleId::AndE, a, {Derivation::assume(cj(a, b2), t)})},
                       {{s, cj(a, b1)}, {t, cj(a, b2)}});
        auto beta = mono(d, [&](Derivation const& x) { return I(RuleId::AndE, b1, {x}); },
                         [&](Derivation const& x) { return I(RuleId::AndE, b2, {x}); });
        return I(RuleId::AndI, lhs, {alpha, beta});
      }
      throw PreconditionError("unknown derived rule '" + name + "'");
    }

    auto logic() const noexcept -> LogicId { return logic_; }
    auto context() const noexcept -> PropContext const& { return ctx_; }

  private:
    using Leaf = std::function<Derivation(Derivation const&)>;
    using Case = std::function<Derivation(Derivation const&, Team)>;

    struct Family {
      bool special = false;         // bot (Lqu) or full (Lqd)
      std::vector<Team> teams;      // ascending
      std::vector<Formula> chis;    // characteristic formulas
      std::vector<Formula> prefix;  // prefix[k]: left fold of chis[0..k]
      Formula formula = Formula::bot();

      auto index(Team t) const -> std::size_t {
        auto it = std::find(teams.begin(), teams.end(), t);
        if (it == teams.end()) throw std::logic_error("team outside the normal-form index");
        return static_cast<std::size_t>(it - teams.begin());
      }
      auto contains(Team t) const -> bool { return std::find(teams.begin(), teams.end(), t) != teams.end(); }
    };

    LogicId logic_;
    PropContext ctx_;
    SemanticsOptions opts_;
    std::size_t n_ = 0;
    std::size_t tags_ = 0;
    std::unordered_map<Formula, Family, FormulaHash> families_;

    void require_props() const {
      if (logic_ == LogicId::Lqd && n_ == 0) throw PreconditionError("Lqd normal forms need at least one proposition");
    }

    void require_member(Formula const& f) const {
      if (auto v = membership_violation(f, logic_))
        throw PreconditionError("formula is not in " + std::string(logic_name(logic_)) + ": '" + to_string(v->subterm) + "': " + v->reason);
    }

    auto upward() const -> bool { return is_upward_logic(logic_); }
    auto flavor() const -> InclFlavor { return atom_flavor(logic_); }
    auto fresh() -> std::string { return "h" + std::to_string(++tags_); }

    static auto I(RuleId r, Formula c, std::vector<Derivation> ps = {}, std::vector<Discharge> ds = {}) -> Derivation {
      return Derivation::infer(r, std::move(c), std::move(ps), std::move(ds));
    }

    auto chi(Team t) const -> Formula { return characteristic(t, logic_, ctx_); }

    auto family(Formula const& f) -> Family const& {
      if (auto it = families_.find(f); it != families_.end()) return it->second;
      auto c = denotation(f, ctx_, opts_);
      if (logic_ == LogicId::Lqu) c.erase(Team::empty(n_));
      Family fam;
      fam.teams = c.teams();
      if (fam.teams.empty()) {
        if (logic_ != LogicId::Lqu && logic_ != LogicId::Lqd) throw std::logic_error("empty denotation outside Lqu and Lqd");
        fam.special = true;
        fam.formula = logic_ == LogicId::Lqu ? Formula::bot() : Formula::full();
      } else {
        for (auto t: fam.teams) {
          fam.chis.push_back(chi(t));
          fam.prefix.push_back(fam.prefix.empty() ? fam.chis.back() : Formula::global_or(fam.prefix.back(), fam.chis.back()));
        }
        fam.formula = fam.prefix.back();
      }
      return families_.emplace(f, std::move(fam)).first->second;
    }

    // ---- global disjunction ------------------------------------------------------------------

    // chi_T |- Psi by gorI steps.
    auto inject(Derivation const& d, Family const& fam, Team t) -> Derivation {
      auto i = fam.index(t);
      Derivation cur = d;
      if (i > 0) cur = I(RuleId::GorI, fam.prefix[i], {cur});
      for (auto k = i + 1; k < fam.teams.size(); k++) cur = I(RuleId::GorI, fam.prefix[k], {cur});
      return cur;
    }

    // Psi |- target by gorE over the disjuncts.
    auto cases(Derivation const& d, Family const& fam, Formula const& target, Case const& each) -> Derivation {
      std::function<Derivation(Derivation const&, std::size_t)> go = [&](Derivation const& cur, std::size_t m) -> Derivation {
        if (m == 0) return each(cur, fam.teams[0]);
        auto a = fresh(), b = fresh();
        auto left = Derivation::assume(fam.prefix[m - 1], a);
        auto right = Derivation::assume(fam.chis[m], b);
        return I(RuleId::GorE, target, {cur, go(left, m - 1), each(right, fam.teams[m])},
                 {{a, fam.prefix[m - 1]}, {b, fam.chis[m]}});
      };
      return go(d, fam.teams.size() - 1);
    }

    // The special form (bot or full) entails anything.
    auto from_special(Derivation const& d, Formula const& target) -> Derivation {
      if (d.conclusion() == target) return d;
      return I(logic_ == LogicId::Lqu ? RuleId::BotE : RuleId::BulletE, target, {d});
    }

    // Psi_{sub} |- Psi_{sup} for an index contained in the other.
    auto lift(Derivation const& d, Family const& sub, Family const& sup) -> Derivation {
      if (sub.special) return from_special(d, sup.formula);
      if (sub.formula == sup.formula) return d;
      return cases(d, sub, sup.formula, [&](Derivation const& x, Team t) { return inject(x, sup, t); });
    }

    // ---- inclusion atoms ---------------------------------------------------------------------

    // Reorder and shorten an atom to the pairs at positions idx (distinct), via perm and proj.
    auto select(Derivation d, std::vector<std::size_t> const& idx) -> Derivation {
      auto f = d.conclusion();
      TermSeq a = f.lhs(), b = f.rhs();
      std::vector<std::size_t> cur(a.size());
      std::iota(cur.begin(), cur.end(), std::size_t{0});
      auto rotate = [](auto& v, std::size_t i, std::size_t j) { std::rotate(v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(j), v.end()); };
      for (std::size_t i = 0; i < idx.size(); i++) {
        auto j = static_cast<std::size_t>(std::find(cur.begin(), cur.end(), idx[i]) - cur.begin());
        if (j == i) continue;
        rotate(cur, i, j);
        rotate(a, i, j);
        rotate(b, i, j);
        d = I(RuleId::Perm, Formula::incl(a, b, f.flavor()), {d});
      }
      while (a.size() > idx.size()) {
        a.pop_back();
        b.pop_back();
        d = I(RuleId::Proj, Formula::incl(a, b, f.flavor()), {d});
      }
      return d;
    }

    auto prop_positions(TermSeq const& props) const -> std::vector<std::size_t> {
      // positions in `props` of the context symbols, in context order
      std::vector<std::size_t> out;
      for (auto const& s: ctx_.props())
        for (std::size_t i = 0; i < props.size(); i++)
          if (props[i].name == s) { out.push_back(i); break; }
      return out;
    }

    auto missing_symbol(TermSeq const& props) const -> std::optional<Term> {
      for (auto const& s: ctx_.props())
        if (std::none_of(props.begin(), props.end(), [&](Term const& t) { return t.name == s; })) return Term::prop(s);
      return std::nullopt;
    }

    // The valuation a full-context atom describes (signature read off the constant side).
    auto valuation_of(Formula const& a) const -> Valuation {
      auto const& c = upward() ? a.lhs() : a.rhs();
      Valuation v = 0;
      for (auto const& t: c) v = (v << 1) | static_cast<Valuation>(t.kind == Term::Kind::True);
      return v;
    }

    auto signature_atom(Valuation v) const -> Formula {
      return upward() ? Formula::incl(signature(v, ctx_), context_sequence(ctx_), flavor())
                      : Formula::incl(context_sequence(ctx_), signature(v, ctx_), flavor());
    }

    // Teams of valuations satisfying a consistent atom's constraint.
    auto atom_valuations(Formula const& a) const -> Team {
      auto const& props = upward() ? a.rhs() : a.lhs();
      auto const& consts = upward() ? a.lhs() : a.rhs();
      std::uint64_t bits = 0;
      for (Valuation v = 0; v < ctx_.num_valuations(); v++) {
        bool ok = true;
        for (std::size_t i = 0; i < props.size() && ok; i++) ok = ctx_.value(v, ctx_.index(props[i].name)) == (consts[i].kind == Term::Kind::True);
        if (ok) bits |= std::uint64_t{1} << v;
      }
      return Team(bits, n_);
    }

    // Positions i < j of one proposition with different constants (dual atoms).
    static auto clash(Formula const& a) -> std::optional<std::pair<std::size_t, std::size_t>> {
      for (std::size_t i = 0; i < a.lhs().size(); i++)
        for (std::size_t j = i + 1; j < a.lhs().size(); j++)
          if (a.lhs()[i] == a.lhs()[j] && !(a.rhs()[i] == a.rhs()[j])) return std::pair{i, j};
      return std::nullopt;
    }

    // botE from r <= 1 and r <= 0 (in either order).
    auto bot_elim(Derivation x, Derivation y, Formula const& target) -> Derivation {
      if (x.conclusion().rhs()[0].kind != Term::Kind::True) std::swap(x, y);
      return I(RuleId::BotE, target, {x, y});
    }

    // ---- split disjunction (downward logics) ---------------------------------------------------

    auto is_zero(Formula const& a) const -> bool { return a.is(Connective::Bot) || a.lhs().size() != n_ || clash(a).has_value(); }

    // A leaf denoting only the empty team (and, in Lqd, the full one) entails any full-free target.
    auto zero_to(Derivation const& d, Formula const& target) -> Derivation {
      if (d.conclusion() == target) return d;
      if (d.conclusion().is(Connective::Bot))
        return I(RuleId::BotOrE, target, {I(RuleId::OrI, Formula::split_or(target, Formula::bot()), {d})});
      auto c = clash(d.conclusion());
      if (!c) throw std::logic_error("zero_to on a satisfiable atom");
      return bot_elim(select(d, {c->first}), select(d, {c->second}), target);
    }

    // Two signature atoms of different valuations contradict each other.
    auto contradiction(Derivation const& x, Derivation const& y, Formula const& target) -> Derivation {
      auto const &a = x.conclusion().rhs(), &b = y.conclusion().rhs();
      for (std::size_t i = 0; i < a.size(); i++)
        if (!(a[i] == b[i])) return bot_elim(select(x, {i}), select(y, {i}), target);
      throw std::logic_error("contradiction between equal atoms");
    }

    // Split a split disjunction into its leaves by orE; target must be free of global disjunction.
    auto collapse(Derivation const& d, Formula const& target, Leaf const& leaf) -> Derivation {
      if (d.conclusion() == target) return d;
      auto const& f = d.conclusion();
      if (!f.is(Connective::SplitOr)) return leaf(d);
      auto a = fresh(), b = fresh();
      auto l = f.left(), r = f.right();
      return I(RuleId::OrE, target, {d, collapse(Derivation::assume(l, a), target, leaf), collapse(Derivation::assume(r, b), target, leaf)},
               {{a, l}, {b, r}});
    }

    // p <= x^v |- theta_U for v in U, by orI.
    auto pad(Derivation const& d, Team u) -> Derivation {
      auto members = u.members();
      auto v = valuation_of(d.conclusion());
      auto i = static_cast<std::size_t>(std::find(members.begin(), members.end(), v) - members.begin());
      if (i == members.size()) throw std::logic_error("pad outside the team");
      std::vector<Formula> prefix;
      for (auto w: members) prefix.push_back(prefix.empty() ? signature_atom(w) : Formula::split_or(prefix.back(), signature_atom(w)));
      Derivation cur = d;
      if (i > 0) cur = I(RuleId::OrI, prefix[i], {cur});
      for (auto k = i + 1; k < members.size(); k++) cur = I(RuleId::OrI, prefix[k], {cur});
      return cur;
    }

    // theta_T |- theta_U for T a subset of U.
    auto widen(Derivation const& d, Team u) -> Derivation {
      auto target = chi(u);
      return collapse(d, target, [&](Derivation const& x) { return is_zero(x.conclusion()) ? zero_to(x, target) : pad(x, u); });
    }

    // A | B |- A' | B' from A |- A' and B |- B' (either may be absent).
    auto mono(Derivation const& d, Leaf const& left, Leaf const& right) -> Derivation {
      auto a = d.conclusion().left(), b = d.conclusion().right();
      Derivation cur = d;
      if (right) {
        auto t = fresh();
        auto db = right(Derivation::assume(b, t));
        b = db.conclusion();
        cur = I(RuleId::OrMon, Formula::split_or(a, b), {cur, db}, {{t, d.conclusion().right()}});
      }
      if (left) {
        cur = I(RuleId::OrCom, Formula::split_or(b, a), {cur});
        auto t = fresh();
        auto da = left(Derivation::assume(a, t));
        cur = I(RuleId::OrMon, Formula::split_or(b, da.conclusion()), {cur, da}, {{t, a}});
        cur = I(RuleId::OrCom, Formula::split_or(da.conclusion(), b), {cur});
      }
      return cur;
    }

    // phi | Psi |- target by orGorDistr and gorE, handling each phi | chi_S.
    auto distribute(Derivation const& d, Family const& fam, Formula const& target, Case const& each) -> Derivation {
      auto phi = d.conclusion().left();
      std::function<Derivation(Derivation const&, std::size_t)> go = [&](Derivation const& cur, std::size_t m) -> Derivation {
        if (m == 0) return each(cur, fam.teams[0]);
        auto l = Formula::split_or(phi, fam.prefix[m - 1]), r = Formula::split_or(phi, fam.chis[m]);
        auto e = I(RuleId::OrGorDistr, Formula::global_or(l, r), {cur});
        auto a = fresh(), b = fresh();
        return I(RuleId::GorE, target, {e, go(Derivation::assume(l, a), m - 1), each(Derivation::assume(r, b), fam.teams[m])},
                 {{a, l}, {b, r}});
      };
      return go(d, fam.teams.size() - 1);
    }

    // ---- upward conjunctions -----------------------------------------------------------------

    auto conjunct(Derivation const& d, Formula const& atom) -> Derivation {
      if (d.conclusion() == atom) return d;
      auto const& f = d.conclusion();
      if (!f.is(Connective::And)) throw std::logic_error("conjunct not found");
      auto rs = flatten(f.right(), Connective::And);
      bool right = std::find(rs.begin(), rs.end(), atom) != rs.end();
      return conjunct(I(RuleId::AndE, right ? f.right() : f.left(), {d}), atom);
    }

    auto conjoin(std::vector<Derivation> const& ds) -> Derivation {
      if (ds.empty()) return I(RuleId::TopI, logic_ == LogicId::Lu ? Formula::top() : Formula::incl({}, {}, flavor()));
      Derivation cur = ds[0];
      for (std::size_t i = 1; i < ds.size(); i++) cur = I(RuleId::AndI, Formula::conj(cur.conclusion(), ds[i].conclusion()), {cur, ds[i]});
      return cur;
    }

    // psi_T |- psi_S for S a subset of T.
    auto shrink(Derivation const& d, Team s) -> Derivation {
      std::vector<Derivation> parts;
      for (auto v: s.members()) parts.push_back(conjunct(d, signature_atom(v)));
      return conjoin(parts);
    }

    // ---- forward: f |- Psi ------------------------------------------------------------------

    auto forward(Derivation const& d, Formula const& f) -> Derivation {
      auto const& fam = family(f);
      switch (f.op()) {
        case Connective::Bot: case Connective::Full: return d;
        case Connective::Top: return inject(d, fam, Team::empty(n_));
        case Connective::Incl: return upward() ? atom_forward_up(d, f, fam) : atom_forward_down(d, f, fam);
        case Connective::And: {
          auto l = f.left(), r = f.right();
          auto const& f1 = family(l);
          auto const& f2 = family(r);
          auto e1 = forward(I(RuleId::AndE, l, {d}), l);
          if (f1.special) return from_special(e1, fam.formula);
          auto e2 = forward(I(RuleId::AndE, r, {d}), r);
          if (f2.special) return from_special(e2, fam.formula);
          return cases(e1, f1, fam.formula, [&](Derivation const& x, Team t) {
            return cases(e2, f2, fam.formula, [&](Derivation const& y, Team s) {
              if (upward()) {
                Team u = t | s;
                std::vector<Derivation> parts;
                for (auto v: u.members()) parts.push_back(conjunct(t.contains(v) ? x : y, signature_atom(v)));
                return inject(conjoin(parts), fam, u);
              }
              Team u = t & s;
              auto target = chi(u);
              auto merged = collapse(x, target, [&](Derivation const& a) {
                if (is_zero(a.conclusion())) return zero_to(a, target);
                return collapse(y, target, [&](Derivation const& b) {
                  if (is_zero(b.conclusion())) return zero_to(b, target);
                  if (a.conclusion() == b.conclusion()) return pad(a, u);
                  return contradiction(a, b, target);
                });
              });
              return inject(merged, fam, u);
            });
          });
        }
        case Connective::GlobalOr: {
          auto l = f.left(), r = f.right();
          auto a = fresh(), b = fresh();
          auto bl = lift(forward(Derivation::assume(l, a), l), family(l), fam);
          auto br = lift(forward(Derivation::assume(r, b), r), family(r), fam);
          return I(RuleId::GorE, fam.formula, {d, bl, br}, {{a, l}, {b, r}});
        }
        case Connective::SplitOr: {
          auto l = f.left(), r = f.right();
          auto const& f1 = family(l);
          auto const& f2 = family(r);
          if (f1.special || f2.special) {
            // phi | full |- full
            Derivation cur = f2.special ? d : I(RuleId::OrCom, Formula::split_or(r, l), {d});
            auto other = f2.special ? l : r, bullet = f2.special ? r : l;
            auto t = fresh();
            auto e = forward(Derivation::assume(bullet, t), bullet);
            cur = I(RuleId::OrMon, Formula::split_or(other, Formula::full()), {cur, e}, {{t, bullet}});
            return I(RuleId::BulletI, Formula::full(), {cur});
          }
          auto m = mono(d, [&](Derivation const& x) { return forward(x, l); }, [&](Derivation const& x) { return forward(x, r); });
          return distribute(m, f2, fam.formula, [&](Derivation const& e, Team s) {
            auto swapped = I(RuleId::OrCom, Formula::split_or(e.conclusion().right(), e.conclusion().left()), {e});
            return distribute(swapped, f1, fam.formula, [&](Derivation const& g, Team t) {
              return inject(widen(g, s | t), fam, s | t);
            });
          });
        }
        default: break;
      }
      throw std::logic_error("connective outside the logic");
    }

    auto atom_forward_up(Derivation const& d, Formula const& f, Family const& fam) -> Derivation {
      std::function<Derivation(Derivation const&)> extend = [&](Derivation const& cur) -> Derivation {
        auto const& a = cur.conclusion();
        auto q = missing_symbol(a.rhs());
        if (!q) {
          auto full = select(cur, prop_positions(a.rhs()));
          return inject(full, fam, Team::singleton(valuation_of(full.conclusion()), n_));
        }
        auto rhs = a.rhs();
        rhs.push_back(*q);
        auto lt = a.lhs(), lf = a.lhs();
        lt.push_back(Term::top());
        lf.push_back(Term::bot());
        auto x = Formula::incl(lt, rhs, flavor()), y = Formula::incl(lf, rhs, flavor());
        auto s = fresh(), t = fresh();
        return I(RuleId::Ext, fam.formula, {cur, extend(Derivation::assume(x, s)), extend(Derivation::assume(y, t))}, {{s, x}, {t, y}});
      };
      (void)f;
      return extend(d);
    }

    auto atom_forward_down(Derivation const& d, Formula const& f, Family const& fam) -> Derivation {
      if (clash(f)) return inject(zero_to(d, chi(Team::empty(n_))), fam, Team::empty(n_));
      // drop repeated pairs
      std::vector<std::size_t> first;
      for (std::size_t i = 0; i < f.lhs().size(); i++) {
        bool seen = false;
        for (std::size_t j = 0; j < i; j++) seen |= f.lhs()[j] == f.lhs()[i];
        if (!seen) first.push_back(i);
      }
      Derivation cur = first.size() < f.lhs().size() ? select(d, first) : d;
      Team tmax = atom_valuations(f);
      auto target = chi(tmax);
      std::function<Derivation(Derivation const&)> extend = [&](Derivation const& c) -> Derivation {
        auto const& a = c.conclusion();
        auto q = missing_symbol(a.lhs());
        if (!q) return pad(select(c, prop_positions(a.lhs())), tmax);
        auto lhs = a.lhs();
        lhs.push_back(*q);
        auto rt = a.rhs(), rf = a.rhs();
        rt.push_back(Term::top());
        rf.push_back(Term::bot());
        auto x = Formula::incl(lhs, rt, flavor()), y = Formula::incl(lhs, rf, flavor());
        auto e = I(RuleId::Ext, Formula::split_or(x, y), {c});
        auto s = fresh(), t = fresh();
        return I(RuleId::OrE, target, {e, extend(Derivation::assume(x, s)), extend(Derivation::assume(y, t))}, {{s, x}, {t, y}});
      };
      return inject(extend(cur), fam, tmax);
    }

    // ---- backward: Psi |- f -----------------------------------------------------------------

    auto backward(Derivation const& d, Formula const& f) -> Derivation {
      auto const& fam = family(f);
      switch (f.op()) {
        case Connective::Bot: case Connective::Full: return d;
        case Connective::Top:
          return cases(d, fam, f, [&](Derivation const&, Team) { return I(RuleId::TopI, Formula::top()); });
        case Connective::Incl: return atom_backward(d, f, fam);
        case Connective::And: {
          if (fam.special) return from_special(d, f);
          auto l = f.left(), r = f.right();
          return I(RuleId::AndI, f, {backward(lift(d, fam, family(l)), l), backward(lift(d, fam, family(r)), r)});
        }
        case Connective::GlobalOr: {
          if (fam.special) return from_special(d, f);
          auto l = f.left(), r = f.right();
          auto const& f1 = family(l);
          auto const& f2 = family(r);
          if (f1.special) return I(RuleId::GorI, f, {backward(lift(d, fam, f2), r)});
          if (f2.special) return I(RuleId::GorI, f, {backward(lift(d, fam, f1), l)});
          auto pair = Formula::global_or(f1.formula, f2.formula);
          auto e = cases(d, fam, pair, [&](Derivation const& x, Team t) {
            return I(RuleId::GorI, pair, {f1.contains(t) ? inject(x, f1, t) : inject(x, f2, t)});
          });
          auto a = fresh(), b = fresh();
          return I(RuleId::GorE, f,
                   {e, I(RuleId::GorI, f, {backward(Derivation::assume(f1.formula, a), l)}),
                    I(RuleId::GorI, f, {backward(Derivation::assume(f2.formula, b), r)})},
                   {{a, f1.formula}, {b, f2.formula}});
        }
        case Connective::SplitOr: {
          if (fam.special) return from_special(d, f);
          auto l = f.left(), r = f.right();
          auto const& f1 = family(l);
          auto const& f2 = family(r);
          auto pair = Formula::split_or(f1.formula, f2.formula);
          auto e = cases(d, fam, pair, [&](Derivation const& x, Team u) {
            // u = t | s with t in the left index and s in the right one
            for (auto t: f1.teams) {
              if (!t.subset_of(u)) continue;
              Team s = u - t;
              if (!f2.contains(s)) continue;
              auto split = Formula::split_or(chi(t), chi(s));
              auto g = collapse(x, split, [&](Derivation const& a) {
                if (is_zero(a.conclusion())) return zero_to(a, split);
                auto v = valuation_of(a.conclusion());
                return I(RuleId::OrI, split, {pad(a, t.contains(v) ? t : s)});
              });
              return mono(g, [&](Derivation const& y) { return inject(y, f1, t); }, [&](Derivation const& y) { return inject(y, f2, s); });
            }
            throw std::logic_error("split index without decomposition");
          });
          return mono(e, [&](Derivation const& y) { return backward(y, l); }, [&](Derivation const& y) { return backward(y, r); });
        }
        default: break;
      }
      throw std::logic_error("connective outside the logic");
    }

    auto atom_backward(Derivation const& d, Formula const& f, Family const& fam) -> Derivation {
      if (upward()) {
        Team sat = atom_valuations(f);
        return cases(d, fam, f, [&](Derivation const& x, Team t) {
          auto v = (t & sat).members().at(0);
          auto full = conjunct(x, signature_atom(v));
          std::vector<std::size_t> idx;
          for (auto const& p: f.rhs()) idx.push_back(ctx_.index(p.name));
          return select(full, idx);
        });
      }
      return cases(d, fam, f, [&](Derivation const& x, Team) {
        return collapse(x, f, [&](Derivation const& a) { return is_zero(a.conclusion()) ? zero_to(a, f) : atom_from_signature(a, f); });
      });
    }

    // p <= x^v |- goal for a dual atom goal that v satisfies. Repeated propositions are produced by
    // ext on a proposition already present; the wrong branch clashes.
    auto atom_from_signature(Derivation const& d, Formula const& goal) -> Derivation {
      auto const& g = goal.lhs();
      bool distinct = true;
      for (std::size_t i = 0; i < g.size(); i++)
        for (std::size_t j = 0; j < i; j++) distinct &= !(g[i] == g[j]);
      if (distinct) {
        std::vector<std::size_t> idx;
        for (auto const& p: g) idx.push_back(ctx_.index(p.name));
        return select(d, idx);
      }
      std::function<Derivation(Derivation const&, std::size_t)> go = [&](Derivation const& cur, std::size_t i) -> Derivation {
        if (i == g.size()) {
          std::vector<std::size_t> idx(g.size());
          std::iota(idx.begin(), idx.end(), n_);
          return select(cur, idx);
        }
        auto const& a = cur.conclusion();
        auto lhs = a.lhs();
        lhs.push_back(g[i]);
        auto rt = a.rhs(), rf = a.rhs();
        rt.push_back(Term::top());
        rf.push_back(Term::bot());
        auto x = Formula::incl(lhs, rt, flavor()), y = Formula::incl(lhs, rf, flavor());
        auto e = I(RuleId::Ext, Formula::split_or(x, y), {cur});
        auto s = fresh(), t = fresh();
        bool top = goal.rhs()[i].kind == Term::Kind::True;
        auto hx = Derivation::assume(x, s), hy = Derivation::assume(y, t);
        auto bx = top ? go(hx, i + 1) : zero_to(hx, goal);
        auto by = top ? zero_to(hy, goal) : go(hy, i + 1);
        return I(RuleId::OrE, goal, {e, bx, by}, {{s, x}, {t, y}});
      };
      return go(d, 0);
    }

    // ---- augmentation --------------------------------------------------------------------------

    auto ext_split(Derivation const& d, Term const& q) -> Derivation {
      auto const& a = d.conclusion();
      auto lhs = a.lhs();
      lhs.push_back(q);
      auto rt = a.rhs(), rf = a.rhs();
      rt.push_back(Term::top());
      rf.push_back(Term::bot());
      return I(RuleId::Ext, Formula::split_or(Formula::incl(lhs, rt, a.flavor()), Formula::incl(lhs, rf, a.flavor())), {d});
    }

    // p <=* x, q <=* y |- p q <=* x y: ext by each pair of q in turn; the branch with the wrong
    // constant clashes with the matching pair of the second atom.
    auto augment(Derivation const& da, Derivation const& db) -> Derivation {
      auto const &a = da.conclusion(), &b = db.conclusion();
      auto goal = Formula::incl(detail::concat(a.lhs(), b.lhs()), detail::concat(a.rhs(), b.rhs()), a.flavor());
      std::function<Derivation(Derivation const&, std::size_t)> go = [&](Derivation const& cur, std::size_t j) -> Derivation {
        if (j == b.lhs().size()) return cur;
        auto e = ext_split(cur, b.lhs()[j]);
        auto const& f = e.conclusion();
        auto s = fresh(), t = fresh();
        auto h1 = Derivation::assume(f.left(), s), h2 = Derivation::assume(f.right(), t);
        bool top = b.rhs()[j].kind == Term::Kind::True;
        auto refute = [&](Derivation const& h) {
          return bot_elim(select(h, {h.conclusion().lhs().size() - 1}), select(db, {j}), goal);
        };
        return I(RuleId::OrE, goal, {e, top ? go(h1, j + 1) : refute(h1), top ? refute(h2) : go(h2, j + 1)},
                 {{s, f.left()}, {t, f.right()}});
      };
      return go(da, 0);
    }

    // p q <=* x y |- p q q <=* x y y, one ext per pair of q; the wrong branch clashes with itself.
    auto duplicate(Derivation const& d, TermSeq const& q, TermSeq const& y, Formula const& goal) -> Derivation {
      std::function<Derivation(Derivation const&, std::size_t)> go = [&](Derivation const& cur, std::size_t j) -> Derivation {
        if (j == q.size()) return cur;
        auto e = ext_split(cur, q[j]);
        auto const& f = e.conclusion();
        auto s = fresh(), t = fresh();
        auto h1 = Derivation::assume(f.left(), s), h2 = Derivation::assume(f.right(), t);
        bool top = y[j].kind == Term::Kind::True;
        return I(RuleId::OrE, goal, {e, top ? go(h1, j + 1) : zero_to(h1, goal), top ? zero_to(h2, goal) : go(h2, j + 1)},
                 {{s, f.left()}, {t, f.right()}});
      };
      return go(d, 0);
    }

    // ---- entailment between normal forms ------------------------------------------------------

    auto dominate(Derivation const& d, Family const& src, Family const& dst) -> Derivation {
      if (src.special) return from_special(d, dst.formula);
      if (dst.special) throw std::logic_error("entailment into the special form from a nonspecial one");
      return cases(d, src, dst.formula, [&](Derivation const& x, Team t) {
        std::optional<Team> pick;
        if (dst.contains(t)) pick = t;
        for (auto s: dst.teams) {
          if (pick) break;
          if (upward() ? s.subset_of(t) : t.subset_of(s)) pick = s;
        }
        if (!pick) {
          if (logic_ == LogicId::Lqd)
            throw NotDerivable("the entailment holds only through the full team: no index team of the conclusion contains "
                               + format_team(t, ctx_));
          throw std::logic_error("entailment without a dominating team");
        }
        auto y = upward() ? shrink(x, *pick) : widen(x, *pick);
        return inject(y, dst, *pick);
      });
    }
  };

  // Instantiates a derived rule of the Lqd system; see ProofBuilder::derived for the names.
  inline auto derived_rule(std::string const& name, std::vector<Formula> const& args) -> Derivation {
    std::vector<std::string> props;
    for (auto const& a: args)
      for (auto const& s: free_props(a))
        if (std::find(props.begin(), props.end(), s) == props.end()) props.push_back(s);
    return ProofBuilder(LogicId::Lqd, PropContext(props)).derived(name, args);
  }

  inline auto derive_normal_form(Formula const& f, LogicId logic, PropContext const& ctx, SemanticsOptions const& opts = {})
    -> NormalFormDerivation {
    return ProofBuilder(logic, ctx, opts).normal_form(f);
  }

  inline auto derive_entailment(Formula const& gamma, Formula const& f, LogicId logic, PropContext const& ctx,
                                SemanticsOptions const& opts = {}) -> Derivation {
    return ProofBuilder(logic, ctx, opts).entailment(gamma, f);
  }

}

#endif // TEAMLOGIC_BUILDERS_HPP
