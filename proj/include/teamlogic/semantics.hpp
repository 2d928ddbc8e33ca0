// Team semantics: per-team evaluation, whole-context denotations, entailment, closure predicates
// and closure operators.

#ifndef TEAMLOGIC_SEMANTICS_HPP
#define TEAMLOGIC_SEMANTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "context.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "team.hpp"

namespace teamlogic {

  struct SemanticsOptions {
    // Largest team for which eval() enumerates covers of a split or strict disjunction.
    std::size_t split_member_bound = 12;
    // Largest context for which denotation() enumerates every team.
    std::size_t denotation_prop_bound = 3;
    // Read the full-team clauses away: 'full' holds nowhere and a <=* b behaves as a <= b.
    bool ignore_full_clause = false;
  };

  namespace detail {

    // Values of a term sequence under one valuation, packed little-endian into a word.
    class SeqEval {
    public:
      SeqEval(TermSeq const& s, PropContext const& ctx) {
        if (s.size() > 64) throw BoundError("inclusion atoms are limited to 64 terms per side");
        n_ = ctx.size();
        for (auto const& t: s) {
          switch (t.kind) {
            case Term::Kind::True: kinds_.push_back(-1); break;
            case Term::Kind::False: kinds_.push_back(-2); break;
            case Term::Kind::Prop: kinds_.push_back(static_cast<int>(ctx.index(t.name))); break;
          }
        }
      }

      auto operator()(Valuation v) const noexcept -> std::uint64_t {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < kinds_.size(); i++) {
          int k = kinds_[i];
          bool bit = k == -1 ? true : k == -2 ? false : ((v >> (n_ - 1 - static_cast<std::size_t>(k))) & 1u);
          out |= static_cast<std::uint64_t>(bit) << i;
        }
        return out;
      }

    private:
      std::vector<int> kinds_;
      std::size_t n_ = 0;
    };

    // Plain inclusion a <= b in team t.
    inline auto incl_holds(Team t, SeqEval const& a, SeqEval const& b) -> bool {
      auto ms = t.members();
      std::vector<std::uint64_t> bs;
      bs.reserve(ms.size());
      for (auto v: ms) bs.push_back(b(v));
      for (auto v: ms) {
        auto x = a(v);
        bool found = false;
        for (auto y: bs) if (y == x) { found = true; break; }
        if (!found) return false;
      }
      return true;
    }

    inline auto check_team_context(Team t, PropContext const& ctx) {
      if (t.num_props() != ctx.size()) throw ContextError("team is over " + std::to_string(t.num_props())
                                                          + " propositions but the context has " + std::to_string(ctx.size()));
    }

    inline auto subteam(std::vector<Valuation> const& members, std::uint64_t pick, std::size_t n) -> Team {
      std::uint64_t bits = 0;
      for (std::size_t i = 0; i < members.size(); i++) if ((pick >> i) & 1u) bits |= std::uint64_t{1} << members[i];
      return {bits, n};
    }

    class Evaluator {
    public:
      Evaluator(PropContext const& ctx, SemanticsOptions const& opts): ctx_(ctx), opts_(opts) {}

      auto eval(Team t, Formula const& f) const -> bool {
        std::size_t n = ctx_.size();
        switch (f.op()) {
          case Connective::Bot: return t.is_empty();
          case Connective::Top: return true;
          case Connective::Full: return !opts_.ignore_full_clause && t.is_full();
          case Connective::Incl: {
            SeqEval a(f.lhs(), ctx_), b(f.rhs(), ctx_);
            switch (f.flavor()) {
              case InclFlavor::Plain: return incl_holds(t, a, b);
              case InclFlavor::NonEmpty: return !t.is_empty() && incl_holds(t, a, b);
              case InclFlavor::Full: return (!opts_.ignore_full_clause && t.is_full()) || incl_holds(t, a, b);
            }
            return false;
          }
          case Connective::And: return eval(t, f.left()) && eval(t, f.right());
          case Connective::GlobalOr: return eval(t, f.left()) || eval(t, f.right());
          case Connective::SplitOr: case Connective::StrictOr: {
            auto ms = t.members();
            if (ms.size() > opts_.split_member_bound)
              throw BoundError("team has " + std::to_string(ms.size()) + " members; split disjunction evaluation is limited to "
                               + std::to_string(opts_.split_member_bound) + " (use denotation instead)");
            std::uint64_t all = (std::uint64_t{1} << ms.size()) - 1;
            std::vector<char> l(all + 1), r(all + 1);
            for (std::uint64_t s = 0; s <= all; s++) {
              l[s] = eval(subteam(ms, s, n), f.left());
              r[s] = eval(subteam(ms, s, n), f.right());
            }
            bool strict = f.is(Connective::StrictOr);
            // Each member goes left, right, or (non-strict only) both.
            for (std::uint64_t a = 0; a <= all; a++) {
              if (!l[a]) continue;
              std::uint64_t rest = all & ~a;
              if (strict) { if (r[rest]) return true; continue; }
              for (std::uint64_t extra = a;; extra = (extra - 1) & a) {
                if (r[rest | extra]) return true;
                if (extra == 0) break;
              }
            }
            return false;
          }
          case Connective::Might: {
            auto ms = t.members();
            switch (f.might_kind()) {
              case MightKind::Single:
                if (t.is_empty()) return true;
                for (auto v: ms) if (eval(Team::singleton(v, n), f.body())) return true;
                return false;
              case MightKind::Subteam: case MightKind::NonemptySubteam: {
                if (f.might_kind() == MightKind::Subteam && t.is_empty()) return true;
                for (std::uint64_t s = t.bits(); s; s = (s - 1) & t.bits())
                  if (eval(Team(s, n), f.body())) return true;
                return false;
              }
            }
            return false;
          }
        }
        return false;
      }

      auto denote(Formula const& f) const -> TeamProperty {
        std::size_t n = ctx_.size();
        switch (f.op()) {
          case Connective::Bot: return TeamProperty::of(n, {Team::empty(n)});
          case Connective::Top: return TeamProperty::all(n);
          case Connective::Full:
            return opts_.ignore_full_clause ? TeamProperty::none(n) : TeamProperty::of(n, {Team::full(n)});
          case Connective::Incl: {
            TeamProperty p(n);
            for (std::uint64_t t = 0; t < p.num_teams(); t++)
              if (eval(Team(t, n), f)) p.insert_bits(t);
            return p;
          }
          case Connective::And: return denote(f.left()) & denote(f.right());
          case Connective::GlobalOr: return denote(f.left()) | denote(f.right());
          case Connective::SplitOr: case Connective::StrictOr: {
            auto as = denote(f.left()).teams();
            auto bs = denote(f.right()).teams();
            bool strict = f.is(Connective::StrictOr);
            TeamProperty p(n);
            for (auto a: as)
              for (auto b: bs)
                if (!strict || (a & b).is_empty()) p.insert_bits((a | b).bits());
            return p;
          }
          case Connective::Might: {
            auto d = denote(f.body());
            TeamProperty p(n);
            if (f.might_kind() == MightKind::Single) {
              std::uint64_t good = 0;
              for (Valuation v = 0; v < ctx_.num_valuations(); v++)
                if (d.contains(Team::singleton(v, n))) good |= std::uint64_t{1} << v;
              for (std::uint64_t t = 0; t < p.num_teams(); t++)
                if (t == 0 || (t & good)) p.insert_bits(t);
              return p;
            }
            // Teams with some nonempty member of d below them, in increasing order.
            for (std::uint64_t t = 1; t < p.num_teams(); t++) {
              bool in = d.contains_bits(t);
              for (std::uint64_t b = t; b && !in; b &= b - 1)
                in = p.contains_bits(t & ~(b & -b));
              if (in) p.insert_bits(t);
            }
            if (f.might_kind() == MightKind::Subteam) p.insert_bits(0);
            return p;
          }
        }
        return TeamProperty(n);
      }

    private:
      PropContext const& ctx_;
      SemanticsOptions opts_;
    };

    inline void check_formula_context(Formula const& f, PropContext const& ctx) {
      for (auto const& s: free_props(f))
        if (!ctx.contains(s)) throw ContextError("proposition '" + s + "' is not in the context");
    }

    inline void check_denotation_bound(PropContext const& ctx, SemanticsOptions const& opts) {
      if (ctx.size() > opts.denotation_prop_bound || ctx.size() > TeamProperty::max_props)
        throw BoundError("context has " + std::to_string(ctx.size()) + " propositions; denotations are limited to "
                         + std::to_string(std::min(opts.denotation_prop_bound, TeamProperty::max_props)));
    }

  }

  // T |= f.
  inline auto eval(Team t, Formula const& f, PropContext const& ctx, SemanticsOptions const& opts = {}) -> bool {
    detail::check_team_context(t, ctx);
    detail::check_formula_context(f, ctx);
    return detail::Evaluator(ctx, opts).eval(t, f);
  }

  // ||f||: every team over ctx that satisfies f.
  inline auto denotation(Formula const& f, PropContext const& ctx, SemanticsOptions const& opts = {}) -> TeamProperty {
    detail::check_denotation_bound(ctx, opts);
    detail::check_formula_context(f, ctx);
    return detail::Evaluator(ctx, opts).denote(f);
  }

  // A team satisfying every premise but not the conclusion, if there is one.
  inline auto entailment_counterexample(std::vector<Formula> const& premises, Formula const& conclusion,
                                        PropContext const& ctx, SemanticsOptions const& opts = {}) -> std::optional<Team> {
    auto lhs = TeamProperty::all(ctx.size());
    for (auto const& p: premises) lhs = lhs & denotation(p, ctx, opts);
    auto bad = lhs - denotation(conclusion, ctx, opts);
    if (bad.is_empty()) return std::nullopt;
    return bad.teams().front();
  }

  inline auto entails(std::vector<Formula> const& premises, Formula const& conclusion, PropContext const& ctx,
                      SemanticsOptions const& opts = {}) -> bool {
    return !entailment_counterexample(premises, conclusion, ctx, opts).has_value();
  }

  inline auto equivalent(Formula const& a, Formula const& b, PropContext const& ctx, SemanticsOptions const& opts = {}) -> bool {
    return denotation(a, ctx, opts) == denotation(b, ctx, opts);
  }

  // ---- closure -----------------------------------------------------------------------------------

  enum class ClosureKind { Downward, QuasiDownward, Upward, QuasiUpward, UnionClosed, EmptyTeam, FullTeam };

  inline auto closure_kind_name(ClosureKind k) -> char const* {
    switch (k) {
      case ClosureKind::Downward: return "d";
      case ClosureKind::QuasiDownward: return "qd";
      case ClosureKind::Upward: return "u";
      case ClosureKind::QuasiUpward: return "qu";
      case ClosureKind::UnionClosed: return "union";
      case ClosureKind::EmptyTeam: return "empty";
      case ClosureKind::FullTeam: return "full";
    }
    return "?";
  }

  inline auto closure_kind_long_name(ClosureKind k) -> std::string {
    switch (k) {
      case ClosureKind::Downward: return "downward closed";
      case ClosureKind::QuasiDownward: return "quasi downward closed";
      case ClosureKind::Upward: return "upward closed";
      case ClosureKind::QuasiUpward: return "quasi upward closed";
      case ClosureKind::UnionClosed: return "union closed";
      case ClosureKind::EmptyTeam: return "empty team property";
      case ClosureKind::FullTeam: return "full team property";
    }
    return "?";
  }

  inline auto parse_closure_kind(std::string const& s) -> ClosureKind {
    if (s == "d") return ClosureKind::Downward;
    if (s == "qd") return ClosureKind::QuasiDownward;
    if (s == "u") return ClosureKind::Upward;
    if (s == "qu") return ClosureKind::QuasiUpward;
    if (s == "union") return ClosureKind::UnionClosed;
    if (s == "empty") return ClosureKind::EmptyTeam;
    if (s == "full") return ClosureKind::FullTeam;
    throw Error("unknown closure kind '" + s + "' (expected d, qd, u, qu, union, empty or full)");
  }

  // The closure kind whose properties a logic captures.
  inline auto kind_of(LogicId l) -> ClosureKind {
    switch (l) {
      case LogicId::Lqu: return ClosureKind::QuasiUpward;
      case LogicId::Lu: return ClosureKind::Upward;
      case LogicId::Lqd: return ClosureKind::QuasiDownward;
      case LogicId::Ld: return ClosureKind::Downward;
    }
    return ClosureKind::Downward;
  }

  namespace detail {

    // One-step neighbours suffice: closure under single-member removal implies closure under subsets.
    inline auto down_closed(TeamProperty const& c) -> bool {
      bool ok = true;
      c.for_each([&](Team t) {
        for (std::uint64_t b = t.bits(); b && ok; b &= b - 1)
          if (!c.contains_bits(t.bits() & ~(b & -b))) ok = false;
      });
      return ok;
    }

    inline auto up_closed(TeamProperty const& c) -> bool {
      bool ok = true;
      std::uint64_t full = Team::full_mask(c.num_props());
      c.for_each([&](Team t) {
        for (std::uint64_t b = full & ~t.bits(); b && ok; b &= b - 1)
          if (!c.contains_bits(t.bits() | (b & -b))) ok = false;
      });
      return ok;
    }

    inline auto up_closure(TeamProperty const& base) -> TeamProperty {
      TeamProperty p(base.num_props());
      for (std::uint64_t t = 0; t < p.num_teams(); t++) {
        bool in = base.contains_bits(t);
        for (std::uint64_t b = t; b && !in; b &= b - 1) in = p.contains_bits(t & ~(b & -b));
        if (in) p.insert_bits(t);
      }
      return p;
    }

    inline auto down_closure(TeamProperty const& base) -> TeamProperty {
      TeamProperty p(base.num_props());
      std::uint64_t full = Team::full_mask(base.num_props());
      for (std::uint64_t t = p.num_teams(); t-- > 0;) {
        bool in = base.contains_bits(t);
        for (std::uint64_t b = full & ~t; b && !in; b &= b - 1) in = p.contains_bits(t | (b & -b));
        if (in) p.insert_bits(t);
      }
      return p;
    }

  }

  inline auto check_closure(TeamProperty const& c, ClosureKind kind) -> bool {
    std::size_t n = c.num_props();
    Team empty = Team::empty(n), full = Team::full(n);
    switch (kind) {
      case ClosureKind::Downward: return detail::down_closed(c);
      case ClosureKind::Upward: return detail::up_closed(c);
      case ClosureKind::QuasiDownward: {
        if (!c.contains(full)) return false;
        auto rest = c;
        rest.erase(full);
        return detail::down_closed(rest);
      }
      case ClosureKind::QuasiUpward: {
        if (!c.contains(empty)) return false;
        auto rest = c;
        rest.erase(empty);
        return detail::up_closed(rest);
      }
      case ClosureKind::UnionClosed: {
        auto ts = c.teams();
        for (std::size_t i = 0; i < ts.size(); i++)
          for (std::size_t j = i + 1; j < ts.size(); j++)
            if (!c.contains(ts[i] | ts[j])) return false;
        return true;
      }
      case ClosureKind::EmptyTeam: return c.contains(empty);
      case ClosureKind::FullTeam: return c.contains(full);
    }
    return false;
  }

  // The closure operators qu, u, qd, d.
  inline auto close(TeamProperty const& c, ClosureKind kind) -> TeamProperty {
    if (c.is_empty()) throw PreconditionError("closure of an empty team property is undefined");
    std::size_t n = c.num_props();
    Team empty = Team::empty(n), full = Team::full(n);
    switch (kind) {
      case ClosureKind::Upward: return detail::up_closure(c);
      case ClosureKind::Downward: return detail::down_closure(c);
      case ClosureKind::QuasiUpward: {
        auto base = c;
        base.erase(empty);
        auto out = detail::up_closure(base);
        out.insert(empty);
        return out;
      }
      case ClosureKind::QuasiDownward: {
        auto base = c;
        base.erase(full);
        auto out = detail::down_closure(base);
        out.insert(full);
        return out;
      }
      default:
        throw PreconditionError(std::string("no closure operator for kind '") + closure_kind_name(kind) + "'");
    }
  }

  // p <= x (or p <=* x) as the conjunction of literal atoms p_i <= x_i; the empty atom becomes top.
  inline auto dual_atom_expand(Formula const& f) -> Formula {
    if (!f.is(Connective::Incl) || f.flavor() == InclFlavor::NonEmpty)
      throw PreconditionError("expected a plain or full inclusion atom");
    for (auto const& t: f.lhs())
      if (!t.is_prop()) throw PreconditionError("left side of a dual atom must be propositions");
    for (auto const& t: f.rhs())
      if (!t.is_constant()) throw PreconditionError("right side of a dual atom must be constants");
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < f.lhs().size(); i++) lits.push_back(Formula::incl({f.lhs()[i]}, {f.rhs()[i]}));
    return Formula::fold(Connective::And, lits, Formula::top());
  }

}

#endif // TEAMLOGIC_SEMANTICS_HPP
