// Brute-force oracle: exhaustive enumeration, seeded random generation, and an evaluator that
// shares no code with semantics.hpp, used to cross-check the main implementation.

#ifndef TEAMLOGIC_ORACLE_HPP
#define TEAMLOGIC_ORACLE_HPP

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "context.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "membership.hpp"
#include "semantics.hpp"
#include "team.hpp"

namespace teamlogic {

  // All teams over ctx in bitmask order: the empty team first, the full team last.
  inline auto enumerate_teams(PropContext const& ctx) -> std::vector<Team> {
    if (ctx.size() > 4) throw BoundError("team enumeration is limited to 4 propositions");
    std::size_t n = ctx.size();
    std::uint64_t count = std::uint64_t{1} << (std::size_t{1} << n);
    std::vector<Team> out;
    out.reserve(count);
    for (std::uint64_t t = 0; t < count; t++) out.emplace_back(t, n);
    return out;
  }

  // Every nonempty team property over ctx with the given closure kind.
  inline auto enumerate_closed_properties(PropContext const& ctx, ClosureKind kind) -> std::vector<TeamProperty> {
    if (ctx.size() > 2) throw BoundError("closed-property enumeration is limited to 2 propositions");
    std::size_t n = ctx.size();
    std::uint64_t teams = std::uint64_t{1} << (std::size_t{1} << n);
    std::uint64_t collections = std::uint64_t{1} << teams;
    std::vector<TeamProperty> out;
    for (std::uint64_t w = 1; w < collections; w++) {
      auto c = TeamProperty::from_low_word(n, w);
      if (check_closure(c, kind)) out.push_back(std::move(c));
    }
    return out;
  }

  struct ConnectiveWeights {
    unsigned atom = 4;
    unsigned constant = 1; // bot / top / full, whichever the logic has
    unsigned conj = 2;
    unsigned split_or = 2;
    unsigned global_or = 2;
  };

  struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t max_depth = 3;
    PropContext ctx;
    ConnectiveWeights weights;
    std::size_t max_atom_len = 3;
    bool bullet_free = false; // no 'full' atom
    bool gor_free = false;    // no global disjunction
  };

  class FormulaGenerator {
  public:
    explicit FormulaGenerator(GenConfig cfg): cfg_(std::move(cfg)), rng_(cfg_.seed) {}

    auto next(LogicId logic) -> Formula { return gen(logic, cfg_.max_depth); }

    // Outside every logic: atoms of all four shapes, all constants, strict disjunction and might.
    auto next_mixed() -> Formula { return mixed(cfg_.max_depth); }

    // An inclusion atom of the logic's shape.
    auto atom(LogicId logic) -> Formula {
      std::size_t n = cfg_.ctx.size();
      bool upward = is_upward_logic(logic);
      std::size_t max_len = upward ? std::min(cfg_.max_atom_len, n) : (n == 0 ? 0 : cfg_.max_atom_len);
      std::size_t len = uniform(0, max_len);
      TermSeq props, consts;
      if (upward) {
        auto order = cfg_.ctx.props();
        std::shuffle(order.begin(), order.end(), rng_);
        for (std::size_t i = 0; i < len; i++) props.push_back(Term::prop(order[i]));
      } else {
        for (std::size_t i = 0; i < len; i++) props.push_back(Term::prop(cfg_.ctx.symbol(uniform(0, n - 1))));
      }
      for (std::size_t i = 0; i < len; i++) consts.push_back(Term::constant(uniform(0, 1) == 1));
      return upward ? Formula::incl(consts, props, atom_flavor(logic)) : Formula::incl(props, consts, atom_flavor(logic));
    }

    auto constant(LogicId logic) -> Formula {
      switch (logic) {
        case LogicId::Lqu: case LogicId::Ld: return Formula::bot();
        case LogicId::Lu: return Formula::top();
        case LogicId::Lqd: return Formula::full();
      }
      return Formula::bot();
    }

    auto uniform(std::size_t lo, std::size_t hi) -> std::size_t {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }

    auto rng() -> std::mt19937_64& { return rng_; }

  private:
    auto gen(LogicId logic, std::size_t depth) -> Formula {
      auto const& w = cfg_.weights;
      unsigned constant_w = (logic == LogicId::Lqd && cfg_.bullet_free) ? 0 : w.constant;
      unsigned split_w = is_upward_logic(logic) ? 0 : w.split_or;
      unsigned gor_w = cfg_.gor_free ? 0 : w.global_or;
      unsigned leaf = w.atom + constant_w;
      unsigned inner = depth == 0 ? 0 : w.conj + split_w + gor_w;
      if (leaf + inner == 0) return atom(logic);
      auto r = static_cast<unsigned>(uniform(0, leaf + inner - 1));
      if (r < w.atom) return atom(logic);
      if (r < leaf) return constant(logic);
      r -= leaf;
      Connective op = r < w.conj ? Connective::And : r < w.conj + split_w ? Connective::SplitOr : Connective::GlobalOr;
      Formula l = gen(logic, depth - 1);
      Formula rr = gen(logic, depth - 1);
      return Formula::binary(op, l, rr);
    }

    auto mixed(std::size_t depth) -> Formula {
      auto r = uniform(0, depth == 0 ? 4 : 11);
      if (r <= 3) return atom(all_logics[r]);
      if (r == 4) {
        switch (uniform(0, 2)) {
          case 0: return Formula::bot();
          case 1: return Formula::top();
          default: return Formula::full();
        }
      }
      if (r <= 6) return Formula::might(static_cast<MightKind>(uniform(0, 2)), mixed(depth - 1));
      static constexpr Connective ops[] = {Connective::And, Connective::SplitOr, Connective::GlobalOr, Connective::StrictOr, Connective::And};
      Formula l = mixed(depth - 1);
      Formula rr = mixed(depth - 1);
      return Formula::binary(ops[r - 7], l, rr);
    }

    GenConfig cfg_;
    std::mt19937_64 rng_;
  };

  inline auto random_formula(GenConfig const& cfg, LogicId logic) -> Formula { return FormulaGenerator(cfg).next(logic); }

  // Random nonempty seed collection, closed under `kind` (one of d, qd, u, qu).
  inline auto random_closed_property(GenConfig const& cfg, ClosureKind kind) -> TeamProperty {
    std::mt19937_64 rng(cfg.seed);
    std::size_t n = cfg.ctx.size();
    TeamProperty seed(n);
    std::uint64_t teams = seed.num_teams();
    std::uniform_int_distribution<std::uint64_t> pick(0, teams - 1);
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    for (std::size_t i = 0; i < k; i++) seed.insert_bits(pick(rng));
    return close(seed, kind);
  }

  // ---- reference evaluator ----------------------------------------------------------------------

  namespace reference {

    using Assignment = std::map<std::string, bool>;
    using Members = std::vector<Assignment>;

    inline auto term_value(Term const& t, Assignment const& v) -> bool {
      if (t.kind == Term::Kind::True) return true;
      if (t.kind == Term::Kind::False) return false;
      return v.at(t.name);
    }

    inline auto seq_values(TermSeq const& s, Assignment const& v) -> std::vector<bool> {
      std::vector<bool> out;
      for (auto const& t: s) out.push_back(term_value(t, v));
      return out;
    }

    inline auto is_full(Members const& team, std::size_t n) -> bool { return team.size() == (std::size_t{1} << n); }

    inline auto subset(Members const& team, std::uint64_t pick) -> Members {
      Members out;
      for (std::size_t i = 0; i < team.size(); i++) if ((pick >> i) & 1u) out.push_back(team[i]);
      return out;
    }

    inline auto sat(Members const& team, Formula const& f, std::size_t n) -> bool {
      switch (f.op()) {
        case Connective::Bot: return team.empty();
        case Connective::Top: return true;
        case Connective::Full: return is_full(team, n);
        case Connective::Incl: {
          auto plain = [&] {
            for (auto const& v: team) {
              auto a = seq_values(f.lhs(), v);
              bool witnessed = std::any_of(team.begin(), team.end(), [&](Assignment const& w) { return seq_values(f.rhs(), w) == a; });
              if (!witnessed) return false;
            }
            return true;
          };
          if (f.flavor() == InclFlavor::NonEmpty) return !team.empty() && plain();
          if (f.flavor() == InclFlavor::Full) return is_full(team, n) || plain();
          return plain();
        }
        case Connective::And: return sat(team, f.left(), n) && sat(team, f.right(), n);
        case Connective::GlobalOr: return sat(team, f.left(), n) || sat(team, f.right(), n);
        case Connective::SplitOr: case Connective::StrictOr: {
          // Pairs of subsets (T1, T2) with T1 u T2 = T; strict adds T1 n T2 = {}.
          std::uint64_t all = (std::uint64_t{1} << team.size()) - 1;
          for (std::uint64_t a = 0; a <= all; a++)
            for (std::uint64_t b = 0; b <= all; b++) {
              if ((a | b) != all) continue;
              if (f.is(Connective::StrictOr) && (a & b)) continue;
              if (sat(subset(team, a), f.left(), n) && sat(subset(team, b), f.right(), n)) return true;
            }
          return false;
        }
        case Connective::Might: {
          if (f.might_kind() == MightKind::Single) {
            if (team.empty()) return true;
            return std::any_of(team.begin(), team.end(), [&](Assignment const& v) { return sat(Members{v}, f.body(), n); });
          }
          if (f.might_kind() == MightKind::Subteam && team.empty()) return true;
          std::uint64_t all = (std::uint64_t{1} << team.size()) - 1;
          for (std::uint64_t s = 1; s <= all; s++)
            if (sat(subset(team, s), f.body(), n)) return true;
          return false;
        }
      }
      return false;
    }

  }

  // Direct clause-by-clause evaluation over explicit assignments; independent of eval().
  inline auto reference_eval(Team t, Formula const& f, PropContext const& ctx) -> bool {
    if (t.size() > 8) throw BoundError("reference evaluation is limited to teams of 8 members");
    if (t.num_props() != ctx.size()) throw ContextError("team and context differ in size");
    reference::Members team;
    for (auto v: t.members()) {
      reference::Assignment a;
      auto bits = ctx.valuation_string(v);
      for (std::size_t i = 0; i < ctx.size(); i++) a[ctx.symbol(i)] = bits[i] == '1';
      team.push_back(std::move(a));
    }
    for (auto const& s: free_props(f))
      if (!ctx.contains(s)) throw ContextError("proposition '" + s + "' is not in the context");
    return reference::sat(team, f, ctx.size());
  }

}

#endif // TEAMLOGIC_ORACLE_HPP
