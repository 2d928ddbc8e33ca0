// Grammar membership for the four logics.
//
//   Lqu  bot | x <= p        | & | ||
//   Lu   top | x <=! p       | & | ||
//   Lqd  full | p <=* x      | & | '|' | ||
//   Ld   bot | p <= x        | & | '|' | ||
//
// x: constants only. p: propositions only; pairwise distinct on the right of primitive atoms,
// repeats allowed on the left of dual atoms.

#ifndef TEAMLOGIC_MEMBERSHIP_HPP
#define TEAMLOGIC_MEMBERSHIP_HPP

#include <optional>
#include <set>
#include <string>

#include "formula.hpp"
#include "syntax.hpp"

namespace teamlogic {

  struct MembershipViolation {
    Formula subterm;
    std::string reason;
  };

  inline auto all_constants(TermSeq const& s) -> bool {
    for (auto const& t: s) if (!t.is_constant()) return false;
    return true;
  }
  inline auto all_props(TermSeq const& s) -> bool {
    for (auto const& t: s) if (!t.is_prop()) return false;
    return true;
  }
  inline auto all_distinct_props(TermSeq const& s) -> bool {
    std::set<std::string> seen;
    for (auto const& t: s) if (!t.is_prop() || !seen.insert(t.name).second) return false;
    return true;
  }

  // Primitive shape x <= p: constants left, distinct propositions right.
  inline auto is_primitive_shape(Formula const& f) -> bool {
    return f.is(Connective::Incl) && all_constants(f.lhs()) && all_distinct_props(f.rhs());
  }
  // Dual shape p <= x: propositions left (repeats allowed), constants right.
  inline auto is_dual_shape(Formula const& f) -> bool {
    return f.is(Connective::Incl) && all_props(f.lhs()) && all_constants(f.rhs());
  }

  inline auto atom_flavor(LogicId l) -> InclFlavor {
    switch (l) {
      case LogicId::Lu: return InclFlavor::NonEmpty;
      case LogicId::Lqd: return InclFlavor::Full;
      default: return InclFlavor::Plain;
    }
  }

  inline auto is_upward_logic(LogicId l) -> bool { return l == LogicId::Lqu || l == LogicId::Lu; }

  // The logic's atomic inclusion formulas (shape and flavor).
  inline auto is_logic_atom(Formula const& f, LogicId l) -> bool {
    if (!f.is(Connective::Incl) || f.flavor() != atom_flavor(l)) return false;
    return is_upward_logic(l) ? is_primitive_shape(f) : is_dual_shape(f);
  }

  // First subterm (pre-order) that keeps `f` out of `logic`, if any.
  inline auto membership_violation(Formula const& f, LogicId logic) -> std::optional<MembershipViolation> {
    switch (f.op()) {
      case Connective::Bot:
        if (logic == LogicId::Lqu || logic == LogicId::Ld) return std::nullopt;
        return MembershipViolation{f, "'bot' is not a formula of this logic"};
      case Connective::Top:
        if (logic == LogicId::Lu) return std::nullopt;
        return MembershipViolation{f, "primitive 'top' belongs only to Lu"};
      case Connective::Full:
        if (logic == LogicId::Lqd) return std::nullopt;
        return MembershipViolation{f, "'full' belongs only to Lqd"};
      case Connective::Incl: {
        if (f.flavor() != atom_flavor(logic))
          return MembershipViolation{f, "wrong inclusion flavor for this logic"};
        if (is_upward_logic(logic)) {
          if (!all_constants(f.lhs())) return MembershipViolation{f, "left side of a primitive atom must be constants"};
          if (!all_distinct_props(f.rhs()))
            return MembershipViolation{f, "right side of a primitive atom must be pairwise distinct propositions"};
        } else {
          if (!all_props(f.lhs())) return MembershipViolation{f, "left side of a dual atom must be propositions"};
          if (!all_constants(f.rhs())) return MembershipViolation{f, "right side of a dual atom must be constants"};
        }
        return std::nullopt;
      }
      case Connective::And: case Connective::GlobalOr: break;
      case Connective::SplitOr:
        if (is_upward_logic(logic)) return MembershipViolation{f, "split disjunction is not in this logic"};
        break;
      case Connective::StrictOr:
        return MembershipViolation{f, "strict disjunction is evaluator-only"};
      case Connective::Might:
        return MembershipViolation{f, "might modalities are evaluator-only"};
    }
    if (auto v = membership_violation(f.left(), logic)) return v;
    return membership_violation(f.right(), logic);
  }

  inline auto logic_membership(Formula const& f, LogicId logic) -> bool { return !membership_violation(f, logic); }

  // Fragments used by side conditions.
  inline auto is_bullet_free(Formula const& f) -> bool { return !f.contains(Connective::Full); }
  inline auto is_gor_free(Formula const& f) -> bool { return !f.contains(Connective::GlobalOr); }

}

#endif // TEAMLOGIC_MEMBERSHIP_HPP
