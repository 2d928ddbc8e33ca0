// Natural deduction: the four rule systems, derivations with tagged assumption discharge, and
// the checker.
//
// A derivation is a tree (in memory a DAG: subderivations may be shared) of
//   Leaf  { assumption, optional tag }   tagged leaves must be discharged by an ancestor
//   Node  { rule, conclusion, premises, discharge: [(tag, formula)] }
// Discharges are positional. For orE, gorE and ext (Lqu, Lu) entry i binds premise i+1; for orMon
// the single entry binds premise 1.

#ifndef TEAMLOGIC_PROOF_HPP
#define TEAMLOGIC_PROOF_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "membership.hpp"
#include "syntax.hpp"

namespace teamlogic {

  enum class RuleId {
    BotE, TopI, AndI, AndE, GorI, GorE, Proj, Perm, Ext,
    BulletI, BulletE, BotOrE, OrI, OrE, OrCom, OrMon, OrGorDistr,
  };

  inline constexpr RuleId all_rules[] = {
    RuleId::BotE, RuleId::TopI, RuleId::AndI, RuleId::AndE, RuleId::GorI, RuleId::GorE, RuleId::Proj,
    RuleId::Perm, RuleId::Ext, RuleId::BulletI, RuleId::BulletE, RuleId::BotOrE, RuleId::OrI, RuleId::OrE,
    RuleId::OrCom, RuleId::OrMon, RuleId::OrGorDistr,
  };

  inline auto rule_name(RuleId r) -> char const* {
    switch (r) {
      case RuleId::BotE: return "botE";
      case RuleId::TopI: return "topI";
      case RuleId::AndI: return "andI";
      case RuleId::AndE: return "andE";
      case RuleId::GorI: return "gorI";
      case RuleId::GorE: return "gorE";
      case RuleId::Proj: return "proj";
      case RuleId::Perm: return "perm";
      case RuleId::Ext: return "ext";
      case RuleId::BulletI: return "bulletI";
      case RuleId::BulletE: return "bulletE";
      case RuleId::BotOrE: return "botOrE";
      case RuleId::OrI: return "orI";
      case RuleId::OrE: return "orE";
      case RuleId::OrCom: return "orCom";
      case RuleId::OrMon: return "orMon";
      case RuleId::OrGorDistr: return "orGorDistr";
    }
    return "?";
  }

  inline auto parse_rule(std::string const& s) -> std::optional<RuleId> {
    for (auto r: all_rules) if (s == rule_name(r)) return r;
    return std::nullopt;
  }

  struct RuleSystem {
    LogicId logic;
    std::vector<RuleId> rules;

    auto has(RuleId r) const -> bool { return std::find(rules.begin(), rules.end(), r) != rules.end(); }

    static auto of(LogicId l) -> RuleSystem {
      using R = RuleId;
      switch (l) {
        case LogicId::Lqu:
          return {l, {R::BotE, R::TopI, R::AndI, R::AndE, R::GorI, R::GorE, R::Proj, R::Perm, R::Ext}};
        case LogicId::Lu:
          return {l, {R::TopI, R::AndI, R::AndE, R::GorI, R::GorE, R::Proj, R::Perm, R::Ext}};
        case LogicId::Lqd:
          return {l, {R::BulletI, R::BulletE, R::TopI, R::BotE, R::BotOrE, R::Proj, R::Perm, R::Ext, R::AndI, R::AndE,
                      R::GorI, R::GorE, R::OrI, R::OrE, R::OrCom, R::OrMon, R::OrGorDistr}};
        case LogicId::Ld:
          return {l, {R::TopI, R::BotE, R::BotOrE, R::Proj, R::Perm, R::Ext, R::AndI, R::AndE, R::GorI, R::GorE,
                      R::OrI, R::OrE, R::OrCom, R::OrMon, R::OrGorDistr}};
      }
      return {l, {}};
    }
  };

  struct Discharge {
    std::string tag;
    Formula formula;
  };

  class Derivation {
    struct Node;

  public:
    static auto assume(Formula f, std::optional<std::string> tag = std::nullopt) -> Derivation {
      auto n = std::make_shared<Node>();
      n->leaf = true;
      n->formula = std::move(f);
      n->tag = std::move(tag);
      return Derivation(std::move(n));
    }

    static auto infer(RuleId rule, Formula conclusion, std::vector<Derivation> premises = {},
                      std::vector<Discharge> discharge = {}) -> Derivation {
      auto n = std::make_shared<Node>();
      n->rule = rule;
      n->formula = std::move(conclusion);
      n->premises = std::move(premises);
      n->discharge = std::move(discharge);
      return Derivation(std::move(n));
    }

    auto is_leaf() const noexcept -> bool { return node_->leaf; }
    // The assumption of a leaf, the conclusion of a node.
    auto conclusion() const noexcept -> Formula const& { return node_->formula; }
    auto tag() const noexcept -> std::optional<std::string> const& { return node_->tag; }
    auto rule() const noexcept -> RuleId { return node_->rule; }
    auto premises() const noexcept -> std::vector<Derivation> const& { return node_->premises; }
    auto discharge() const noexcept -> std::vector<Discharge> const& { return node_->discharge; }
    auto id() const noexcept -> void const* { return node_.get(); }

    // Number of nodes when unfolded into a tree.
    auto tree_size() const -> double {
      std::unordered_map<void const*, double> memo;
      return tree_size(memo);
    }
    // Number of distinct nodes in the shared representation.
    auto dag_size() const -> std::size_t {
      std::set<void const*> seen;
      std::vector<Derivation> stack{*this};
      while (!stack.empty()) {
        auto d = stack.back();
        stack.pop_back();
        if (!seen.insert(d.id()).second) continue;
        for (auto const& p: d.premises()) stack.push_back(p);
      }
      return seen.size();
    }

  private:
    struct Node {
      bool leaf = false;
      Formula formula = Formula::bot();
      std::optional<std::string> tag;
      RuleId rule = RuleId::TopI;
      std::vector<Derivation> premises;
      std::vector<Discharge> discharge;
    };

    explicit Derivation(std::shared_ptr<Node const> n): node_(std::move(n)) {}

    auto tree_size(std::unordered_map<void const*, double>& memo) const -> double {
      if (auto it = memo.find(id()); it != memo.end()) return it->second;
      double s = 1;
      for (auto const& p: premises()) s += p.tree_size(memo);
      memo[id()] = s;
      return s;
    }

    std::shared_ptr<Node const> node_;
  };

  struct Violation {
    std::string path; // "root", "root/0/2", ...
    std::string message;
  };

  struct CheckReport {
    bool ok = false;
    // Untagged leaves with their multiplicity in the unfolded tree, sorted by printed form.
    std::vector<std::pair<Formula, std::uint64_t>> open_assumptions;
    Formula conclusion = Formula::bot();
    std::vector<Violation> violations;

    auto open_formulas() const -> std::vector<Formula> {
      std::vector<Formula> out;
      for (auto const& [f, n]: open_assumptions) out.push_back(f);
      return out;
    }
  };

  struct CheckOptions {
    // Table side condition on orE; disabled only by the soundness audit's mutation run.
    bool or_elim_requires_gor_free = true;
    // Check that every formula of the derivation belongs to the logic.
    bool check_membership = true;
  };

  namespace detail {

    inline auto concat(TermSeq a, TermSeq const& b) -> TermSeq {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    inline auto slice(TermSeq const& s, std::size_t i, std::size_t j) -> TermSeq {
      return TermSeq(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(j));
    }

    // x y z <= u v w  to  x z y <= u w v, with |x| = |u|, |y| = |v|, |z| = |w|.
    inline auto is_permutation_step(Formula const& from, Formula const& to) -> bool {
      if (!from.is(Connective::Incl) || !to.is(Connective::Incl) || from.flavor() != to.flavor()) return false;
      auto const &a = from.lhs(), &b = from.rhs();
      std::size_t n = a.size();
      if (to.lhs().size() != n) return false;
      for (std::size_t i = 0; i <= n; i++)
        for (std::size_t j = i; j <= n; j++) {
          auto sw = [&](TermSeq const& s) { return concat(concat(slice(s, 0, i), slice(s, j, n)), slice(s, i, j)); };
          if (to.lhs() == sw(a) && to.rhs() == sw(b)) return true;
        }
      return false;
    }

    inline auto path_string(std::vector<int> const& p) -> std::string {
      std::string s = "root";
      for (int i: p) s += "/" + std::to_string(i);
      return s;
    }

    struct FreeTag {
      std::string tag;
      Formula formula;
      std::vector<int> path;
    };

    struct NodeInfo {
      std::vector<std::pair<std::vector<int>, std::string>> violations;
      std::unordered_map<Formula, std::uint64_t, FormulaHash> open;
      std::vector<FreeTag> free;
      std::set<std::string> bound;
    };

    class Checker {
    public:
      Checker(RuleSystem sys, CheckOptions opts): sys_(std::move(sys)), opts_(opts) {}

      auto run(Derivation const& d) -> std::shared_ptr<NodeInfo const> {
        if (auto it = memo_.find(d.id()); it != memo_.end()) return it->second;
        auto info = std::make_shared<NodeInfo>();
        if (d.is_leaf()) leaf(d, *info);
        else node(d, *info);
        memo_[d.id()] = info;
        return info;
      }

    private:
      RuleSystem sys_;
      CheckOptions opts_;
      std::unordered_map<void const*, std::shared_ptr<NodeInfo const>> memo_;

      auto in_logic(Formula const& f) const -> std::optional<std::string> {
        if (!opts_.check_membership) return std::nullopt;
        if (auto v = membership_violation(f, sys_.logic))
          return "'" + to_string(f) + "' is not a formula of " + logic_name(sys_.logic) + ": " + v->reason + " ('"
                 + to_string(v->subterm) + "')";
        return std::nullopt;
      }

      void leaf(Derivation const& d, NodeInfo& info) {
        if (auto m = in_logic(d.conclusion())) info.violations.push_back({{}, *m});
        if (d.tag()) info.free.push_back({*d.tag(), d.conclusion(), {}});
        else info.open[d.conclusion()] += 1;
      }

      void node(Derivation const& d, NodeInfo& info) {
        auto here = [&](std::string msg) { info.violations.push_back({{}, std::move(msg)}); };
        if (auto m = in_logic(d.conclusion())) here(*m);
        for (auto const& x: d.discharge())
          if (auto m = in_logic(x.formula)) here("discharged " + *m);

        // Which premise each discharge entry binds.
        std::vector<std::size_t> binds;
        if (!sys_.has(d.rule())) {
          here(std::string("rule '") + rule_name(d.rule()) + "' is not part of the system for " + logic_name(sys_.logic));
        } else if (auto err = check_rule(d, binds)) {
          here(std::string(rule_name(d.rule())) + ": " + *err);
        }

        std::set<std::string> seen_tags;
        for (auto const& x: d.discharge())
          if (!seen_tags.insert(x.tag).second) here("tag '" + x.tag + "' is discharged twice by one rule");

        for (std::size_t k = 0; k < d.premises().size(); k++) {
          auto sub = run(d.premises()[k]);
          int ki = static_cast<int>(k);
          for (auto const& [p, m]: sub->violations) info.violations.push_back({prefix(ki, p), m});
          for (auto const& [f, c]: sub->open) info.open[f] += c;
          std::vector<Discharge const*> mine;
          for (std::size_t i = 0; i < binds.size() && i < d.discharge().size(); i++)
            if (binds[i] == k) mine.push_back(&d.discharge()[i]);
          for (auto const* x: mine)
            if (sub->bound.count(x->tag)) here("tag '" + x->tag + "' is reused by a rule inside its own scope");
          for (auto const& ft: sub->free) {
            auto it = std::find_if(mine.begin(), mine.end(), [&](Discharge const* x) { return x->tag == ft.tag; });
            if (it == mine.end()) {
              info.free.push_back({ft.tag, ft.formula, prefix(ki, ft.path)});
            } else if (!((*it)->formula == ft.formula)) {
              info.violations.push_back({prefix(ki, ft.path), "assumption '" + to_string(ft.formula) + "' tagged '" + ft.tag
                                                                  + "' does not match the discharged formula '"
                                                                  + to_string((*it)->formula) + "'"});
            }
          }
          info.bound.insert(sub->bound.begin(), sub->bound.end());
        }
        for (auto const& x: d.discharge()) info.bound.insert(x.tag);
      }

      static auto prefix(int k, std::vector<int> const& p) -> std::vector<int> {
        std::vector<int> out{k};
        out.insert(out.end(), p.begin(), p.end());
        return out;
      }

      auto flavor() const -> InclFlavor { return atom_flavor(sys_.logic); }

      // nullopt when the node is a correct instance of its rule.
      auto check_rule(Derivation const& d, std::vector<std::size_t>& binds) const -> std::optional<std::string> {
        auto const& ps = d.premises();
        auto const& c = d.conclusion();
        auto const& dis = d.discharge();
        auto arity = [&](std::size_t n, std::size_t nd) -> std::optional<std::string> {
          if (ps.size() != n)
            return "expects " + std::to_string(n) + " premise(s), found " + std::to_string(ps.size());
          if (dis.size() != nd)
            return "expects " + std::to_string(nd) + " discharged assumption(s), found " + std::to_string(dis.size());
          return std::nullopt;
        };
        auto prem = [&](std::size_t i) -> Formula const& { return ps[i].conclusion(); };
        auto str = [](Formula const& f) { return "'" + to_string(f) + "'"; };
        LogicId l = sys_.logic;
        bool downward = l == LogicId::Lqd || l == LogicId::Ld;

        switch (d.rule()) {
          case RuleId::BotE: {
            if (l == LogicId::Lqu) {
              if (auto e = arity(1, 0)) return e;
              if (!prem(0).is(Connective::Bot)) return "premise must be bot";
              return std::nullopt;
            }
            if (auto e = arity(2, 0)) return e;
            auto ok_atom = [&](Formula const& f, Term::Kind k) {
              return f.is_incl(flavor()) && f.lhs().size() == 1 && f.lhs()[0].is_prop() && f.rhs()[0].kind == k;
            };
            if (!ok_atom(prem(0), Term::Kind::True) || !ok_atom(prem(1), Term::Kind::False) || !(prem(0).lhs() == prem(1).lhs()))
              return "premises must be q <= 1 and q <= 0 for one proposition q (in the logic's atom flavor)";
            if (l == LogicId::Lqd && !is_bullet_free(c)) return "conclusion must be full-free";
            return std::nullopt;
          }
          case RuleId::TopI: {
            if (auto e = arity(0, 0)) return e;
            Formula expect = l == LogicId::Lu ? Formula::top() : Formula::incl({}, {}, flavor());
            if (!(c == expect)) return "conclusion must be " + str(expect);
            return std::nullopt;
          }
          case RuleId::AndI: {
            if (auto e = arity(2, 0)) return e;
            if (!(c == Formula::conj(prem(0), prem(1)))) return "conclusion must be the conjunction of the premises";
            return std::nullopt;
          }
          case RuleId::AndE: {
            if (auto e = arity(1, 0)) return e;
            if (!prem(0).is(Connective::And)) return "premise must be a conjunction";
            if (!(c == prem(0).left()) && !(c == prem(0).right())) return "conclusion must be a conjunct of the premise";
            return std::nullopt;
          }
          case RuleId::GorI: case RuleId::OrI: {
            if (auto e = arity(1, 0)) return e;
            Connective op = d.rule() == RuleId::GorI ? Connective::GlobalOr : Connective::SplitOr;
            if (!c.is(op)) return "conclusion must be a disjunction";
            bool left = c.left() == prem(0), right = c.right() == prem(0);
            if (!left && !right) return "premise must be a disjunct of the conclusion";
            if (d.rule() == RuleId::OrI && l == LogicId::Lqd) {
              bool ok = (left && is_bullet_free(c.right())) || (right && is_bullet_free(c.left()));
              if (!ok) return "the introduced disjunct must be full-free";
            }
            return std::nullopt;
          }
          case RuleId::GorE: case RuleId::OrE: {
            if (auto e = arity(3, 2)) return e;
            Connective op = d.rule() == RuleId::GorE ? Connective::GlobalOr : Connective::SplitOr;
            if (!prem(0).is(op)) return "major premise must be a disjunction";
            if (!(dis[0].formula == prem(0).left()) || !(dis[1].formula == prem(0).right()))
              return "discharged assumptions must be the two disjuncts of the major premise";
            if (!(prem(1) == c) || !(prem(2) == c)) return "both minor premises must equal the conclusion";
            if (d.rule() == RuleId::OrE && opts_.or_elim_requires_gor_free && !is_gor_free(c))
              return "conclusion must be free of global disjunction";
            binds = {1, 2};
            return std::nullopt;
          }
          case RuleId::Proj: {
            if (auto e = arity(1, 0)) return e;
            auto const& p = prem(0);
            if (!p.is_incl(flavor()) || p.lhs().empty()) return "premise must be a nonempty inclusion atom of the logic";
            auto n = p.lhs().size();
            if (!c.is_incl(flavor()) || !(c.lhs() == slice(p.lhs(), 0, n - 1)) || !(c.rhs() == slice(p.rhs(), 0, n - 1)))
              return "conclusion must drop the last pair of the premise";
            return std::nullopt;
          }
          case RuleId::Perm: {
            if (auto e = arity(1, 0)) return e;
            if (!prem(0).is_incl(flavor())) return "premise must be an inclusion atom of the logic";
            if (!is_permutation_step(prem(0), c)) return "conclusion must be x z y <= u w v for premise x y z <= u v w";
            return std::nullopt;
          }
          case RuleId::Ext: {
            if (downward) {
              if (auto e = arity(1, 0)) return e;
              auto const& p = prem(0);
              if (!p.is_incl(flavor())) return "premise must be an inclusion atom of the logic";
              if (!c.is(Connective::SplitOr) || !c.left().is_incl(flavor()) || !c.right().is_incl(flavor()))
                return "conclusion must be a split disjunction of two atoms";
              auto const &a = c.left(), &b = c.right();
              auto n = p.lhs().size();
              if (a.lhs().size() != n + 1 || !a.lhs().back().is_prop()) return "conclusion atoms must extend the premise by one proposition";
              TermSeq q{a.lhs().back()};
              if (!(a.lhs() == concat(p.lhs(), q)) || !(b.lhs() == a.lhs()) || !(a.rhs() == concat(p.rhs(), {Term::top()}))
                  || !(b.rhs() == concat(p.rhs(), {Term::bot()})))
                return "conclusion must be p q <= x 1 | p q <= x 0 for premise p <= x";
              return std::nullopt;
            }
            if (auto e = arity(3, 2)) return e;
            auto const& p = prem(0);
            if (!p.is_incl(flavor())) return "major premise must be an inclusion atom of the logic";
            auto const &a = dis[0].formula, &b = dis[1].formula;
            auto n = p.lhs().size();
            if (!a.is_incl(flavor()) || a.rhs().size() != n + 1 || !a.rhs().back().is_prop())
              return "discharged assumptions must extend the premise by one proposition";
            TermSeq q{a.rhs().back()};
            if (!(a.lhs() == concat(p.lhs(), {Term::top()})) || !(a.rhs() == concat(p.rhs(), q))
                || !b.is_incl(flavor()) || !(b.lhs() == concat(p.lhs(), {Term::bot()})) || !(b.rhs() == a.rhs()))
              return "discharged assumptions must be x 1 <= p q and x 0 <= p q for premise x <= p";
            for (auto const& t: p.rhs())
              if (t == q[0]) return "variable '" + q[0].name + "' is not fresh for the premise";
            if (!(prem(1) == c) || !(prem(2) == c)) return "both minor premises must equal the conclusion";
            binds = {1, 2};
            return std::nullopt;
          }
          case RuleId::BulletI: {
            if (auto e = arity(1, 0)) return e;
            if (!prem(0).is(Connective::SplitOr) || !prem(0).right().is(Connective::Full)) return "premise must be phi | full";
            if (!c.is(Connective::Full)) return "conclusion must be full";
            return std::nullopt;
          }
          case RuleId::BulletE: {
            if (auto e = arity(1, 0)) return e;
            if (!prem(0).is(Connective::Full)) return "premise must be full";
            return std::nullopt;
          }
          case RuleId::BotOrE: {
            if (auto e = arity(1, 0)) return e;
            auto const& p = prem(0);
            if (!p.is(Connective::SplitOr)) return "premise must be a split disjunction";
            auto const& r = p.right();
            bool ok = l == LogicId::Ld
                        ? r.is(Connective::Bot)
                        : (r.is_incl(InclFlavor::Full) && r.lhs().size() == 2 && r.lhs()[0].is_prop() && r.lhs()[0] == r.lhs()[1]
                           && r.rhs()[0] == Term::top() && r.rhs()[1] == Term::bot());
            if (!ok) return l == LogicId::Ld ? "right disjunct must be bot" : "right disjunct must be q q <=* 1 0";
            if (!(c == p.left())) return "conclusion must be the left disjunct";
            return std::nullopt;
          }
          case RuleId::OrCom: {
            if (auto e = arity(1, 0)) return e;
            if (!prem(0).is(Connective::SplitOr) || !(c == Formula::split_or(prem(0).right(), prem(0).left())))
              return "conclusion must swap the disjuncts of the premise";
            return std::nullopt;
          }
          case RuleId::OrMon: {
            if (auto e = arity(2, 1)) return e;
            if (!prem(0).is(Connective::SplitOr)) return "major premise must be a split disjunction";
            if (!(dis[0].formula == prem(0).right())) return "discharged assumption must be the right disjunct";
            if (!(c == Formula::split_or(prem(0).left(), prem(1)))) return "conclusion must replace the right disjunct by the minor premise";
            binds = {1};
            return std::nullopt;
          }
          case RuleId::OrGorDistr: {
            if (auto e = arity(1, 0)) return e;
            auto const& p = prem(0);
            if (!p.is(Connective::SplitOr) || !p.right().is(Connective::GlobalOr)) return "premise must be phi | (psi || theta)";
            auto expect = Formula::global_or(Formula::split_or(p.left(), p.right().left()), Formula::split_or(p.left(), p.right().right()));
            if (!(c == expect)) return "conclusion must be " + str(expect);
            return std::nullopt;
          }
        }
        return "unknown rule";
      }
    };

  }

  inline auto check(Derivation const& d, RuleSystem const& sys, CheckOptions const& opts = {}) -> CheckReport {
    detail::Checker checker(sys, opts);
    auto info = checker.run(d);
    CheckReport r;
    r.conclusion = d.conclusion();
    for (auto const& [p, m]: info->violations) r.violations.push_back({detail::path_string(p), m});
    for (auto const& ft: info->free)
      r.violations.push_back({detail::path_string(ft.path), "assumption tagged '" + ft.tag + "' is not discharged by any ancestor"});
    for (auto const& [f, n]: info->open) r.open_assumptions.emplace_back(f, n);
    std::sort(r.open_assumptions.begin(), r.open_assumptions.end(),
              [](auto const& a, auto const& b) { return to_string(a.first) < to_string(b.first); });
    r.ok = r.violations.empty();
    return r;
  }

  inline auto check(Derivation const& d, LogicId logic, CheckOptions const& opts = {}) -> CheckReport {
    return check(d, RuleSystem::of(logic), opts);
  }

}

#endif // TEAMLOGIC_PROOF_HPP
