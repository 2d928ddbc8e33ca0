// Formula: immutable syntax trees over the union language of the four team logics, plus the
// evaluator-only connectives (strict disjunction and the three might modalities).

#ifndef TEAMLOGIC_FORMULA_HPP
#define TEAMLOGIC_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace teamlogic {

  struct Term {
    enum class Kind: std::uint8_t { Prop, True, False };

    Kind kind = Kind::True;
    std::string name; // set iff kind == Prop

    static auto prop(std::string s) -> Term { return {Kind::Prop, std::move(s)}; }
    static auto top() -> Term { return {Kind::True, {}}; }
    static auto bot() -> Term { return {Kind::False, {}}; }
    static auto constant(bool b) -> Term { return b ? top() : bot(); }

    auto is_prop() const noexcept -> bool { return kind == Kind::Prop; }
    auto is_constant() const noexcept -> bool { return kind != Kind::Prop; }

    friend auto operator==(Term const&, Term const&) -> bool = default;
  };

  using TermSeq = std::vector<Term>;

  enum class Connective: std::uint8_t { Bot, Top, Full, Incl, And, SplitOr, GlobalOr, StrictOr, Might };

  // a <= b, a <=! b (nonempty), a <=* b (full).
  enum class InclFlavor: std::uint8_t { Plain, NonEmpty, Full };

  // might1 (one member satisfies), might (some nonempty subteam, or team empty), MIGHT (some nonempty subteam).
  enum class MightKind: std::uint8_t { Single, Subteam, NonemptySubteam };

  enum class LogicId: std::uint8_t { Lqu, Lu, Lqd, Ld };

  inline constexpr LogicId all_logics[] = {LogicId::Lqu, LogicId::Lu, LogicId::Lqd, LogicId::Ld};

  inline auto logic_name(LogicId l) -> char const* {
    switch (l) {
      case LogicId::Lqu: return "qu";
      case LogicId::Lu: return "u";
      case LogicId::Lqd: return "qd";
      case LogicId::Ld: return "d";
    }
    return "?";
  }

  inline auto parse_logic(std::string const& s) -> LogicId {
    if (s == "qu" || s == "Lqu") return LogicId::Lqu;
    if (s == "u" || s == "Lu") return LogicId::Lu;
    if (s == "qd" || s == "Lqd") return LogicId::Lqd;
    if (s == "d" || s == "Ld") return LogicId::Ld;
    throw Error("unknown logic '" + s + "' (expected qu, u, qd or d)");
  }

  // Immutable; copies share structure.
  class Formula {
    struct Node;

  public:
    static auto bot() -> Formula { return make(Connective::Bot); }
    static auto top() -> Formula { return make(Connective::Top); }
    static auto full() -> Formula { return make(Connective::Full); }

    static auto incl(TermSeq lhs, TermSeq rhs, InclFlavor flavor = InclFlavor::Plain) -> Formula {
      if (lhs.size() != rhs.size())
        throw Error("inclusion atom sides differ in length (" + std::to_string(lhs.size()) + " vs "
                    + std::to_string(rhs.size()) + ")");
      auto n = std::make_shared<Node>();
      n->op = Connective::Incl;
      n->flavor = flavor;
      n->lhs = std::move(lhs);
      n->rhs = std::move(rhs);
      return finish(std::move(n));
    }

    static auto conj(Formula l, Formula r) -> Formula { return binary(Connective::And, std::move(l), std::move(r)); }
    static auto split_or(Formula l, Formula r) -> Formula { return binary(Connective::SplitOr, std::move(l), std::move(r)); }
    static auto global_or(Formula l, Formula r) -> Formula { return binary(Connective::GlobalOr, std::move(l), std::move(r)); }
    static auto strict_or(Formula l, Formula r) -> Formula { return binary(Connective::StrictOr, std::move(l), std::move(r)); }

    static auto binary(Connective op, Formula l, Formula r) -> Formula {
      auto n = std::make_shared<Node>();
      n->op = op;
      n->left = std::move(l.node_);
      n->right = std::move(r.node_);
      return finish(std::move(n));
    }

    static auto might(MightKind kind, Formula body) -> Formula {
      auto n = std::make_shared<Node>();
      n->op = Connective::Might;
      n->might = kind;
      n->left = std::move(body.node_);
      return finish(std::move(n));
    }

    // Left-associated folds; `empty` is returned for an empty list.
    static auto fold(Connective op, std::vector<Formula> const& xs, Formula const& empty) -> Formula {
      if (xs.empty()) return empty;
      Formula acc = xs.front();
      for (std::size_t i = 1; i < xs.size(); i++) acc = binary(op, acc, xs[i]);
      return acc;
    }

    auto op() const noexcept -> Connective { return node_->op; }
    auto flavor() const noexcept -> InclFlavor { return node_->flavor; }
    auto might_kind() const noexcept -> MightKind { return node_->might; }
    auto lhs() const noexcept -> TermSeq const& { return node_->lhs; }
    auto rhs() const noexcept -> TermSeq const& { return node_->rhs; }
    auto left() const -> Formula { return Formula(node_->left); }
    auto right() const -> Formula { return Formula(node_->right); }
    auto body() const -> Formula { return Formula(node_->left); }
    auto hash() const noexcept -> std::size_t { return node_->hash; }
    auto size() const noexcept -> std::size_t { return node_->size; }

    auto is(Connective c) const noexcept -> bool { return node_->op == c; }
    auto is_binary() const noexcept -> bool {
      switch (node_->op) {
        case Connective::And: case Connective::SplitOr: case Connective::GlobalOr: case Connective::StrictOr: return true;
        default: return false;
      }
    }
    auto is_incl(InclFlavor f) const noexcept -> bool { return node_->op == Connective::Incl && node_->flavor == f; }

    // Structural equality.
    friend auto operator==(Formula const& a, Formula const& b) -> bool { return equal(a.node_.get(), b.node_.get()); }

    auto contains(Connective c) const -> bool {
      if (node_->op == c) return true;
      if (node_->left && Formula(node_->left).contains(c)) return true;
      if (node_->right && Formula(node_->right).contains(c)) return true;
      return false;
    }

  private:
    struct Node {
      Connective op = Connective::Bot;
      InclFlavor flavor = InclFlavor::Plain;
      MightKind might = MightKind::Single;
      TermSeq lhs, rhs;
      std::shared_ptr<Node const> left, right;
      std::size_t hash = 0;
      std::size_t size = 1;
    };

    explicit Formula(std::shared_ptr<Node const> n): node_(std::move(n)) {}

    static auto make(Connective op) -> Formula {
      auto n = std::make_shared<Node>();
      n->op = op;
      return finish(std::move(n));
    }

    static auto mix(std::size_t h, std::size_t v) noexcept -> std::size_t {
      return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    }
    static auto term_hash(Term const& t) -> std::size_t {
      return mix(static_cast<std::size_t>(t.kind), std::hash<std::string>{}(t.name));
    }

    static auto finish(std::shared_ptr<Node> n) -> Formula {
      std::size_t h = mix(static_cast<std::size_t>(n->op) + 1, static_cast<std::size_t>(n->flavor) * 7 + static_cast<std::size_t>(n->might));
      for (auto const& t: n->lhs) h = mix(h, term_hash(t));
      h = mix(h, 0xabcdef);
      for (auto const& t: n->rhs) h = mix(h, term_hash(t));
      if (n->left) { h = mix(h, n->left->hash); n->size += n->left->size; }
      if (n->right) { h = mix(h, n->right->hash); n->size += n->right->size; }
      n->hash = h;
      return Formula(std::move(n));
    }

    static auto equal(Node const* a, Node const* b) -> bool {
      if (a == b) return true;
      if (!a || !b) return false;
      if (a->hash != b->hash || a->op != b->op || a->size != b->size) return false;
      switch (a->op) {
        case Connective::Incl:
          return a->flavor == b->flavor && a->lhs == b->lhs && a->rhs == b->rhs;
        case Connective::Might:
          return a->might == b->might && equal(a->left.get(), b->left.get());
        case Connective::And: case Connective::SplitOr: case Connective::GlobalOr: case Connective::StrictOr:
          return equal(a->left.get(), b->left.get()) && equal(a->right.get(), b->right.get());
        default:
          return true;
      }
    }

    std::shared_ptr<Node const> node_;
  };

  struct FormulaHash {
    auto operator()(Formula const& f) const noexcept -> std::size_t { return f.hash(); }
  };

  inline auto free_props(Formula const& f) -> std::set<std::string> {
    std::set<std::string> out;
    std::function<void(Formula const&)> go = [&](Formula const& g) {
      switch (g.op()) {
        case Connective::Incl:
          for (auto const& t: g.lhs()) if (t.is_prop()) out.insert(t.name);
          for (auto const& t: g.rhs()) if (t.is_prop()) out.insert(t.name);
          break;
        case Connective::Might: go(g.body()); break;
        default:
          if (g.is_binary()) { go(g.left()); go(g.right()); }
      }
    };
    go(f);
    return out;
  }

  // Leaves of a maximal tree of `op` nodes, left to right.
  inline auto flatten(Formula const& f, Connective op) -> std::vector<Formula> {
    std::vector<Formula> out;
    std::function<void(Formula const&)> go = [&](Formula const& g) {
      if (g.op() == op) { go(g.left()); go(g.right()); }
      else out.push_back(g);
    };
    go(f);
    return out;
  }

}

#endif // TEAMLOGIC_FORMULA_HPP
