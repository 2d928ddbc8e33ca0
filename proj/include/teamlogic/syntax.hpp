// Text syntax: parsing and canonical printing.
//
//   formula := gor
//   gor     := sor ("||" sor)*
//   sor     := conj (("|" | "|s") conj)*
//   conj    := atom ("&" atom)*
//   atom    := "bot" | "top" | "full" | seq REL seq | "(" formula ")" | MIGHT atom
//   REL     := "<=" | "<=!" | "<=*"
//   seq     := "[]" | term+
//   term    := "1" | "0" | IDENT
//   MIGHT   := "might1" | "might" | "MIGHT"
//
// All binary connectives are left-associative.

#ifndef TEAMLOGIC_SYNTAX_HPP
#define TEAMLOGIC_SYNTAX_HPP

#include <cctype>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "context.hpp"
#include "error.hpp"
#include "formula.hpp"

namespace teamlogic {

  namespace detail {

    enum class Tok { End, Word, One, Zero, EmptySeq, Rel, And, Or, OrS, GOr, LParen, RParen, Bot, Top, Full, Might };

    struct Token {
      Tok kind;
      std::string text;
      std::size_t pos;
    };

    inline auto tokenize(std::string_view s) -> std::vector<Token> {
      std::vector<Token> out;
      std::size_t i = 0;
      while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { i++; continue; }
        std::size_t start = i;
        if (c == '(') { out.push_back({Tok::LParen, "(", start}); i++; continue; }
        if (c == ')') { out.push_back({Tok::RParen, ")", start}); i++; continue; }
        if (c == '&') { out.push_back({Tok::And, "&", start}); i++; continue; }
        if (c == '[') {
          if (i + 1 < s.size() && s[i + 1] == ']') { out.push_back({Tok::EmptySeq, "[]", start}); i += 2; continue; }
          throw ParseError("expected '[]'", start);
        }
        if (c == '|') {
          if (i + 1 < s.size() && s[i + 1] == '|') { out.push_back({Tok::GOr, "||", start}); i += 2; continue; }
          if (i + 1 < s.size() && s[i + 1] == 's' && (i + 2 >= s.size() || !is_ident_char(s[i + 2]))) {
            out.push_back({Tok::OrS, "|s", start}); i += 2; continue;
          }
          out.push_back({Tok::Or, "|", start}); i++; continue;
        }
        if (c == '<') {
          if (i + 1 < s.size() && s[i + 1] == '=') {
            i += 2;
            std::string rel = "<=";
            if (i < s.size() && (s[i] == '!' || s[i] == '*')) rel += s[i++];
            out.push_back({Tok::Rel, rel, start});
            continue;
          }
          throw ParseError("expected '<='", start);
        }
        if (is_ident_char(c)) {
          while (i < s.size() && is_ident_char(s[i])) i++;
          std::string w(s.substr(start, i - start));
          Tok k = Tok::Word;
          if (w == "1") k = Tok::One;
          else if (w == "0") k = Tok::Zero;
          else if (w == "bot") k = Tok::Bot;
          else if (w == "top") k = Tok::Top;
          else if (w == "full") k = Tok::Full;
          else if (w == "might1" || w == "might" || w == "MIGHT") k = Tok::Might;
          else if (!is_valid_symbol(w)) throw ParseError("invalid symbol '" + w + "'", start);
          out.push_back({k, w, start});
          continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
      out.push_back({Tok::End, "", s.size()});
      return out;
    }

    class Parser {
    public:
      Parser(std::string_view text, PropContext const* ctx): toks_(tokenize(text)), ctx_(ctx) {}

      auto run() -> Formula {
        Formula f = gor();
        if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return f;
      }

    private:
      std::vector<Token> toks_;
      std::size_t at_ = 0;
      PropContext const* ctx_;

      auto peek() const -> Token const& { return toks_[at_]; }
      auto next() -> Token const& { return toks_[at_++]; }

      auto gor() -> Formula {
        Formula f = sor();
        while (peek().kind == Tok::GOr) { next(); f = Formula::global_or(f, sor()); }
        return f;
      }
      auto sor() -> Formula {
        Formula f = conj();
        while (peek().kind == Tok::Or || peek().kind == Tok::OrS) {
          bool strict = next().kind == Tok::OrS;
          Formula r = conj();
          f = strict ? Formula::strict_or(f, r) : Formula::split_or(f, r);
        }
        return f;
      }
      auto conj() -> Formula {
        Formula f = atom();
        while (peek().kind == Tok::And) { next(); f = Formula::conj(f, atom()); }
        return f;
      }

      static auto is_term(Tok k) -> bool { return k == Tok::One || k == Tok::Zero || k == Tok::Word; }

      auto seq() -> TermSeq {
        if (peek().kind == Tok::EmptySeq) { next(); return {}; }
        if (!is_term(peek().kind)) throw ParseError("expected a term sequence", peek().pos);
        TermSeq out;
        while (is_term(peek().kind)) {
          auto const& t = next();
          if (t.kind == Tok::One) out.push_back(Term::top());
          else if (t.kind == Tok::Zero) out.push_back(Term::bot());
          else {
            if (ctx_ && !ctx_->contains(t.text)) throw ParseError("unknown proposition symbol '" + t.text + "'", t.pos);
            out.push_back(Term::prop(t.text));
          }
        }
        return out;
      }

      auto atom() -> Formula {
        auto const& t = peek();
        switch (t.kind) {
          case Tok::Bot: next(); return Formula::bot();
          case Tok::Top: next(); return Formula::top();
          case Tok::Full: next(); return Formula::full();
          case Tok::LParen: {
            next();
            Formula f = gor();
            if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
            next();
            return f;
          }
          case Tok::Might: {
            std::string w = next().text;
            MightKind k = w == "might1" ? MightKind::Single : w == "might" ? MightKind::Subteam : MightKind::NonemptySubteam;
            return Formula::might(k, atom());
          }
          default: break;
        }
        std::size_t start = t.pos;
        TermSeq lhs = seq();
        if (peek().kind != Tok::Rel) throw ParseError("expected '<=', '<=!' or '<=*'", peek().pos);
        std::string rel = next().text;
        TermSeq rhs = seq();
        if (lhs.size() != rhs.size())
          throw ParseError("inclusion atom sides differ in length (" + std::to_string(lhs.size()) + " vs "
                           + std::to_string(rhs.size()) + ")", start);
        InclFlavor fl = rel == "<=" ? InclFlavor::Plain : rel == "<=!" ? InclFlavor::NonEmpty : InclFlavor::Full;
        return Formula::incl(std::move(lhs), std::move(rhs), fl);
      }
    };

    inline auto level(Formula const& f) -> int {
      switch (f.op()) {
        case Connective::GlobalOr: return 0;
        case Connective::SplitOr: case Connective::StrictOr: return 1;
        case Connective::And: return 2;
        default: return 3;
      }
    }

    inline void print_seq(std::string& out, TermSeq const& s) {
      if (s.empty()) { out += "[]"; return; }
      for (std::size_t i = 0; i < s.size(); i++) {
        if (i) out += ' ';
        switch (s[i].kind) {
          case Term::Kind::True: out += '1'; break;
          case Term::Kind::False: out += '0'; break;
          case Term::Kind::Prop: out += s[i].name; break;
        }
      }
    }

    inline void print(std::string& out, Formula const& f, int min_level) {
      int lv = level(f);
      bool paren = lv < min_level;
      if (paren) out += '(';
      switch (f.op()) {
        case Connective::Bot: out += "bot"; break;
        case Connective::Top: out += "top"; break;
        case Connective::Full: out += "full"; break;
        case Connective::Incl:
          print_seq(out, f.lhs());
          out += f.flavor() == InclFlavor::Plain ? " <= " : f.flavor() == InclFlavor::NonEmpty ? " <=! " : " <=* ";
          print_seq(out, f.rhs());
          break;
        case Connective::Might:
          out += f.might_kind() == MightKind::Single ? "might1 " : f.might_kind() == MightKind::Subteam ? "might " : "MIGHT ";
          print(out, f.body(), 3);
          break;
        default: {
          char const* sym = f.op() == Connective::And ? " & " : f.op() == Connective::SplitOr ? " | "
                          : f.op() == Connective::StrictOr ? " |s " : " || ";
          print(out, f.left(), lv);
          out += sym;
          print(out, f.right(), lv + 1);
        }
      }
      if (paren) out += ')';
    }

  }

  // Parse without a symbol table: any identifier is accepted as a proposition.
  inline auto parse(std::string_view text) -> Formula { return detail::Parser(text, nullptr).run(); }

  // Parse, rejecting symbols outside `ctx`.
  inline auto parse(std::string_view text, PropContext const& ctx) -> Formula { return detail::Parser(text, &ctx).run(); }

  inline auto to_string(Formula const& f) -> std::string {
    std::string out;
    detail::print(out, f, 0);
    return out;
  }

  inline auto to_string(TermSeq const& s) -> std::string {
    std::string out;
    detail::print_seq(out, s);
    return out;
  }

  inline auto operator<<(std::ostream& os, Formula const& f) -> std::ostream& { return os << to_string(f); }

}

#endif // TEAMLOGIC_SYNTAX_HPP
