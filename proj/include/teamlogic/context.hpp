// PropContext: the fixed, ordered set of proposition symbols every team and formula is read against.

#ifndef TEAMLOGIC_CONTEXT_HPP
#define TEAMLOGIC_CONTEXT_HPP

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace teamlogic {

  inline auto is_ident_start(char c) noexcept -> bool {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  inline auto is_ident_char(char c) noexcept -> bool {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  // Words of the concrete syntax that can never name a proposition.
  inline auto is_reserved_word(std::string_view s) noexcept -> bool {
    return s == "bot" || s == "top" || s == "full" || s == "might1" || s == "might" || s == "MIGHT";
  }

  inline auto is_valid_symbol(std::string_view s) noexcept -> bool {
    if (s.empty() || !is_ident_start(s.front())) return false;
    for (char c: s) if (!is_ident_char(c)) return false;
    return !is_reserved_word(s);
  }

  // Valuations are indices in [0, 2^n). The first symbol is the most significant bit, so the
  // bitstring "10" over (p q) is valuation 2.
  using Valuation = std::uint32_t;

  class PropContext {
  public:
    static constexpr std::size_t max_props = 6;

    PropContext() = default;

    explicit PropContext(std::vector<std::string> props): props_(std::move(props)) {
      if (props_.size() > max_props)
        throw BoundError("context has " + std::to_string(props_.size()) + " symbols; at most "
                         + std::to_string(max_props) + " are supported");
      for (std::size_t i = 0; i < props_.size(); i++) {
        if (!is_valid_symbol(props_[i])) throw ContextError("invalid proposition symbol '" + props_[i] + "'");
        if (!index_.emplace(props_[i], i).second) throw ContextError("duplicate proposition symbol '" + props_[i] + "'");
      }
    }

    // Whitespace-separated symbol list, e.g. "p q r".
    static auto parse(std::string_view text) -> PropContext {
      std::istringstream in{std::string(text)};
      std::vector<std::string> v;
      for (std::string s; in >> s;) v.push_back(s);
      return PropContext(std::move(v));
    }

    auto size() const noexcept -> std::size_t { return props_.size(); }
    auto props() const noexcept -> std::vector<std::string> const& { return props_; }
    auto symbol(std::size_t i) const -> std::string const& { return props_.at(i); }

    auto find(std::string_view s) const -> std::optional<std::size_t> {
      auto it = index_.find(std::string(s));
      if (it == index_.end()) return std::nullopt;
      return it->second;
    }
    auto index(std::string_view s) const -> std::size_t {
      auto i = find(s);
      if (!i) throw ContextError("unknown proposition symbol '" + std::string(s) + "'");
      return *i;
    }
    auto contains(std::string_view s) const -> bool { return find(s).has_value(); }

    auto num_valuations() const noexcept -> std::uint32_t { return std::uint32_t{1} << props_.size(); }

    // Truth value of symbol `i` under valuation `v`.
    auto value(Valuation v, std::size_t i) const noexcept -> bool {
      return (v >> (props_.size() - 1 - i)) & 1u;
    }

    auto valuation_string(Valuation v) const -> std::string {
      std::string s;
      for (std::size_t i = 0; i < props_.size(); i++) s += value(v, i) ? '1' : '0';
      return s;
    }

    auto to_string() const -> std::string {
      std::string s;
      for (std::size_t i = 0; i < props_.size(); i++) s += (i ? " " : "") + props_[i];
      return s;
    }

    friend auto operator==(PropContext const& a, PropContext const& b) -> bool { return a.props_ == b.props_; }

  private:
    std::vector<std::string> props_;
    std::unordered_map<std::string, std::size_t> index_;
  };

}

#endif // TEAMLOGIC_CONTEXT_HPP
