// Teams (sets of valuations) and team properties (sets of teams), both as bit-sets.
//
// A team over n propositions is a 2^n-bit mask indexed by valuation; a team property is a
// 2^(2^n)-bit set indexed by team mask.

#ifndef TEAMLOGIC_TEAM_HPP
#define TEAMLOGIC_TEAM_HPP

#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "context.hpp"
#include "error.hpp"

namespace teamlogic {

  class Team {
  public:
    Team() = default;
    Team(std::uint64_t bits, std::size_t num_props): bits_(bits), n_(static_cast<std::uint8_t>(num_props)) {}

    static auto empty(std::size_t n) -> Team { return {0, n}; }
    static auto full(std::size_t n) -> Team { return {full_mask(n), n}; }
    static auto singleton(Valuation v, std::size_t n) -> Team { return {std::uint64_t{1} << v, n}; }

    static auto full_mask(std::size_t n) -> std::uint64_t {
      std::size_t k = std::size_t{1} << n;
      return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    }

    auto bits() const noexcept -> std::uint64_t { return bits_; }
    auto num_props() const noexcept -> std::size_t { return n_; }
    auto size() const noexcept -> int { return std::popcount(bits_); }
    auto is_empty() const noexcept -> bool { return bits_ == 0; }
    auto is_full() const noexcept -> bool { return bits_ == full_mask(n_); }
    auto contains(Valuation v) const noexcept -> bool { return (bits_ >> v) & 1u; }
    auto subset_of(Team const& o) const noexcept -> bool { return (bits_ & ~o.bits_) == 0; }

    auto members() const -> std::vector<Valuation> {
      std::vector<Valuation> out;
      for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<Valuation>(std::countr_zero(b)));
      return out;
    }

    friend auto operator|(Team a, Team b) -> Team { return {a.bits_ | b.bits_, a.n_}; }
    friend auto operator&(Team a, Team b) -> Team { return {a.bits_ & b.bits_, a.n_}; }
    friend auto operator-(Team a, Team b) -> Team { return {a.bits_ & ~b.bits_, a.n_}; }
    friend auto operator==(Team const&, Team const&) -> bool = default;
    friend auto operator<(Team const& a, Team const& b) -> bool { return a.bits_ < b.bits_; }

  private:
    std::uint64_t bits_ = 0;
    std::uint8_t n_ = 0;
  };

  class TeamProperty {
  public:
    static constexpr std::size_t max_props = 4;

    TeamProperty() = default;
    explicit TeamProperty(std::size_t n): n_(n) {
      if (n > max_props) throw BoundError("team properties are limited to " + std::to_string(max_props) + " propositions");
      words_.assign(std::max<std::size_t>(1, num_teams() / 64), 0);
    }

    static auto none(std::size_t n) -> TeamProperty { return TeamProperty(n); }
    static auto all(std::size_t n) -> TeamProperty {
      TeamProperty p(n);
      for (std::uint64_t t = 0; t < p.num_teams(); t++) p.insert_bits(t);
      return p;
    }
    static auto of(std::size_t n, std::initializer_list<Team> ts) -> TeamProperty {
      TeamProperty p(n);
      for (auto t: ts) p.insert(t);
      return p;
    }

    auto num_props() const noexcept -> std::size_t { return n_; }
    auto num_teams() const noexcept -> std::uint64_t { return std::uint64_t{1} << (std::size_t{1} << n_); }

    auto contains(Team t) const -> bool { return contains_bits(t.bits()); }
    auto contains_bits(std::uint64_t t) const -> bool { return (words_[t >> 6] >> (t & 63)) & 1u; }
    void insert(Team t) { check(t); insert_bits(t.bits()); }
    void insert_bits(std::uint64_t t) { words_[t >> 6] |= std::uint64_t{1} << (t & 63); }
    void erase(Team t) { check(t); words_[t.bits() >> 6] &= ~(std::uint64_t{1} << (t.bits() & 63)); }

    auto size() const -> std::size_t {
      std::size_t s = 0;
      for (auto w: words_) s += static_cast<std::size_t>(std::popcount(w));
      return s;
    }
    auto is_empty() const -> bool {
      for (auto w: words_) if (w) return false;
      return true;
    }

    template<typename F>
    void for_each(F&& f) const {
      for (std::size_t i = 0; i < words_.size(); i++)
        for (std::uint64_t w = words_[i]; w; w &= w - 1)
          f(Team((i << 6) | static_cast<std::uint64_t>(std::countr_zero(w)), n_));
    }

    auto teams() const -> std::vector<Team> {
      std::vector<Team> out;
      for_each([&](Team t) { out.push_back(t); });
      return out;
    }

    auto subset_of(TeamProperty const& o) const -> bool {
      for (std::size_t i = 0; i < words_.size(); i++) if (words_[i] & ~o.words_[i]) return false;
      return true;
    }

    friend auto operator|(TeamProperty a, TeamProperty const& b) -> TeamProperty {
      for (std::size_t i = 0; i < a.words_.size(); i++) a.words_[i] |= b.words_[i];
      return a;
    }
    friend auto operator&(TeamProperty a, TeamProperty const& b) -> TeamProperty {
      for (std::size_t i = 0; i < a.words_.size(); i++) a.words_[i] &= b.words_[i];
      return a;
    }
    friend auto operator-(TeamProperty a, TeamProperty const& b) -> TeamProperty {
      for (std::size_t i = 0; i < a.words_.size(); i++) a.words_[i] &= ~b.words_[i];
      return a;
    }
    friend auto operator==(TeamProperty const& a, TeamProperty const& b) -> bool {
      if (a.n_ != b.n_) return false;
      // Unused high bits of a single word are always zero.
      return a.words_ == b.words_;
    }

    // Word-level access for exhaustive enumeration at small contexts (num_teams() <= 64).
    auto low_word() const -> std::uint64_t { return words_.front(); }
    static auto from_low_word(std::size_t n, std::uint64_t w) -> TeamProperty {
      TeamProperty p(n);
      p.words_[0] = w & (p.num_teams() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p.num_teams()) - 1);
      return p;
    }

  private:
    void check(Team t) const {
      if (t.num_props() != n_) throw ContextError("team and property are over contexts of different sizes");
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
  };

  // ---- literals ----------------------------------------------------------------------------------

  inline auto parse_valuation(std::string_view s, PropContext const& ctx) -> Valuation {
    if (s.size() != ctx.size()) throw Error("valuation '" + std::string(s) + "' must have " + std::to_string(ctx.size()) + " bits");
    Valuation v = 0;
    for (char c: s) {
      if (c != '0' && c != '1') throw Error("valuation '" + std::string(s) + "' must be a bitstring");
      v = (v << 1) | static_cast<Valuation>(c == '1');
    }
    return v;
  }

  inline auto trim(std::string_view s) -> std::string_view {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  // "10,01", "FULL", "EMPTY". With an empty context the only valuation is written "" and the
  // full team must be written FULL.
  inline auto parse_team(std::string_view text, PropContext const& ctx) -> Team {
    auto s = trim(text);
    if (s == "FULL") return Team::full(ctx.size());
    if (s == "EMPTY" || s.empty()) return Team::empty(ctx.size());
    Team t = Team::empty(ctx.size());
    std::size_t start = 0;
    while (start <= s.size()) {
      auto end = s.find(',', start);
      if (end == std::string_view::npos) end = s.size();
      t = t | Team::singleton(parse_valuation(trim(s.substr(start, end - start)), ctx), ctx.size());
      start = end + 1;
    }
    return t;
  }

  inline auto format_team(Team t, PropContext const& ctx) -> std::string {
    if (t.is_full()) return "FULL";
    if (t.is_empty()) return "EMPTY";
    std::string out;
    for (auto v: t.members()) out += (out.empty() ? "" : ",") + ctx.valuation_string(v);
    return out;
  }

  // "EMPTY;10,01;FULL" or a JSON array of arrays of bitstrings.
  inline auto parse_property(std::string_view text, PropContext const& ctx) -> TeamProperty {
    if (ctx.size() > TeamProperty::max_props) throw BoundError("context too large for a team property");
    TeamProperty p(ctx.size());
    auto s = trim(text);
    if (!s.empty() && s.front() == '[') {
      auto j = nlohmann::json::parse(s);
      if (!j.is_array()) throw Error("team property JSON must be an array");
      for (auto const& team: j) {
        if (!team.is_array()) throw Error("each team must be a JSON array of bitstrings");
        Team t = Team::empty(ctx.size());
        for (auto const& v: team) t = t | Team::singleton(parse_valuation(v.get<std::string>(), ctx), ctx.size());
        p.insert(t);
      }
      return p;
    }
    std::size_t start = 0;
    while (start <= s.size()) {
      auto end = s.find(';', start);
      if (end == std::string_view::npos) end = s.size();
      p.insert(parse_team(s.substr(start, end - start), ctx));
      start = end + 1;
    }
    return p;
  }

  inline auto format_property(TeamProperty const& p, PropContext const& ctx) -> std::string {
    std::string out;
    bool first = true;
    p.for_each([&](Team t) {
      out += (first ? "" : ";") + format_team(t, ctx);
      first = false;
    });
    return out;
  }

  inline auto property_to_json(TeamProperty const& p, PropContext const& ctx) -> nlohmann::json {
    auto j = nlohmann::json::array();
    p.for_each([&](Team t) {
      auto team = nlohmann::json::array();
      for (auto v: t.members()) team.push_back(ctx.valuation_string(v));
      j.push_back(team);
    });
    return j;
  }

}

#endif // TEAMLOGIC_TEAM_HPP
