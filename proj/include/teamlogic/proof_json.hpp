// Proof files.
//
//   {"logic": "qu", "root": node}
//   node = {"rule": name, "conclusion": text, "premises": [node...], "discharge": [{"tag", "formula"}]}
//        | {"assume": text, "tag": optional}
//
// Derivations that share subderivations may be written with an extra top-level "shared" array;
// a node {"ref": k} then stands for shared[k], and shared[k] may only refer to entries before k.

#ifndef TEAMLOGIC_PROOF_JSON_HPP
#define TEAMLOGIC_PROOF_JSON_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "proof.hpp"
#include "syntax.hpp"

namespace teamlogic {

  struct ProofFile {
    LogicId logic = LogicId::Lqu;
    Derivation root = Derivation::assume(Formula::top());
  };

  namespace detail {

    inline auto formula_field(nlohmann::json const& j, char const* key) -> Formula {
      if (!j.contains(key) || !j[key].is_string()) throw FormatError(std::string("node needs a string field '") + key + "'");
      try {
        return parse(j[key].get<std::string>());
      } catch (ParseError const& e) {
        throw FormatError(std::string("field '") + key + "': " + e.what());
      }
    }

    inline auto derivation_from_json(nlohmann::json const& j, std::vector<Derivation> const& shared) -> Derivation {
      if (!j.is_object()) throw FormatError("a derivation node must be an object");
      if (j.contains("ref")) {
        if (!j["ref"].is_number_unsigned() || j["ref"].get<std::size_t>() >= shared.size())
          throw FormatError("'ref' must index an earlier shared node");
        return shared[j["ref"].get<std::size_t>()];
      }
      if (j.contains("assume")) {
        auto f = formula_field(j, "assume");
        if (!j.contains("tag") || j["tag"].is_null()) return Derivation::assume(f);
        if (!j["tag"].is_string()) throw FormatError("'tag' must be a string");
        return Derivation::assume(f, j["tag"].get<std::string>());
      }
      if (!j.contains("rule") || !j["rule"].is_string()) throw FormatError("node needs 'rule' or 'assume'");
      auto rule = parse_rule(j["rule"].get<std::string>());
      if (!rule) throw FormatError("unknown rule '" + j["rule"].get<std::string>() + "'");
      auto concl = formula_field(j, "conclusion");
      std::vector<Derivation> premises;
      if (j.contains("premises")) {
        if (!j["premises"].is_array()) throw FormatError("'premises' must be an array");
        for (auto const& p: j["premises"]) premises.push_back(derivation_from_json(p, shared));
      }
      std::vector<Discharge> discharge;
      if (j.contains("discharge")) {
        if (!j["discharge"].is_array()) throw FormatError("'discharge' must be an array");
        for (auto const& x: j["discharge"]) {
          if (!x.is_object() || !x.contains("tag") || !x["tag"].is_string())
            throw FormatError("discharge entries need a string 'tag'");
          discharge.push_back({x["tag"].get<std::string>(), formula_field(x, "formula")});
        }
      }
      return Derivation::infer(*rule, concl, std::move(premises), std::move(discharge));
    }

  }

  inline auto proof_from_json(nlohmann::json const& j) -> ProofFile {
    if (!j.is_object() || !j.contains("root")) throw FormatError("a proof file is an object with 'logic' and 'root'");
    if (!j.contains("logic") || !j["logic"].is_string()) throw FormatError("a proof file needs a string 'logic'");
    ProofFile pf;
    try {
      pf.logic = parse_logic(j["logic"].get<std::string>());
    } catch (Error const& e) {
      throw FormatError(e.what());
    }
    std::vector<Derivation> shared;
    if (j.contains("shared")) {
      if (!j["shared"].is_array()) throw FormatError("'shared' must be an array");
      for (auto const& s: j["shared"]) shared.push_back(detail::derivation_from_json(s, shared));
    }
    pf.root = detail::derivation_from_json(j["root"], shared);
    return pf;
  }

  inline auto proof_from_string(std::string const& text) -> ProofFile {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    return proof_from_json(j);
  }

  inline auto load_proof(std::string const& path) -> ProofFile {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return proof_from_string(ss.str());
  }

  namespace detail {

    class ProofWriter {
    public:
      explicit ProofWriter(bool share): share_(share) {}

      void count(Derivation const& d) {
        if (uses_[d.id()]++ > 0) return;
        for (auto const& p: d.premises()) count(p);
      }

      auto write(Derivation const& d) -> nlohmann::json {
        if (share_ && !d.is_leaf() && uses_[d.id()] > 1) {
          if (auto it = refs_.find(d.id()); it != refs_.end()) return {{"ref", it->second}};
          auto j = plain(d);
          refs_[d.id()] = shared_.size();
          shared_.push_back(std::move(j));
          return {{"ref", refs_[d.id()]}};
        }
        return plain(d);
      }

      auto shared() const -> nlohmann::json const& { return shared_; }

    private:
      auto plain(Derivation const& d) -> nlohmann::json {
        nlohmann::json j;
        if (d.is_leaf()) {
          j["assume"] = to_string(d.conclusion());
          if (d.tag()) j["tag"] = *d.tag();
          return j;
        }
        j["rule"] = rule_name(d.rule());
        j["conclusion"] = to_string(d.conclusion());
        j["premises"] = nlohmann::json::array();
        for (auto const& p: d.premises()) j["premises"].push_back(write(p));
        j["discharge"] = nlohmann::json::array();
        for (auto const& x: d.discharge()) j["discharge"].push_back({{"tag", x.tag}, {"formula", to_string(x.formula)}});
        return j;
      }

      bool share_;
      std::map<void const*, std::size_t> uses_;
      std::map<void const*, std::size_t> refs_;
      nlohmann::json shared_ = nlohmann::json::array();
    };

  }

  // Subderivations used more than once go to "shared" when `share` is set.
  inline auto proof_to_json(Derivation const& d, LogicId logic, bool share = true) -> nlohmann::json {
    detail::ProofWriter w(share);
    w.count(d);
    nlohmann::json j;
    j["logic"] = logic_name(logic);
    auto root = w.write(d);
    if (!w.shared().empty()) j["shared"] = w.shared();
    j["root"] = std::move(root);
    return j;
  }

  inline void save_proof(std::string const& path, Derivation const& d, LogicId logic, bool share = true) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << proof_to_json(d, logic, share).dump(2) << "\n";
  }

}

#endif // TEAMLOGIC_PROOF_JSON_HPP
