#pragma once

// Hilbert-style calculus presentations: schematic axioms and rules over the
// metavariables phi, psi, gamma, with optional context prefixing. A rule part
// marked Chain is read as g1 => (g2 => (... => body)) for an explicit list of
// context formulas; Chain2 nests the doubled implication instead. The same
// context list applies to every marked part of one rule instance.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "formula.hpp"

namespace nelson {

enum class CtxKind : std::uint8_t { None, Chain, Chain2 };

struct SchemaPart {
  CtxKind ctx = CtxKind::None;
  Formula body;
};

struct AxiomSchema {
  std::string name;
  Formula body;
};

struct RuleSchema {
  std::string name;
  std::vector<SchemaPart> premises;
  SchemaPart conclusion;

  bool gamma_schematic() const {
    if (conclusion.ctx != CtxKind::None) return true;
    for (const auto& p : premises)
      if (p.ctx != CtxKind::None) return true;
    return false;
  }
  bool strong_context() const {
    if (conclusion.ctx == CtxKind::Chain2) return true;
    for (const auto& p : premises)
      if (p.ctx == CtxKind::Chain2) return true;
    return false;
  }

  std::set<std::string> metavars() const {
    std::set<std::string> s = vars_of(conclusion.body);
    for (const auto& p : premises) collect_vars(p.body, s);
    return s;
  }
};

struct CalculusPresentation {
  std::string name;
  Lang lang = Lang::S;
  std::vector<AxiomSchema> axioms;
  std::vector<RuleSchema> rules;

  const AxiomSchema* find_axiom(const std::string& id) const {
    for (const auto& a : axioms)
      if (a.name == id) return &a;
    return nullptr;
  }
  const RuleSchema* find_rule(const std::string& id) const {
    for (const auto& r : rules)
      if (r.name == id) return &r;
    return nullptr;
  }
};

// Instantiation parameters for one schematic step: bindings for the
// metavariables plus, for context-schematic rules, the explicit context list.
struct Bindings {
  std::map<std::string, Formula> vars;
  std::optional<std::vector<Formula>> gamma;
};

struct InstantiationError : std::runtime_error {
  explicit InstantiationError(const std::string& w) : std::runtime_error(w) {}
};

inline Formula instantiate_part(const SchemaPart& part, const Bindings& b) {
  for (const auto& v : vars_of(part.body))
    if (!b.vars.count(v))
      throw InstantiationError("missing binding for metavariable '" + v + "'");
  Formula body = substitute(part.body, b.vars);
  if (part.ctx == CtxKind::None) return body;
  if (!b.gamma)
    throw InstantiationError("rule needs an explicit context list");
  return part.ctx == CtxKind::Chain ? imp_chain(*b.gamma, body)
                                    : imp_twice_chain(*b.gamma, body);
}

inline Formula instantiate_axiom_schema(const AxiomSchema& ax, const Bindings& b) {
  for (const auto& v : vars_of(ax.body))
    if (!b.vars.count(v))
      throw InstantiationError("missing binding for metavariable '" + v + "'");
  return substitute(ax.body, b.vars);
}

// ---------------------------------------------------------------------------
// Built-in presentations.

namespace detail {

inline Formula mv(const char* name, Lang l) { return Formula::var(name, l); }

struct SchemaCtx {
  Lang lang;
  Formula phi, psi, gamma;
  explicit SchemaCtx(Lang l)
      : lang(l), phi(mv("phi", l)), psi(mv("psi", l)), gamma(mv("gamma", l)) {}
  Formula F(std::string_view text) const { return parse_formula(text, lang); }
};

}  // namespace detail

// Nelson's original system: five axiom schemas, twenty schematic rules.
inline const CalculusPresentation& nelson_s() {
  static const CalculusPresentation p = [] {
    detail::SchemaCtx c(Lang::S);
    auto F = [&](std::string_view t) { return c.F(t); };
    CalculusPresentation pr;
    pr.name = "S";
    pr.lang = Lang::S;
    pr.axioms = {
        {"A1", F("phi => phi")},
        {"A2", F("0 => phi")},
        {"A3", F("~phi => (phi => 0)")},
        {"A4", F("~0")},
        {"A5", F("(phi => psi) <=> (~psi => ~phi)")},
    };
    auto none = [&](std::string_view t) { return SchemaPart{CtxKind::None, F(t)}; };
    auto ctx = [&](std::string_view t) { return SchemaPart{CtxKind::Chain, F(t)}; };
    auto ctx2 = [&](std::string_view t) { return SchemaPart{CtxKind::Chain2, F(t)}; };
    pr.rules = {
        {"P", {ctx("phi => (psi => gamma)")}, ctx("psi => (phi => gamma)")},
        {"C", {none("phi => (phi => (phi => gamma))")}, none("phi => (phi => gamma)")},
        {"E", {ctx("phi"), none("phi => gamma")}, ctx("gamma")},
        {"IMP_L", {ctx("phi"), none("psi => gamma")}, ctx("(phi => psi) => gamma")},
        {"IMP_R", {none("gamma")}, none("phi => gamma")},
        {"AND_L1", {none("phi => gamma")}, none("(phi & psi) => gamma")},
        {"AND_L2", {none("psi => gamma")}, none("(phi & psi) => gamma")},
        {"AND_R", {ctx("phi"), ctx("psi")}, ctx("phi & psi")},
        {"OR_L1", {none("phi => gamma"), none("psi => gamma")}, none("(phi | psi) => gamma")},
        {"OR_L2",
         {none("phi => (phi => gamma)"), none("psi => (psi => gamma)")},
         none("(phi | psi) => ((phi | psi) => gamma)")},
        {"OR_R1", {ctx("phi")}, ctx("phi | psi")},
        {"OR_R2", {ctx("psi")}, ctx("phi | psi")},
        {"NEGIMP_L", {none("(phi & ~psi) => gamma")}, none("~(phi => psi) => gamma")},
        {"NEGIMP_R", {ctx2("phi & ~psi")}, ctx2("~(phi => psi)")},
        {"NEGAND_L", {none("(~phi | ~psi) => gamma")}, none("~(phi & psi) => gamma")},
        {"NEGAND_R", {ctx("~phi | ~psi")}, ctx("~(phi & psi)")},
        {"NEGOR_L", {none("(~phi & ~psi) => gamma")}, none("~(phi | psi) => gamma")},
        {"NEGOR_R", {ctx("~phi & ~psi")}, ctx("~(phi | psi)")},
        {"NEGNEG_L", {none("phi => gamma")}, none("~~phi => gamma")},
        {"NEGNEG_R", {ctx("phi")}, ctx("~~phi")},
    };
    return pr;
  }();
  return p;
}

// The rule that appeared in the 1959 printing with hypothesis and conclusion
// swapped. Admissible only when a checker runs in historical mode.
inline const RuleSchema& historical_and_l2() {
  static const RuleSchema r = [] {
    detail::SchemaCtx c(Lang::S);
    return RuleSchema{"AND_L2_HISTORICAL",
                      {SchemaPart{CtxKind::None, c.F("(phi & psi) => gamma")}},
                      SchemaPart{CtxKind::None, c.F("psi => gamma")}};
  }();
  return r;
}

// The finite presentation: eighteen axiom schemas, modus ponens only.
inline const CalculusPresentation& s_prime() {
  static const CalculusPresentation p = [] {
    detail::SchemaCtx c(Lang::SPrime);
    auto F = [&](std::string_view t) { return c.F(t); };
    CalculusPresentation pr;
    pr.name = "SPrime";
    pr.lang = Lang::SPrime;
    pr.axioms = {
        {"A1'", F("(phi => psi) => ((gamma => phi) => (gamma => psi))")},
        {"A2'", F("(phi => (psi => gamma)) => (psi => (phi => gamma))")},
        {"A3'", F("phi => (psi => phi)")},
        {"A4'", F("(phi => gamma) => ((psi => gamma) => ((phi | psi) => gamma))")},
        {"A5'", F("phi => (phi | psi)")},
        {"A6'", F("psi => (phi | psi)")},
        {"A7'", F("(phi & psi) => phi")},
        {"A8'", F("(phi & psi) => psi")},
        {"A9'", F("phi => (psi => (phi & psi))")},
        {"A10'", F("((gamma => phi) & (gamma => psi)) => (gamma => (phi & psi))")},
        {"A11'", F("phi => (psi => (phi * psi))")},
        {"A12'", F("(phi => (psi => gamma)) => ((phi * psi) => gamma)")},
        {"A13'", F("~phi => (phi => psi)")},
        {"A14'", F("(phi => psi) <=> (~psi => ~phi)")},
        {"A15'", F("phi <=> ~~phi")},
        {"A16'", F("0 => phi")},
        {"A17'", F("phi => 1c")},
        {"A18'", F("(phi * phi) => (phi * (phi * phi))")},
    };
    pr.rules = {
        {"MP",
         {SchemaPart{CtxKind::None, F("phi")}, SchemaPart{CtxKind::None, F("phi => psi")}},
         SchemaPart{CtxKind::None, F("psi")}},
    };
    return pr;
  }();
  return p;
}

// Weak-implication system N1..N12 with modus ponens.
inline const CalculusPresentation& n4_system() {
  static const CalculusPresentation p = [] {
    detail::SchemaCtx c(Lang::N4);
    auto F = [&](std::string_view t) { return c.F(t); };
    CalculusPresentation pr;
    pr.name = "N4";
    pr.lang = Lang::N4;
    pr.axioms = {
        {"N1", F("phi -> (psi -> phi)")},
        {"N2", F("(phi -> (psi -> gamma)) -> ((phi -> psi) -> (phi -> gamma))")},
        {"N3", F("(phi & psi) -> phi")},
        {"N4", F("(phi & psi) -> psi")},
        {"N5", F("(phi -> psi) -> ((phi -> gamma) -> (phi -> (psi & gamma)))")},
        {"N6", F("phi -> (phi | psi)")},
        {"N7", F("psi -> (phi | psi)")},
        {"N8", F("(phi -> gamma) -> ((psi -> gamma) -> ((phi | psi) -> gamma))")},
        {"N9", F("~~phi <=> phi")},
        {"N10", F("~(phi | psi) <=> (~phi & ~psi)")},
        {"N11", F("~(phi & psi) <=> (~phi | ~psi)")},
        {"N12", F("~(phi -> psi) <=> (phi & ~psi)")},
    };
    pr.rules = {
        {"MP",
         {SchemaPart{CtxKind::None, F("phi")}, SchemaPart{CtxKind::None, F("phi -> psi")}},
         SchemaPart{CtxKind::None, F("psi")}},
    };
    return pr;
  }();
  return p;
}

// N3 = N4 plus the explosive axiom.
inline const CalculusPresentation& n3_system() {
  static const CalculusPresentation p = [] {
    CalculusPresentation pr = n4_system();
    pr.name = "N3";
    pr.axioms.push_back({"N13", parse_formula("~phi -> (phi -> psi)", Lang::N4)});
    return pr;
  }();
  return p;
}

// ---------------------------------------------------------------------------
// Calculus description files.
//
//   axiom <name>: <schema>
//   rule <name>: <schema> [gamma|gamma2] {, <schema> [gamma|gamma2]} / <schema> [gamma|gamma2]
//
// '#' starts a comment; metavariables are ordinary identifiers.

namespace detail {

inline SchemaPart parse_schema_part(std::string text, Lang lang) {
  CtxKind ctx = CtxKind::None;
  std::string t = strip(text);
  auto ends_with = [&](std::string_view suf) {
    return t.size() >= suf.size() && std::string_view(t).substr(t.size() - suf.size()) == suf;
  };
  if (ends_with("[gamma2]")) {
    ctx = CtxKind::Chain2;
    t = strip(std::string_view(t).substr(0, t.size() - 8));
  } else if (ends_with("[gamma]")) {
    ctx = CtxKind::Chain;
    t = strip(std::string_view(t).substr(0, t.size() - 7));
  }
  return SchemaPart{ctx, parse_formula(t, lang)};
}

}  // namespace detail

inline CalculusPresentation parse_calculus(std::string_view text, Lang lang,
                                           std::string name = "file") {
  CalculusPresentation pr;
  pr.name = std::move(name);
  pr.lang = lang;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                         : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line = detail::strip(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw ParseError("calculus file line " + std::to_string(line_no) + ": " + msg, 0);
    };
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) fail("expected ':'");
    std::string head = detail::strip(line.substr(0, colon));
    std::string rest = detail::strip(line.substr(colon + 1));
    if (head.rfind("axiom ", 0) == 0) {
      pr.axioms.push_back({detail::strip(head.substr(6)), parse_formula(rest, lang)});
    } else if (head.rfind("rule ", 0) == 0) {
      std::string rname = detail::strip(head.substr(5));
      auto sides = detail::split_top(rest, '/');
      if (sides.size() != 2) fail("rule needs exactly one '/'");
      RuleSchema r;
      r.name = rname;
      for (auto& p : detail::split_top(sides[0], ','))
        r.premises.push_back(detail::parse_schema_part(p, lang));
      r.conclusion = detail::parse_schema_part(sides[1], lang);
      pr.rules.push_back(std::move(r));
    } else {
      fail("expected 'axiom' or 'rule'");
    }
  }
  return pr;
}

inline std::string print_schema_part(const SchemaPart& p) {
  std::string s = print_formula(p.body);
  if (p.ctx == CtxKind::Chain) s += " [gamma]";
  if (p.ctx == CtxKind::Chain2) s += " [gamma2]";
  return s;
}

inline std::string print_calculus(const CalculusPresentation& pr) {
  std::string out;
  for (const auto& a : pr.axioms)
    out += "axiom " + a.name + ": " + print_formula(a.body) + "\n";
  for (const auto& r : pr.rules) {
    out += "rule " + r.name + ": ";
    for (std::size_t i = 0; i < r.premises.size(); ++i) {
      if (i) out += " , ";
      out += print_schema_part(r.premises[i]);
    }
    out += " / " + print_schema_part(r.conclusion) + "\n";
  }
  return out;
}

inline bool same_schema(const SchemaPart& a, const SchemaPart& b) {
  return a.ctx == b.ctx && a.body == b.body;
}

inline bool same_presentation(const CalculusPresentation& a, const CalculusPresentation& b) {
  if (a.lang != b.lang || a.axioms.size() != b.axioms.size() || a.rules.size() != b.rules.size())
    return false;
  for (std::size_t i = 0; i < a.axioms.size(); ++i)
    if (a.axioms[i].name != b.axioms[i].name || a.axioms[i].body != b.axioms[i].body)
      return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    const auto& x = a.rules[i];
    const auto& y = b.rules[i];
    if (x.name != y.name || x.premises.size() != y.premises.size()) return false;
    if (!same_schema(x.conclusion, y.conclusion)) return false;
    for (std::size_t j = 0; j < x.premises.size(); ++j)
      if (!same_schema(x.premises[j], y.premises[j])) return false;
  }
  return true;
}

}  // namespace nelson
