#pragma once

// Compilation of a Hilbert calculus into equational conditions: the defining
// equation sends a formula t to t = t=>t (normalized to t = 1 on algebras
// where the identity law holds), the equivalence transform sends a pair to
// its two implications, axioms become equations, and every rule instance
// becomes a quasiequation. Context-schematic rules are instantiated for each
// context length up to a bound, with fresh variables g1, g2, ...

#include <functional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "calculus.hpp"
#include "formula.hpp"
#include "term.hpp"

namespace nelson {

struct CompiledCondition {
  std::string name;
  Quasiequation q;
};

struct AlgebraizerConfig {
  // implication used by the defining equation t = alpha(t, t)
  std::function<Term(const Term&, const Term&)> e_imp;
  // implication used by the equivalence pair
  std::function<Term(const Term&, const Term&)> delta_imp;
  // emit t = 1 instead of t = alpha(t,t); sound when alpha(a,a) = 1 = top
  bool normalize = true;
};

inline AlgebraizerConfig strong_imp_config() {
  AlgebraizerConfig c;
  c.e_imp = [](const Term& a, const Term& b) { return Term::imp(a, b); };
  c.delta_imp = c.e_imp;
  c.normalize = true;
  return c;
}

// For the weak-implication systems: the defining equation uses the weak
// arrow, the equivalence pair the defined strong one, nothing normalized.
inline AlgebraizerConfig weak_imp_config() {
  AlgebraizerConfig c;
  c.e_imp = [](const Term& a, const Term& b) { return Term::wimp(a, b); };
  c.delta_imp = [](const Term& a, const Term& b) {
    return Term::meet(Term::wimp(a, b), Term::wimp(Term::neg(b), Term::neg(a)));
  };
  c.normalize = false;
  return c;
}

inline Equation transform_E(const Formula& phi) {
  Term t = term_of_formula(phi);
  return Equation{t, Term::imp(t, t)};
}

inline Equation transform_E_normalized(const Formula& phi) {
  return Equation{term_of_formula(phi), Term::top()};
}

inline std::pair<Formula, Formula> transform_Delta(const Formula& phi, const Formula& psi) {
  Conn c = lang_imp(phi.lang());
  return {Formula::bin(c, phi, psi), Formula::bin(c, psi, phi)};
}

namespace detail {

inline Equation e_of(const Term& t, const AlgebraizerConfig& cfg) {
  if (cfg.normalize) return Equation{t, Term::top()};
  return Equation{t, cfg.e_imp(t, t)};
}

// metavariables in first-occurrence order become x, y, z, ...
inline void occurrence_order(const Formula& f, std::vector<std::string>& order,
                             std::set<std::string>& seen) {
  switch (f.kind()) {
    case Formula::Kind::Var:
      if (seen.insert(f.var_name()).second) order.push_back(f.var_name());
      break;
    case Formula::Kind::Neg: occurrence_order(f.child(), order, seen); break;
    case Formula::Kind::Bin:
      occurrence_order(f.left(), order, seen);
      occurrence_order(f.right(), order, seen);
      break;
    default: break;
  }
}

inline std::map<std::string, Term> name_map(const std::vector<std::string>& order) {
  static const char* pool[] = {"x", "y", "z", "w", "u", "v"};
  std::map<std::string, Term> m;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::string nm = i < 6 ? pool[i] : "m" + std::to_string(i);
    m.emplace(order[i], Term::var(nm));
  }
  return m;
}

inline Term term_with_vars(const Formula& f, const std::map<std::string, Term>& m) {
  switch (f.kind()) {
    case Formula::Kind::Var: {
      auto it = m.find(f.var_name());
      if (it == m.end()) throw FormulaError("unmapped metavariable " + f.var_name());
      return it->second;
    }
    case Formula::Kind::Bottom: return Term::bot();
    case Formula::Kind::Top: return Term::top();
    case Formula::Kind::Neg: return Term::neg(term_with_vars(f.child(), m));
    case Formula::Kind::Bin: {
      Term l = term_with_vars(f.left(), m), r = term_with_vars(f.right(), m);
      switch (f.conn()) {
        case Conn::And: return Term::meet(l, r);
        case Conn::Or: return Term::join(l, r);
        case Conn::Imp: return Term::imp(l, r);
        case Conn::WeakImp: return Term::wimp(l, r);
        case Conn::Fuse: return Term::fuse(l, r);
      }
    }
  }
  throw FormulaError("unreachable");
}

}  // namespace detail

inline std::vector<CompiledCondition> compile_calculus(
    const CalculusPresentation& cal, int gamma_bound,
    const AlgebraizerConfig& cfg = strong_imp_config()) {
  if (gamma_bound < 0) throw FormulaError("gamma bound must be nonnegative");
  std::vector<CompiledCondition> out;
  Term x = Term::var("x"), y = Term::var("y");

  // 1: the defining equation applied to the reflexive equivalence pair
  {
    Term d = cfg.delta_imp(x, x);
    out.push_back({"E(Delta(x,x))", as_statement(detail::e_of(d, cfg))});
  }
  // 2: the equivalence pair collapses equals
  {
    Quasiequation q;
    q.premises.push_back(detail::e_of(cfg.delta_imp(x, y), cfg));
    q.premises.push_back(detail::e_of(cfg.delta_imp(y, x), cfg));
    q.conclusion = Equation{x, y};
    out.push_back({"antisymmetry", std::move(q)});
  }
  // 3: one equation per axiom
  for (const auto& ax : cal.axioms) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    detail::occurrence_order(ax.body, order, seen);
    auto m = detail::name_map(order);
    Term t = detail::term_with_vars(ax.body, m);
    out.push_back({"E(" + ax.name + ")", as_statement(detail::e_of(t, cfg))});
  }
  // 4: one quasiequation per rule instance
  for (const auto& rule : cal.rules) {
    int max_g = rule.gamma_schematic() ? gamma_bound : 0;
    for (int g = 0; g <= max_g; ++g) {
      std::vector<std::string> order;
      std::set<std::string> seen;
      for (const auto& pr : rule.premises) detail::occurrence_order(pr.body, order, seen);
      detail::occurrence_order(rule.conclusion.body, order, seen);
      auto m = detail::name_map(order);
      std::vector<Term> ctx;
      for (int k = 1; k <= g; ++k) ctx.push_back(Term::var("g" + std::to_string(k)));
      auto realize = [&](const SchemaPart& part) {
        Term body = detail::term_with_vars(part.body, m);
        if (part.ctx == CtxKind::None) return body;
        for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
          if (part.ctx == CtxKind::Chain)
            body = Term::imp(*it, body);
          else
            body = Term::imp(*it, Term::imp(*it, body));
        }
        return body;
      };
      Quasiequation q;
      for (const auto& pr : rule.premises)
        q.premises.push_back(detail::e_of(realize(pr), cfg));
      q.conclusion = detail::e_of(realize(rule.conclusion), cfg);
      std::string nm = "Q(" + rule.name + ")";
      if (rule.gamma_schematic()) nm += "|G|=" + std::to_string(g);
      out.push_back({std::move(nm), std::move(q)});
    }
  }
  return out;
}

// Runs the full compiled condition list for Nelson's original system against
// a finite algebra in the plain implication signature.
inline ClassReport check_s_def34(const FiniteAlgebra& A, int gamma_bound = 2) {
  auto conds = compile_calculus(nelson_s(), gamma_bound);
  ClassReport rep;
  rep.klass = "s-def34(bound=" + std::to_string(gamma_bound) + ")";
  for (const auto& c : conds) {
    LawResult r;
    r.law = c.name;
    auto w = find_statement_witness(A, c.q);
    if (w) {
      r.ok = false;
      r.violations = 1;  // first witness only; the sweep stops there
      Witness wit;
      for (const auto& [k, v] : *w) {
        wit.elems.push_back(v);
        if (!wit.text.empty()) wit.text += ",";
        wit.text += k + "=" + A.name_of(v);
      }
      r.witness = std::move(wit);
    }
    rep.laws.push_back(std::move(r));
  }
  return rep;
}

}  // namespace nelson
