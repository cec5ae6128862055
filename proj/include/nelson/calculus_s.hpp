#pragma once

// Checker for Nelson's original calculus. Rule application is deterministic:
// the context list and every metavariable binding are taken verbatim from the
// step's parameters, never inferred from premise shapes (a nested implication
// decomposes ambiguously otherwise). The historically misprinted conjunction
// rule is available behind an explicit mode flag.

#include <string>
#include <vector>

#include "calculus.hpp"
#include "formula.hpp"
#include "proof.hpp"
#include "report.hpp"

namespace nelson {

enum class Mode { Standard, Historical };

struct RuleError : std::runtime_error {
  explicit RuleError(const std::string& w) : std::runtime_error(w) {}
};

inline Formula instantiate_axiom(const std::string& id, const Bindings& b) {
  const AxiomSchema* ax = nelson_s().find_axiom(id);
  if (!ax) throw RuleError("unknown axiom '" + id + "'");
  return instantiate_axiom_schema(*ax, b);
}

inline const RuleSchema* find_s_rule(const std::string& id, Mode mode) {
  if (id == historical_and_l2().name)
    return mode == Mode::Historical ? &historical_and_l2() : nullptr;
  return nelson_s().find_rule(id);
}

// Applies one schematic rule to already-derived premise formulas and returns
// the expanded conclusion. Throws RuleError on any mismatch.
inline Formula apply_rule(const std::string& id, const std::vector<Formula>& premises,
                          const Bindings& b, Mode mode = Mode::Standard) {
  const RuleSchema* r = find_s_rule(id, mode);
  if (!r) throw RuleError("rule '" + id + "' not admissible here");
  if (premises.size() != r->premises.size())
    throw RuleError("rule '" + id + "' expects " + std::to_string(r->premises.size()) +
                    " premises, got " + std::to_string(premises.size()));
  if (r->gamma_schematic() && !b.gamma)
    throw RuleError("rule '" + id + "' needs an explicit context list");
  if (!r->gamma_schematic() && b.gamma && !b.gamma->empty())
    throw RuleError("rule '" + id + "' takes no context list");
  for (std::size_t i = 0; i < premises.size(); ++i) {
    Formula expected = instantiate_part(r->premises[i], b);
    if (!(expected == premises[i]))
      throw RuleError("premise " + std::to_string(i + 1) + " of '" + id +
                      "' does not match its schema under the given bindings");
  }
  return instantiate_part(r->conclusion, b);
}

inline CheckReport check_proof(const Proof& p, Mode mode = Mode::Standard) {
  CheckReport rep;
  rep.steps.reserve(p.steps.size());
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& s = p.steps[i];
    StepResult sr;
    try {
      for (int ref : s.premises)
        if (ref < 0 || ref >= static_cast<int>(i))
          throw RuleError("premise reference out of range");
      if (s.rule == "HYP") {
        if (!s.premises.empty()) throw RuleError("HYP takes no premises");
        if (!p.is_assumption(s.formula))
          throw RuleError("HYP formula is not among the assumptions");
        sr.ok = true;
      } else if (nelson_s().find_axiom(s.rule)) {
        if (!s.premises.empty()) throw RuleError("axiom step takes no premises");
        Formula inst = instantiate_axiom(s.rule, s.params);
        if (!(inst == s.formula)) throw RuleError("formula is not the stated axiom instance");
        sr.ok = true;
      } else {
        std::vector<Formula> prem;
        prem.reserve(s.premises.size());
        for (int ref : s.premises) prem.push_back(p.steps[ref].formula);
        Formula concl = apply_rule(s.rule, prem, s.params, mode);
        if (!(concl == s.formula)) throw RuleError("formula differs from the rule's conclusion");
        sr.ok = true;
      }
    } catch (const std::exception& e) {
      sr.ok = false;
      sr.note = e.what();
    }
    rep.steps.push_back(std::move(sr));
  }
  rep.goal_ok = !p.steps.empty() && p.steps.back().formula == p.goal;
  if (!rep.goal_ok) rep.note = "last step does not establish the goal";
  return rep;
}

// A closed historical-mode derivation of an arbitrary target: project the
// target out of a conjunction, apply the swapped rule to detach the other
// conjunct, then discharge it as an A1 instance.
inline Proof inconsistency_fixture(const Formula& target) {
  Proof p;
  p.lang = Lang::S;
  p.goal = target;
  Formula aux = Formula::imp(target, target);  // an A1 instance
  Bindings b1;
  b1.vars.emplace("phi", target);
  p.steps.push_back({aux, "A1", {}, b1});
  Bindings b2;
  b2.vars.emplace("phi", target);
  b2.vars.emplace("psi", aux);
  b2.vars.emplace("gamma", target);
  p.steps.push_back({Formula::imp(Formula::conj(target, aux), target), "AND_L1", {0}, b2});
  p.steps.push_back({Formula::imp(aux, target), "AND_L2_HISTORICAL", {1}, b2});
  Bindings b4;
  b4.vars.emplace("phi", aux);
  b4.vars.emplace("gamma", target);
  b4.gamma = std::vector<Formula>{};
  p.steps.push_back({target, "E", {0, 2}, b4});
  return p;
}

// ---------------------------------------------------------------------------
// Bundled derivations: the projection/injection theorems, the exchange
// biconditional, both directions of the biconditional unpacking, and the
// congruence witnesses for each connective.

struct NamedProof {
  std::string name;
  Proof proof;
};

namespace detail {

class SProofBuilder {
 public:
  explicit SProofBuilder(std::vector<Formula> assumptions = {}) {
    p_.lang = Lang::S;
    p_.assumptions = std::move(assumptions);
  }

  int hyp(const Formula& f) {
    p_.steps.push_back({f, "HYP", {}, {}});
    return last();
  }

  int axiom(const std::string& id, Bindings b) {
    Formula f = instantiate_axiom(id, b);
    p_.steps.push_back({f, id, {}, std::move(b)});
    return last();
  }

  int rule(const std::string& id, std::vector<int> prem, Bindings b,
           Mode mode = Mode::Standard) {
    std::vector<Formula> pf;
    for (int i : prem) pf.push_back(p_.steps[i].formula);
    Formula f = apply_rule(id, pf, b, mode);
    p_.steps.push_back({f, id, std::move(prem), std::move(b)});
    return last();
  }

  // id: phi => phi
  int a1(const Formula& phi) {
    Bindings b;
    b.vars.emplace("phi", phi);
    return axiom("A1", std::move(b));
  }

  // modus ponens, i.e. rule E with the empty context
  int mp(int f_idx, int imp_idx) {
    Formula imp = formula(imp_idx);
    Bindings b;
    b.vars.emplace("phi", imp.left());
    b.vars.emplace("gamma", imp.right());
    b.gamma = std::vector<Formula>{};
    return rule("E", {f_idx, imp_idx}, std::move(b));
  }

  // from a step proving x & y, derive x (or y)
  int conj_left(int idx) {
    Formula c = formula(idx);
    int pr = a1(c.left());
    Bindings b;
    b.vars.emplace("phi", c.left());
    b.vars.emplace("psi", c.right());
    b.vars.emplace("gamma", c.left());
    int el = rule("AND_L1", {pr}, std::move(b));
    return mp(idx, el);
  }
  int conj_right(int idx) {
    Formula c = formula(idx);
    int pr = a1(c.right());
    Bindings b;
    b.vars.emplace("phi", c.left());
    b.vars.emplace("psi", c.right());
    b.vars.emplace("gamma", c.right());
    int el = rule("AND_L2", {pr}, std::move(b));
    return mp(idx, el);
  }

  Formula formula(int idx) const { return p_.steps[idx].formula; }

  Proof finish(const Formula& goal) {
    p_.goal = goal;
    return p_;
  }

 private:
  int last() const { return static_cast<int>(p_.steps.size()) - 1; }
  Proof p_;
};

inline Bindings bind(std::initializer_list<std::pair<const char*, Formula>> vs,
                     std::optional<std::vector<Formula>> gamma = std::nullopt) {
  Bindings b;
  for (const auto& [k, v] : vs) b.vars.emplace(k, v);
  b.gamma = std::move(gamma);
  return b;
}

}  // namespace detail

inline std::vector<NamedProof> builtin_fixtures() {
  using detail::bind;
  using detail::SProofBuilder;
  std::vector<NamedProof> out;
  const Lang L = Lang::S;
  Formula p = Formula::var("p", L), q = Formula::var("q", L), r = Formula::var("r", L);
  auto ctx = [](std::initializer_list<Formula> fs) {
    return std::optional<std::vector<Formula>>(std::vector<Formula>(fs));
  };

  {  // (p & q) => p
    SProofBuilder b;
    int s1 = b.a1(p);
    b.rule("AND_L1", {s1}, bind({{"phi", p}, {"psi", q}, {"gamma", p}}));
    out.push_back({"prop2.1.1", b.finish(Formula::imp(Formula::conj(p, q), p))});
  }
  {  // (p & q) => q
    SProofBuilder b;
    int s1 = b.a1(q);
    b.rule("AND_L2", {s1}, bind({{"phi", p}, {"psi", q}, {"gamma", q}}));
    out.push_back({"prop2.1.2", b.finish(Formula::imp(Formula::conj(p, q), q))});
  }
  {  // p => (p | q)
    SProofBuilder b;
    int s1 = b.a1(p);
    b.rule("OR_R1", {s1}, bind({{"phi", p}, {"psi", q}}, ctx({p})));
    out.push_back({"prop2.1.3", b.finish(Formula::imp(p, Formula::disj(p, q)))});
  }
  {  // q => (p | q)
    SProofBuilder b;
    int s1 = b.a1(q);
    b.rule("OR_R2", {s1}, bind({{"phi", p}, {"psi", q}}, ctx({q})));
    out.push_back({"prop2.1.4", b.finish(Formula::imp(q, Formula::disj(p, q)))});
  }
  {  // (p => (q => r)) <=> (q => (p => r))
    SProofBuilder b;
    Formula lhs = Formula::imp(p, Formula::imp(q, r));
    Formula rhs = Formula::imp(q, Formula::imp(p, r));
    int s1 = b.a1(lhs);
    int s2 = b.rule("P", {s1}, bind({{"phi", p}, {"psi", q}, {"gamma", r}}, ctx({lhs})));
    int s3 = b.a1(rhs);
    int s4 = b.rule("P", {s3}, bind({{"phi", q}, {"psi", p}, {"gamma", r}}, ctx({rhs})));
    b.rule("AND_R", {s2, s4},
           bind({{"phi", b.formula(s2)}, {"psi", b.formula(s4)}}, ctx({})));
    out.push_back({"prop2.1.5", b.finish(iff(lhs, rhs))});
  }
  {  // p <=> q yields p => q
    Formula h = iff(p, q);
    SProofBuilder b({h});
    int s1 = b.hyp(h);
    b.conj_left(s1);
    out.push_back({"prop2.2.fwd1", b.finish(Formula::imp(p, q))});
  }
  {  // p <=> q yields q => p
    Formula h = iff(p, q);
    SProofBuilder b({h});
    int s1 = b.hyp(h);
    b.conj_right(s1);
    out.push_back({"prop2.2.fwd2", b.finish(Formula::imp(q, p))});
  }
  {  // p => q and q => p together yield p <=> q
    SProofBuilder b({Formula::imp(p, q), Formula::imp(q, p)});
    int s1 = b.hyp(Formula::imp(p, q));
    int s2 = b.hyp(Formula::imp(q, p));
    b.rule("AND_R", {s1, s2},
           bind({{"phi", Formula::imp(p, q)}, {"psi", Formula::imp(q, p)}}, ctx({})));
    out.push_back({"prop2.2.bwd", b.finish(iff(p, q))});
  }
  {  // reflexivity witness
    SProofBuilder b;
    b.a1(p);
    out.push_back({"il1", b.finish(Formula::imp(p, p))});
  }
  {  // transitivity witness: p => q, q => r yield p => r
    SProofBuilder b({Formula::imp(p, q), Formula::imp(q, r)});
    int s1 = b.hyp(Formula::imp(p, q));
    int s2 = b.hyp(Formula::imp(q, r));
    b.rule("E", {s1, s2}, bind({{"phi", q}, {"gamma", r}}, ctx({p})));
    out.push_back({"il2", b.finish(Formula::imp(p, r))});
  }
  {  // detachment witness: p, p => q yield q
    SProofBuilder b({p, Formula::imp(p, q)});
    int s1 = b.hyp(p);
    int s2 = b.hyp(Formula::imp(p, q));
    b.mp(s1, s2);
    out.push_back({"il3", b.finish(q)});
  }
  {  // weakening witness: q yields p => q
    SProofBuilder b({q});
    int s1 = b.hyp(q);
    b.rule("IMP_R", {s1}, bind({{"phi", p}, {"gamma", q}}));
    out.push_back({"il4", b.finish(Formula::imp(p, q))});
  }

  Formula p1 = Formula::var("p1", L), p2 = Formula::var("p2", L);
  Formula q1 = Formula::var("q1", L), q2 = Formula::var("q2", L);
  {  // congruence of & : from the four implications, (p1 & p2) => (q1 & q2)
    SProofBuilder b({Formula::imp(p1, q1), Formula::imp(q1, p1), Formula::imp(p2, q2),
                     Formula::imp(q2, p2)});
    Formula pp = Formula::conj(p1, p2);
    int h1 = b.hyp(Formula::imp(p1, q1));
    int h2 = b.hyp(Formula::imp(p2, q2));
    int a = b.a1(p1);
    int proj1 = b.rule("AND_L1", {a}, bind({{"phi", p1}, {"psi", p2}, {"gamma", p1}}));
    int a2 = b.a1(p2);
    int proj2 = b.rule("AND_L2", {a2}, bind({{"phi", p1}, {"psi", p2}, {"gamma", p2}}));
    int e1 = b.rule("E", {proj1, h1}, bind({{"phi", p1}, {"gamma", q1}}, ctx({pp})));
    int e2 = b.rule("E", {proj2, h2}, bind({{"phi", p2}, {"gamma", q2}}, ctx({pp})));
    b.rule("AND_R", {e1, e2}, bind({{"phi", q1}, {"psi", q2}}, ctx({pp})));
    out.push_back({"il5-and", b.finish(Formula::imp(pp, Formula::conj(q1, q2)))});
  }
  {  // congruence of | : (p1 | p2) => (q1 | q2)
    SProofBuilder b({Formula::imp(p1, q1), Formula::imp(q1, p1), Formula::imp(p2, q2),
                     Formula::imp(q2, p2)});
    Formula qq = Formula::disj(q1, q2);
    int h1 = b.hyp(Formula::imp(p1, q1));
    int h2 = b.hyp(Formula::imp(p2, q2));
    int a = b.a1(q1);
    int in1 = b.rule("OR_R1", {a}, bind({{"phi", q1}, {"psi", q2}}, ctx({q1})));
    int a2 = b.a1(q2);
    int in2 = b.rule("OR_R2", {a2}, bind({{"phi", q1}, {"psi", q2}}, ctx({q2})));
    int e1 = b.rule("E", {h1, in1}, bind({{"phi", q1}, {"gamma", qq}}, ctx({p1})));
    int e2 = b.rule("E", {h2, in2}, bind({{"phi", q2}, {"gamma", qq}}, ctx({p2})));
    b.rule("OR_L1", {e1, e2}, bind({{"phi", p1}, {"psi", p2}, {"gamma", qq}}));
    out.push_back({"il5-or", b.finish(Formula::imp(Formula::disj(p1, p2), qq))});
  }
  {  // congruence of => : from p <=> t and q <=> r sides, (t => q) => (p => r)
    Formula t = Formula::var("t", L);
    SProofBuilder b({Formula::imp(p, t), Formula::imp(t, p), Formula::imp(q, r),
                     Formula::imp(r, q)});
    int h1 = b.hyp(Formula::imp(p, t));
    int h2 = b.hyp(Formula::imp(q, r));
    Formula tq = Formula::imp(t, q);
    int s3 = b.rule("IMP_L", {h1, h2}, bind({{"phi", t}, {"psi", q}, {"gamma", r}}, ctx({p})));
    // exchange the antecedents of p => (tq => r) under its own reflexivity
    int s4 = b.a1(b.formula(s3));
    int s5 = b.rule("P", {s4}, bind({{"phi", p}, {"psi", tq}, {"gamma", r}},
                                    ctx({b.formula(s3)})));
    b.mp(s3, s5);
    out.push_back({"il5-imp", b.finish(Formula::imp(tq, Formula::imp(p, r)))});
  }
  {  // congruence of ~ : from p <=> q sides, ~p <=> ~q
    SProofBuilder b({Formula::imp(p, q), Formula::imp(q, p)});
    int h1 = b.hyp(Formula::imp(p, q));
    int h2 = b.hyp(Formula::imp(q, p));
    int a5a = b.axiom("A5", bind({{"phi", p}, {"psi", q}}));
    int fwd = b.conj_left(a5a);  // (p => q) => (~q => ~p)
    int nqp = b.mp(h1, fwd);     // ~q => ~p
    int a5b = b.axiom("A5", bind({{"phi", q}, {"psi", p}}));
    int fwd2 = b.conj_left(a5b);  // (q => p) => (~p => ~q)
    int npq = b.mp(h2, fwd2);     // ~p => ~q
    b.rule("AND_R", {npq, nqp},
           bind({{"phi", b.formula(npq)}, {"psi", b.formula(nqp)}}, ctx({})));
    out.push_back({"il5-neg", b.finish(iff(Formula::neg(p), Formula::neg(q)))});
  }
  return out;
}

}  // namespace nelson
