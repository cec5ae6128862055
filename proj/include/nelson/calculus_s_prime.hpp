#pragma once

// Checker for Hilbert systems whose only rule is modus ponens (the finite
// presentation of S and the weak-implication systems), a combinator toolkit
// for assembling derivations, and the constructive deduction-metatheorem
// transform: from a derivation of psi under assumptions including phi,
// produce a derivation of phi^2 => psi without phi.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "calculus_s.hpp"  // NamedProof
#include "formula.hpp"
#include "proof.hpp"
#include "report.hpp"

namespace nelson {

// Steps are HYP, MP [i,j], or an axiom name with explicit bindings.
inline CheckReport check_hilbert(const Proof& p, const CalculusPresentation& sys) {
  CheckReport rep;
  Conn mp_conn = lang_imp(sys.lang);
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& s = p.steps[i];
    StepResult sr;
    try {
      for (int ref : s.premises)
        if (ref < 0 || ref >= static_cast<int>(i))
          throw RuleError("premise reference out of range");
      if (s.formula.lang() != sys.lang) throw RuleError("formula in the wrong language");
      if (s.rule == "HYP") {
        if (!s.premises.empty()) throw RuleError("HYP takes no premises");
        if (!p.is_assumption(s.formula))
          throw RuleError("HYP formula is not among the assumptions");
      } else if (s.rule == "MP") {
        if (s.premises.size() != 2) throw RuleError("MP takes two premises");
        const Formula& minor = p.steps[s.premises[0]].formula;
        const Formula& major = p.steps[s.premises[1]].formula;
        if (!major.is_bin(mp_conn) || !(major.left() == minor) ||
            !(major.right() == s.formula))
          throw RuleError("MP premises do not fit");
      } else if (const AxiomSchema* ax = sys.find_axiom(s.rule)) {
        if (!s.premises.empty()) throw RuleError("axiom step takes no premises");
        Formula inst = instantiate_axiom_schema(*ax, s.params);
        if (!(inst == s.formula)) throw RuleError("formula is not the stated axiom instance");
      } else {
        throw RuleError("unknown justification '" + s.rule + "'");
      }
      sr.ok = true;
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

inline CheckReport check_proof_sp(const Proof& p) { return check_hilbert(p, s_prime()); }

// phi => (phi => psi)
inline Formula weak_imp(const Formula& a, const Formula& b) { return imp_twice(a, b); }

// ---------------------------------------------------------------------------
// Derivation builder over the finite presentation. Every emitted step is
// validated on the spot, so anything it produces is accepted by the checker.

class SPrimeBuilder {
 public:
  SPrimeBuilder() { p_.lang = Lang::SPrime; }

  explicit SPrimeBuilder(std::vector<Formula> assumptions) : SPrimeBuilder() {
    p_.assumptions = std::move(assumptions);
  }

  int hyp(const Formula& f) {
    if (!p_.is_assumption(f)) p_.assumptions.push_back(f);
    return push({f, "HYP", {}, {}});
  }

  int axiom(const std::string& id, const Bindings& b) {
    const AxiomSchema* ax = s_prime().find_axiom(id);
    if (!ax) throw RuleError("unknown axiom '" + id + "'");
    return push({instantiate_axiom_schema(*ax, b), id, {}, b});
  }

  int axiom(const std::string& id, std::initializer_list<std::pair<const char*, Formula>> vs) {
    Bindings b;
    for (const auto& [k, v] : vs) b.vars.emplace(k, v);
    return axiom(id, b);
  }

  int mp(int minor, int major) {
    const Formula& mj = formula(major);
    if (!mj.is_bin(Conn::Imp) || !(mj.left() == formula(minor)))
      throw RuleError("builder: MP premises do not fit");
    return push({mj.right(), "MP", {minor, major}, {}});
  }

  Formula formula(int i) const { return p_.steps[static_cast<std::size_t>(i)].formula; }

  // x => x
  int identity(const Formula& x) {
    int t = axiom("A3'", {{"phi", x}, {"psi", x}});  // T := x => (x => x)
    Formula tf = formula(t);
    int k1 = axiom("A3'", {{"phi", x}, {"psi", tf}});  // x => (T => x)
    int ex = axiom("A2'", {{"phi", x}, {"psi", tf}, {"gamma", x}});
    int s1 = mp(k1, ex);  // T => (x => x)
    return mp(t, s1);
  }

  // from i: a => b and j: b => c, derive a => c
  int compose(int i, int j) {
    const Formula& ab = formula(i);
    const Formula& bc = formula(j);
    if (!ab.is_bin(Conn::Imp) || !bc.is_bin(Conn::Imp) || !(ab.right() == bc.left()))
      throw RuleError("builder: compose premises do not fit");
    int lift = axiom("A1'", {{"phi", bc.left()}, {"psi", bc.right()}, {"gamma", ab.left()}});
    int step = mp(j, lift);  // (a => b) => (a => c)
    return mp(i, step);
  }

  // from i: a => (b => c), derive b => (a => c)
  int exchange(int i) {
    const Formula& f = formula(i);
    if (!f.is_bin(Conn::Imp) || !f.right().is_bin(Conn::Imp))
      throw RuleError("builder: exchange premise does not fit");
    int ex = axiom("A2'", {{"phi", f.left()},
                           {"psi", f.right().left()},
                           {"gamma", f.right().right()}});
    return mp(i, ex);
  }

  // from i: a => (b => c), derive (a * b) => c
  int curry(int i) {
    const Formula& f = formula(i);
    if (!f.is_bin(Conn::Imp) || !f.right().is_bin(Conn::Imp))
      throw RuleError("builder: curry premise does not fit");
    int ax = axiom("A12'", {{"phi", f.left()},
                            {"psi", f.right().left()},
                            {"gamma", f.right().right()}});
    return mp(i, ax);
  }

  // from i: (a * b) => c, derive a => (b => c)
  int uncurry(int i) {
    const Formula& f = formula(i);
    if (!f.is_bin(Conn::Imp) || !f.left().is_bin(Conn::Fuse))
      throw RuleError("builder: uncurry premise does not fit");
    Formula a = f.left().left(), b = f.left().right(), c = f.right();
    int pairup = axiom("A11'", {{"phi", a}, {"psi", b}});  // a => (b => a*b)
    int lift = axiom("A1'", {{"phi", f.left()}, {"psi", c}, {"gamma", b}});
    int inner = mp(i, lift);  // (b => a*b) => (b => c)
    int lift2 = axiom("A1'", {{"phi", Formula::imp(b, f.left())},
                              {"psi", Formula::imp(b, c)},
                              {"gamma", a}});
    int outer = mp(inner, lift2);  // (a => (b => a*b)) => (a => (b => c))
    return mp(pairup, outer);
  }

  // from i: y1 => y2, derive (x * y1) => (x * y2)
  int fuse_mono_right(const Formula& x, int i) {
    const Formula& f = formula(i);
    if (!f.is_bin(Conn::Imp)) throw RuleError("builder: fuse_mono_right premise does not fit");
    Formula y1 = f.left(), y2 = f.right();
    Formula xy2 = Formula::bin(Conn::Fuse, x, y2);
    int pairup = axiom("A11'", {{"phi", x}, {"psi", y2}});  // x => (y2 => x*y2)
    int sw = exchange(pairup);                              // y2 => (x => x*y2)
    int chain = compose(i, sw);                             // y1 => (x => x*y2)
    int back = exchange(chain);                             // x => (y1 => x*y2)
    (void)xy2;
    return curry(back);  // (x * y1) => (x * y2)
  }

  // (a * (b * c)) => ((a * b) * c)
  int assoc_right_to_left(const Formula& a, const Formula& b, const Formula& c) {
    Formula ab = Formula::bin(Conn::Fuse, a, b);
    Formula abc = Formula::bin(Conn::Fuse, ab, c);
    int start = axiom("A11'", {{"phi", ab}, {"psi", c}});  // (a*b) => (c => (a*b)*c)
    int curried = uncurry(start);                          // a => (b => (c => (a*b)*c))
    int fold = axiom("A12'", {{"phi", b}, {"psi", c}, {"gamma", abc}});
    int folded = compose_under(curried, fold);  // a => ((b*c) => (a*b)*c)
    return curry(folded);                       // (a*(b*c)) => ((a*b)*c)
  }

  // theorem x^2 => x^2 * x^2, the contraction engine of the transform
  int square_expand(const Formula& x) {
    Formula x2 = fusion_power(x, 2);
    int pot = axiom("A18'", {{"phi", x}});    // x^2 => x^3
    int up = fuse_mono_right(x, pot);         // x^3 => x^4
    int chain = compose(pot, up);             // x^2 => x^4
    int reassoc = assoc_right_to_left(x, x, x2);  // x^4 => x^2 * x^2
    return compose(chain, reassoc);
  }

  // ((a * b) => c) => (a => (b => c)), as a theorem
  int uncurry_theorem(const Formula& a, const Formula& b, const Formula& c) {
    Formula h = Formula::imp(Formula::bin(Conn::Fuse, a, b), c);
    Formula ab = Formula::bin(Conn::Fuse, a, b);
    int pairup = axiom("A11'", {{"phi", a}, {"psi", b}});  // a => (b => a*b)
    int x1 = axiom("A1'", {{"phi", ab}, {"psi", c}, {"gamma", b}});
    // x1: h => ((b => a*b) => (b => c))
    int x2 = axiom("A1'", {{"phi", Formula::imp(b, ab)},
                           {"psi", Formula::imp(b, c)},
                           {"gamma", a}});
    int x3 = compose(x1, x2);  // h => ((a => (b => a*b)) => (a => (b => c)))
    int x4 = exchange(x3);
    return mp(pairup, x4);  // h => (a => (b => c))
  }

  const std::vector<ProofStep>& steps() const { return p_.steps; }

  Proof finish(const Formula& goal) {
    Proof out = p_;
    out.goal = goal;
    return out;
  }

  Proof finish() { return finish(p_.steps.back().formula); }

 private:
  // from i: a => X and a theorem j: X => Y, derive a => Y (same as compose)
  int compose_under(int i, int j) { return compose(i, j); }

  int push(ProofStep s) {
    p_.steps.push_back(std::move(s));
    return static_cast<int>(p_.steps.size()) - 1;
  }

  Proof p_;
};

// ---------------------------------------------------------------------------
// Deduction metatheorem, constructive form. Given an accepted derivation of
// psi from assumptions including phi, builds an accepted derivation of
// (phi * phi) => psi from the remaining assumptions. Induction over steps:
//   - a step equal to phi itself becomes the derivation of phi^2 => phi;
//   - axioms and surviving hypotheses are weakened twice and folded;
//   - modus ponens combines the two transformed premises into
//     (phi^2 * phi^2) => psi and contracts via 3-potency.

struct DmtError : std::runtime_error {
  explicit DmtError(const std::string& w) : std::runtime_error(w) {}
};

inline Proof deduction_transform(const Proof& p, const Formula& phi) {
  if (!check_proof_sp(p).accepted()) throw DmtError("input derivation is not accepted");
  if (!p.is_assumption(phi)) throw DmtError("discharged formula is not an assumption");

  std::vector<Formula> kept;
  for (const auto& a : p.assumptions)
    if (!(a == phi)) kept.push_back(a);

  SPrimeBuilder b(kept);
  Formula phi2 = fusion_power(phi, 2);

  // case: phi^2 => phi
  auto self_case = [&]() {
    int k = b.axiom("A3'", {{"phi", phi}, {"psi", phi}});  // phi => (phi => phi)
    return b.curry(k);
  };

  // case: derived step t stands on its own (axiom instance or kept hypothesis)
  auto weaken = [&](int t) {
    Formula f = b.formula(t);
    int w1 = b.axiom("A3'", {{"phi", f}, {"psi", phi}});
    int s1 = b.mp(t, w1);  // phi => f
    int w2 = b.axiom("A3'", {{"phi", b.formula(s1)}, {"psi", phi}});
    int s2 = b.mp(s1, w2);  // phi => (phi => f)
    return b.curry(s2);     // phi^2 => f
  };

  std::map<int, int> done;  // input step -> output step proving phi^2 => f
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& s = p.steps[i];
    int out;
    if (s.formula == phi) {
      out = self_case();
    } else if (s.rule == "HYP") {
      out = weaken(b.hyp(s.formula));
    } else if (s.rule == "MP") {
      int ia = done.at(s.premises[0]);  // phi^2 => alpha
      int ib = done.at(s.premises[1]);  // phi^2 => (alpha => psi)
      Formula alpha = p.steps[s.premises[0]].formula;
      int lift = b.axiom("A1'", {{"phi", alpha}, {"psi", s.formula}, {"gamma", phi2}});
      int c1 = b.compose(ib, lift);  // phi^2 => ((phi^2 => alpha) => (phi^2 => psi))
      int c2 = b.exchange(c1);
      int c3 = b.mp(ia, c2);   // phi^2 => (phi^2 => psi)
      int c4 = b.curry(c3);    // (phi^2 * phi^2) => psi
      int ex = b.square_expand(phi);
      out = b.compose(ex, c4);  // phi^2 => psi
    } else {
      out = weaken(b.axiom(s.rule, s.params));
    }
    done[static_cast<int>(i)] = out;
  }

  Proof result = b.finish(Formula::imp(phi2, p.goal));
  // the final derived step must already be the transformed goal
  if (!(result.steps.back().formula == result.goal))
    throw DmtError("transform did not close on the goal");
  return result;
}

// Both directions between phi^2 => psi and phi => (phi => psi), as closed
// derivations over concrete variables.
inline std::vector<NamedProof> bridge_fixtures() {
  std::vector<NamedProof> out;
  Formula p = Formula::var("p", Lang::SPrime), q = Formula::var("q", Lang::SPrime);
  Formula p2q = Formula::imp(fusion_power(p, 2), q);
  Formula curried = imp_twice(p, q);
  {
    SPrimeBuilder b;
    b.uncurry_theorem(p, p, q);
    out.push_back({"bridge-export", b.finish(Formula::imp(p2q, curried))});
  }
  {
    SPrimeBuilder b;
    b.axiom("A12'", {{"phi", p}, {"psi", p}, {"gamma", q}});
    out.push_back({"bridge-import", b.finish(Formula::imp(curried, p2q))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random accepted derivations, used to exercise the transform. Steps mix
// hypotheses, axiom instances with small random bindings, and modus ponens
// whenever an applicable pair exists.

inline Proof random_sprime_proof(std::mt19937& rng, int max_steps, int max_vars) {
  const Lang L = Lang::SPrime;
  std::vector<Formula> pool;
  const char* names[] = {"p", "q", "r", "s"};
  int nv = std::min(std::max(max_vars, 1), 4);
  for (int i = 0; i < nv; ++i) pool.push_back(Formula::var(names[i], L));
  pool.push_back(Formula::bottom(L));
  pool.push_back(Formula::top(L));
  auto pick = [&](auto& v) -> decltype(v[0])& {
    std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
    return v[d(rng)];
  };
  auto small_formula = [&]() {
    std::uniform_int_distribution<int> shape(0, 4);
    switch (shape(rng)) {
      case 0: return Formula::imp(pick(pool), pick(pool));
      case 1: return Formula::conj(pick(pool), pick(pool));
      case 2: return Formula::neg(pick(pool));
      default: return pick(pool);
    }
  };

  SPrimeBuilder b;
  b.hyp(pool[0]);  // the formula a caller will typically discharge
  std::uniform_int_distribution<int> nsteps(3, std::max(3, max_steps));
  int target = nsteps(rng);
  std::uniform_int_distribution<int> kind(0, 5);
  while (static_cast<int>(b.steps().size()) < target) {
    int k = kind(rng);
    if (k == 0 && b.steps().size() < 4) {
      b.hyp(small_formula());
    } else if (k <= 3) {
      const auto& axs = s_prime().axioms;
      std::uniform_int_distribution<std::size_t> d(0, axs.size() - 1);
      const AxiomSchema& ax = axs[d(rng)];
      Bindings bind;
      for (const auto& v : vars_of(ax.body)) bind.vars.emplace(v, small_formula());
      b.axiom(ax.name, bind);
    } else {
      // look for an applicable detachment
      std::vector<std::pair<int, int>> fits;
      for (std::size_t i = 0; i < b.steps().size(); ++i)
        for (std::size_t j = 0; j < b.steps().size(); ++j)
          if (b.formula(static_cast<int>(j)).is_bin(Conn::Imp) &&
              b.formula(static_cast<int>(j)).left() == b.formula(static_cast<int>(i)))
            fits.emplace_back(static_cast<int>(i), static_cast<int>(j));
      if (fits.empty()) continue;
      auto [i, j] = pick(fits);
      b.mp(i, j);
    }
  }
  return b.finish();
}

}  // namespace nelson
