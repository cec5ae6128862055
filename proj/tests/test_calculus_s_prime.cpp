#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nelson/calculus_s_prime.hpp"

using namespace nelson;

namespace {
const Lang L = Lang::SPrime;
Formula V(const char* n) { return Formula::var(n, L); }
}  // namespace

TEST_CASE("modus ponens checking") {
  Proof p;
  p.lang = L;
  p.assumptions = {V("q")};
  p.goal = Formula::imp(V("p"), V("q"));
  Bindings b;
  b.vars.emplace("phi", V("q"));
  b.vars.emplace("psi", V("p"));
  p.steps.push_back({V("q"), "HYP", {}, {}});
  p.steps.push_back({Formula::imp(V("q"), Formula::imp(V("p"), V("q"))), "A3'", {}, b});
  p.steps.push_back({Formula::imp(V("p"), V("q")), "MP", {0, 1}, {}});
  REQUIRE(check_proof_sp(p).accepted());

  // premise order matters: MP [major, minor] must be rejected
  Proof swapped = p;
  swapped.steps[2].premises = {1, 0};
  REQUIRE(!check_proof_sp(swapped).accepted());
}

TEST_CASE("squared detachment of an assumption") {
  // (p * p) => p in three steps
  SPrimeBuilder b;
  int k = b.axiom("A3'", {{"phi", V("p")}, {"psi", V("p")}});
  b.curry(k);
  Proof p = b.finish(Formula::imp(fusion_power(V("p"), 2), V("p")));
  REQUIRE(p.steps.size() == 3);
  REQUIRE(check_proof_sp(p).accepted());
}

TEST_CASE("axiom schema mismatch is rejected") {
  Proof p;
  p.lang = L;
  p.goal = Formula::imp(Formula::top(L), Formula::bottom(L));
  Bindings b;
  b.vars.emplace("phi", Formula::top(L));
  p.steps.push_back({p.goal, "A17'", {}, b});
  CheckReport rep = check_proof_sp(p);
  REQUIRE(!rep.accepted());
  REQUIRE(rep.first_rejected() == 0);
}

TEST_CASE("every axiom schema instantiates and checks") {
  for (const auto& ax : s_prime().axioms) {
    Bindings b;
    for (const auto& v : vars_of(ax.body)) b.vars.emplace(v, V("p"));
    Proof p;
    p.lang = L;
    Formula inst = instantiate_axiom_schema(ax, b);
    p.goal = inst;
    p.steps.push_back({inst, ax.name, {}, b});
    CAPTURE(ax.name);
    REQUIRE(check_proof_sp(p).accepted());
  }
}

TEST_CASE("builder combinators produce accepted derivations") {
  SPrimeBuilder b;
  b.identity(V("p"));
  REQUIRE(check_proof_sp(b.finish(Formula::imp(V("p"), V("p")))).accepted());

  SPrimeBuilder c;
  int i = c.axiom("A7'", {{"phi", V("p")}, {"psi", V("q")}});   // p & q => p
  int j = c.axiom("A5'", {{"phi", V("p")}, {"psi", V("r")}});   // p => p | r
  c.compose(i, j);
  REQUIRE(check_proof_sp(c.finish(Formula::imp(Formula::conj(V("p"), V("q")),
                                               Formula::disj(V("p"), V("r")))))
              .accepted());

  SPrimeBuilder d;
  int s = d.axiom("A9'", {{"phi", V("p")}, {"psi", V("q")}});  // p => (q => p & q)
  int e = d.exchange(s);
  REQUIRE(d.formula(e) ==
          Formula::imp(V("q"), Formula::imp(V("p"), Formula::conj(V("p"), V("q")))));
  int cu = d.curry(e);
  REQUIRE(d.formula(cu) == Formula::imp(Formula::bin(Conn::Fuse, V("q"), V("p")),
                                        Formula::conj(V("p"), V("q"))));
  int un = d.uncurry(cu);
  REQUIRE(d.formula(un) == d.formula(e));
  REQUIRE(check_proof_sp(d.finish()).accepted());

  SPrimeBuilder f;
  int ax = f.axiom("A18'", {{"phi", V("p")}});
  int up = f.fuse_mono_right(V("p"), ax);
  REQUIRE(f.formula(up) == Formula::imp(fusion_power(V("p"), 3), fusion_power(V("p"), 4)));
  int sq = f.square_expand(V("p"));
  Formula p2 = fusion_power(V("p"), 2);
  REQUIRE(f.formula(sq) == Formula::imp(p2, Formula::bin(Conn::Fuse, p2, p2)));
  REQUIRE(check_proof_sp(f.finish()).accepted());
}

TEST_CASE("weak implication abbreviation") {
  REQUIRE(weak_imp(V("p"), V("q")) == Formula::imp(V("p"), Formula::imp(V("p"), V("q"))));
  REQUIRE(weak_imp(V("p"), V("p")) == Formula::imp(V("p"), Formula::imp(V("p"), V("p"))));
}

TEST_CASE("bridge derivations between the squared and doubled forms") {
  auto fixtures = bridge_fixtures();
  REQUIRE(fixtures.size() == 2);
  Formula p = V("p"), q = V("q");
  Formula squared = Formula::imp(fusion_power(p, 2), q);
  Formula doubled = imp_twice(p, q);
  for (const auto& nf : fixtures) {
    CAPTURE(nf.name);
    REQUIRE(check_proof_sp(nf.proof).accepted());
  }
  REQUIRE(fixtures[0].proof.goal == Formula::imp(squared, doubled));
  REQUIRE(fixtures[1].proof.goal == Formula::imp(doubled, squared));
}

TEST_CASE("assumption discharge on the stated examples") {
  // the assumption itself
  {
    Proof p;
    p.lang = L;
    p.assumptions = {V("p")};
    p.steps.push_back({V("p"), "HYP", {}, {}});
    p.goal = V("p");
    Proof out = deduction_transform(p, V("p"));
    REQUIRE(check_proof_sp(out).accepted());
    REQUIRE(out.goal == Formula::imp(fusion_power(V("p"), 2), V("p")));
    REQUIRE(out.assumptions.empty());
  }
  // an axiom instance with the discharged assumption unused
  {
    Proof p;
    p.lang = L;
    p.assumptions = {V("p")};
    Bindings b;
    b.vars.emplace("phi", V("q"));
    b.vars.emplace("psi", V("r"));
    Formula inst = instantiate_axiom_schema(*s_prime().find_axiom("A7'"), b);
    p.steps.push_back({inst, "A7'", {}, b});
    p.goal = inst;
    Proof out = deduction_transform(p, V("p"));
    REQUIRE(check_proof_sp(out).accepted());
    REQUIRE(out.goal == Formula::imp(fusion_power(V("p"), 2), inst));
    REQUIRE(out.assumptions.empty());
  }
  // detachment under the discharged assumption
  {
    Proof p;
    p.lang = L;
    p.assumptions = {V("p"), Formula::imp(V("p"), V("q"))};
    p.steps.push_back({V("p"), "HYP", {}, {}});
    p.steps.push_back({Formula::imp(V("p"), V("q")), "HYP", {}, {}});
    p.steps.push_back({V("q"), "MP", {0, 1}, {}});
    p.goal = V("q");
    Proof out = deduction_transform(p, V("p"));
    REQUIRE(check_proof_sp(out).accepted());
    REQUIRE(out.goal == Formula::imp(fusion_power(V("p"), 2), V("q")));
    REQUIRE(out.assumptions == std::vector<Formula>{Formula::imp(V("p"), V("q"))});
  }
  // errors
  {
    Proof p;
    p.lang = L;
    p.goal = V("p");
    p.assumptions = {V("q")};
    p.steps.push_back({V("q"), "HYP", {}, {}});
    REQUIRE_THROWS_AS(deduction_transform(p, V("p")), DmtError);  // input not accepted
    p.goal = V("q");
    REQUIRE_THROWS_AS(deduction_transform(p, V("p")), DmtError);  // not an assumption
    REQUIRE_NOTHROW(deduction_transform(p, V("q")));
  }
}

TEST_CASE("randomized discharge suite") {
  std::mt19937 rng(20240817);
  for (int i = 0; i < 30; ++i) {
    Proof p = random_sprime_proof(rng, 15, 4);
    REQUIRE(p.steps.size() <= 15);
    REQUIRE(check_proof_sp(p).accepted());
    Formula phi = p.assumptions.front();
    Proof out = deduction_transform(p, phi);
    CAPTURE(i, p.steps.size(), out.steps.size());
    REQUIRE(check_proof_sp(out).accepted());
    REQUIRE(out.goal == Formula::imp(fusion_power(phi, 2), p.goal));
    // assumptions are exactly the originals with phi removed
    for (const auto& a : out.assumptions) {
      REQUIRE(!(a == phi));
      REQUIRE(p.is_assumption(a));
    }
    for (const auto& a : p.assumptions)
      if (!(a == phi)) REQUIRE(out.is_assumption(a));
  }
}
