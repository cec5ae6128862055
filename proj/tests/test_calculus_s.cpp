#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "mutation_helpers.hpp"
#include "nelson/calculus_s.hpp"
#include "nelson/proof.hpp"

using namespace nelson;

namespace {
const Lang L = Lang::S;
Formula V(const char* n) { return Formula::var(n, L); }
Bindings bv(std::initializer_list<std::pair<const char*, Formula>> vs,
            std::optional<std::vector<Formula>> g = std::nullopt) {
  Bindings b;
  for (const auto& [k, v] : vs) b.vars.emplace(k, v);
  b.gamma = std::move(g);
  return b;
}
}  // namespace

TEST_CASE("axiom instantiation") {
  REQUIRE(instantiate_axiom("A2", bv({{"phi", V("q")}})) ==
          Formula::imp(Formula::bottom(L), V("q")));
  REQUIRE(instantiate_axiom("A4", bv({})) == Formula::neg(Formula::bottom(L)));
  Formula a5 = instantiate_axiom("A5", bv({{"phi", V("p")}, {"psi", V("q")}}));
  Formula pq = Formula::imp(V("p"), V("q"));
  Formula contra = Formula::imp(Formula::neg(V("q")), Formula::neg(V("p")));
  REQUIRE(a5 == Formula::conj(Formula::imp(pq, contra), Formula::imp(contra, pq)));
  REQUIRE_THROWS_AS(instantiate_axiom("A2", bv({})), InstantiationError);
  REQUIRE_THROWS_AS(instantiate_axiom("A99", bv({})), RuleError);
}

TEST_CASE("rule application") {
  // detachment is the transitivity rule with the empty context
  REQUIRE(apply_rule("E", {V("p"), Formula::imp(V("p"), V("q"))},
                     bv({{"phi", V("p")}, {"gamma", V("q")}}, std::vector<Formula>{})) ==
          V("q"));
  REQUIRE(apply_rule("AND_L1", {Formula::imp(V("p"), V("p"))},
                     bv({{"phi", V("p")}, {"psi", V("q")}, {"gamma", V("p")}})) ==
          Formula::imp(Formula::conj(V("p"), V("q")), V("p")));
  Formula triple = imp_chain({V("p"), V("p"), V("p")}, V("q"));
  REQUIRE(apply_rule("C", {triple}, bv({{"phi", V("p")}, {"gamma", V("q")}})) ==
          imp_chain({V("p"), V("p")}, V("q")));

  // the swapped historical rule detaches the other conjunct
  Formula prem = Formula::imp(Formula::conj(V("q"), V("s")), V("q"));
  REQUIRE(apply_rule("AND_L2_HISTORICAL", {prem},
                     bv({{"phi", V("q")}, {"psi", V("s")}, {"gamma", V("q")}}),
                     Mode::Historical) == Formula::imp(V("s"), V("q")));
  REQUIRE_THROWS_AS(apply_rule("AND_L2_HISTORICAL", {prem},
                               bv({{"phi", V("q")}, {"psi", V("s")}, {"gamma", V("q")}}),
                               Mode::Standard),
                    RuleError);

  // arity and schema mismatches
  REQUIRE_THROWS_AS(apply_rule("AND_L1", {}, bv({{"phi", V("p")}, {"psi", V("q")}, {"gamma", V("p")}})),
                    RuleError);
  REQUIRE_THROWS_AS(apply_rule("AND_L2", {Formula::imp(V("p"), V("p"))},
                               bv({{"phi", V("p")}, {"psi", V("q")}, {"gamma", V("p")}})),
                    RuleError);
  // context on a context-free rule is refused
  REQUIRE_THROWS_AS(apply_rule("C", {triple},
                               bv({{"phi", V("p")}, {"gamma", V("q")}},
                                  std::vector<Formula>{V("r")})),
                    RuleError);
}

TEST_CASE("whole-proof checking") {
  Proof p;
  p.lang = L;
  p.goal = Formula::imp(Formula::conj(V("p"), V("q")), V("p"));
  p.steps.push_back({Formula::imp(V("p"), V("p")), "A1", {}, bv({{"phi", V("p")}})});
  p.steps.push_back(
      {p.goal, "AND_L1", {0}, bv({{"phi", V("p")}, {"psi", V("q")}, {"gamma", V("p")}})});
  REQUIRE(check_proof(p).accepted());

  Proof wrong = p;
  wrong.steps[1].rule = "AND_L2";
  CheckReport rep = check_proof(wrong);
  REQUIRE(!rep.accepted());
  REQUIRE(rep.first_rejected() == 1);
}

TEST_CASE("derivability of anything under the historical rule") {
  for (const Formula& target : {V("q"), Formula::bottom(L)}) {
    Proof p = inconsistency_fixture(target);
    REQUIRE(p.steps.size() <= 6);
    REQUIRE(p.goal == target);
    REQUIRE(check_proof(p, Mode::Historical).accepted());
    CheckReport std_rep = check_proof(p, Mode::Standard);
    REQUIRE(!std_rep.accepted());
    int bad = std_rep.first_rejected();
    REQUIRE(bad >= 0);
    REQUIRE(p.steps[static_cast<std::size_t>(bad)].rule == "AND_L2_HISTORICAL");
  }
}

TEST_CASE("bundled derivations are accepted") {
  auto fixtures = builtin_fixtures();
  std::vector<std::string> names;
  for (const auto& nf : fixtures) {
    CAPTURE(nf.name);
    REQUIRE(check_proof(nf.proof).accepted());
    names.push_back(nf.name);
  }
  for (const char* expected :
       {"prop2.1.1", "prop2.1.2", "prop2.1.3", "prop2.1.4", "prop2.1.5", "prop2.2.fwd1",
        "prop2.2.fwd2", "prop2.2.bwd", "il1", "il2", "il3", "il4", "il5-and", "il5-or",
        "il5-imp", "il5-neg"})
    REQUIRE(std::find(names.begin(), names.end(), expected) != names.end());
}

TEST_CASE("single-step mutations are rejected") {
  std::vector<std::string> failures;
  int tried = 0;
  for (const auto& nf : builtin_fixtures())
    tried += testing::mutation_sweep(nf.proof, failures, nf.name);
  CAPTURE(failures);
  REQUIRE(failures.empty());
  REQUIRE(tried > 500);
}

TEST_CASE("locality of acceptance") {
  // an unused correct step neither helps nor hurts, and consistent
  // renumbering preserves acceptance
  auto fixtures = builtin_fixtures();
  const Proof& base = fixtures[0].proof;  // two steps, second uses first

  Proof padded;
  padded.lang = base.lang;
  padded.goal = base.goal;
  padded.assumptions = base.assumptions;
  Bindings extra;
  extra.vars.emplace("phi", V("zz"));
  padded.steps.push_back({Formula::imp(V("zz"), V("zz")), "A1", {}, extra});
  for (const auto& s : base.steps) {
    ProofStep shifted = s;
    for (int& r : shifted.premises) ++r;
    padded.steps.push_back(shifted);
  }
  REQUIRE(check_proof(padded).accepted());

  // dropping the unused step restores the original
  Proof dropped = padded;
  dropped.steps.erase(dropped.steps.begin());
  for (auto& s : dropped.steps)
    for (int& r : s.premises) --r;
  REQUIRE(check_proof(dropped).accepted());
}

TEST_CASE("proof file round-trip") {
  for (const auto& nf : builtin_fixtures()) {
    std::string text = print_proof(nf.proof);
    Proof back = parse_proof(text, L);
    REQUIRE(check_proof(back).accepted());
    REQUIRE(print_proof(back) == text);
  }
}

TEST_CASE("proof file errors") {
  REQUIRE_THROWS_AS(parse_proof("1. p ; A1 {phi := p}\n", L), ParseError);  // no goal
  REQUIRE_THROWS_AS(parse_proof("goal: p\n2. p ; HYP\n", L), ParseError);   // bad numbering
  REQUIRE_THROWS_AS(parse_proof("goal: p\n1. p ; E [3] {}\n", L), ParseError);
  REQUIRE_THROWS_AS(parse_proof("goal: p\n1. p q ; HYP\n", L), ParseError);
}

TEST_CASE("checking is deterministic") {
  Proof p = inconsistency_fixture(V("q"));
  CheckReport a = check_proof(p, Mode::Historical);
  CheckReport b = check_proof(p, Mode::Historical);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    REQUIRE(a.steps[i].ok == b.steps[i].ok);
    REQUIRE(a.steps[i].note == b.steps[i].note);
  }
}
