#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "nelson/demos.hpp"
#include "nelson/model_search.hpp"

using namespace nelson;

namespace {

std::string fixture(const std::string& name) {
  return std::string(NELSON_FIXTURE_DIR) + "/" + name;
}

// Independent oracle for the two-element count: loop over every table
// combination and test the class laws with inline loops, no shared engine.
int raw_two_element_count() {
  int count = 0;
  std::vector<std::vector<int>> seen;
  for (int me = 0; me < 16; ++me)
    for (int jo = 0; jo < 16; ++jo)
      for (int im = 0; im < 16; ++im)
        for (int fu = 0; fu < 16; ++fu) {
          auto get = [](int bits, int a, int b) { return (bits >> (a * 2 + b)) & 1; };
          auto meet = [&](int a, int b) { return get(me, a, b); };
          auto join = [&](int a, int b) { return get(jo, a, b); };
          auto imp = [&](int a, int b) { return get(im, a, b); };
          auto fuse = [&](int a, int b) { return get(fu, a, b); };
          auto leq = [&](int a, int b) { return meet(a, b) == a; };
          bool ok = true;
          // bounded lattice with 0 at the bottom and 1 at the top
          for (int a = 0; a < 2 && ok; ++a) {
            ok = meet(a, a) == a && join(a, a) == a && meet(0, a) == 0 && join(1, a) == 1 &&
                 meet(1, a) == a && join(0, a) == a;
            for (int b = 0; b < 2 && ok; ++b) {
              ok = meet(a, b) == meet(b, a) && join(a, b) == join(b, a) &&
                   meet(a, join(a, b)) == a && join(a, meet(a, b)) == a && fuse(a, b) == fuse(b, a);
              for (int c = 0; c < 2 && ok; ++c)
                ok = meet(meet(a, b), c) == meet(a, meet(b, c)) &&
                     join(join(a, b), c) == join(a, join(b, c)) &&
                     fuse(fuse(a, b), c) == fuse(a, fuse(b, c)) &&
                     (leq(fuse(a, b), c) == leq(b, imp(a, c)));
            }
          }
          for (int a = 0; a < 2 && ok; ++a) ok = fuse(a, 1) == a;
          // involution and 3-potency with the derived negation
          auto neg = [&](int a) { return imp(a, 0); };
          for (int a = 0; a < 2 && ok; ++a) {
            ok = neg(neg(a)) == a;
            int sq = fuse(a, a), cb = fuse(a, fuse(a, a));
            ok = ok && leq(sq, cb);
          }
          if (!ok) continue;
          std::vector<int> tuple = {me, jo, im, fu};
          if (std::find(seen.begin(), seen.end(), tuple) == seen.end()) {
            seen.push_back(tuple);
            ++count;
          }
        }
  return count;
}

// Independent oracle at size three: the only three-element lattice is the
// chain; sweep all fusion tables and residuate directly.
std::pair<int, int> raw_three_element_counts() {
  int cibrl = 0, sprime = 0;
  int meet_t[3][3], join_t[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      meet_t[a][b] = std::min(a, b);
      join_t[a][b] = std::max(a, b);
    }
  (void)meet_t;
  (void)join_t;
  for (int code = 0; code < 19683; ++code) {  // 3^9 fusion tables
    int f[3][3];
    int c = code;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        f[a][b] = c % 3;
        c /= 3;
      }
    bool ok = true;
    for (int a = 0; a < 3 && ok; ++a) {
      ok = f[a][2] == a && f[2][a] == a;
      for (int b = 0; b < 3 && ok; ++b) {
        ok = f[a][b] == f[b][a];
        for (int x = 0; x < 3 && ok; ++x)
          ok = f[f[a][b]][x] == f[a][f[b][x]] && (a > x || f[a][b] <= f[x][b]);
      }
    }
    if (!ok) continue;
    // residuals on a chain always exist under monotonicity
    int imp[3][3];
    for (int a = 0; a < 3; ++a)
      for (int x = 0; x < 3; ++x) {
        int best = -1;
        for (int b = 0; b < 3; ++b)
          if (f[a][b] <= x) best = std::max(best, b);
        if (best < 0) ok = false;
        else imp[a][x] = best;
      }
    if (!ok) continue;
    for (int a = 0; a < 3 && ok; ++a)
      for (int b = 0; b < 3 && ok; ++b)
        for (int x = 0; x < 3 && ok; ++x)
          ok = (f[a][b] <= x) == (b <= imp[a][x]);
    if (!ok) continue;
    ++cibrl;
    bool invol = true, potent = true;
    for (int a = 0; a < 3; ++a) {
      if (imp[imp[a][0]][0] != a) invol = false;
      if (!(f[a][a] <= f[a][f[a][a]])) potent = false;
    }
    if (invol && potent) ++sprime;
  }
  return {cibrl, sprime};
}

FiniteAlgebra relabeled_l3() {
  // same chain with the middle listed first; tables permuted accordingly
  FiniteAlgebra src = parse_algebra(read_text_file(fixture("lukasiewicz3.alg")));
  int pi[3] = {1, 0, 2};  // 0 -> position 1, h -> position 0, 1 -> position 2
  FiniteAlgebra out;
  out.size = 3;
  out.names = {"mid", "zero", "one"};
  out.bot = pi[0];
  out.top = pi[2];
  out.meet.assign(9, 0);
  out.join.assign(9, 0);
  out.imp.assign(9, 0);
  std::vector<int> fuse(9, 0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      out.meet[static_cast<std::size_t>(pi[a] * 3 + pi[b])] = pi[src.meet_at(a, b)];
      out.join[static_cast<std::size_t>(pi[a] * 3 + pi[b])] = pi[src.join_at(a, b)];
      out.imp[static_cast<std::size_t>(pi[a] * 3 + pi[b])] = pi[src.imp_at(a, b)];
      fuse[static_cast<std::size_t>(pi[a] * 3 + pi[b])] = pi[src.fuse_at(a, b)];
    }
  out.fuse = fuse;
  return out;
}

}  // namespace

TEST_CASE("small enumeration counts against the raw oracles") {
  REQUIRE(enumerate_class(AlgClass::SPrime, 1).count() == 1);
  int raw2 = raw_two_element_count();
  REQUIRE(raw2 == 1);
  REQUIRE(enumerate_class(AlgClass::SPrime, 2).count() == raw2);

  auto [cibrl3, sprime3] = raw_three_element_counts();
  REQUIRE(enumerate_class(AlgClass::Cibrl, 3).count() == cibrl3);
  REQUIRE(enumerate_class(AlgClass::SPrime, 3).count() == sprime3);
  REQUIRE(sprime3 == 1);

  // the three-element member is the many-valued chain
  auto r3 = enumerate_class(AlgClass::SPrime, 3);
  FiniteAlgebra l3 = parse_algebra(read_text_file(fixture("lukasiewicz3.alg")));
  REQUIRE(isomorphic(r3.algebras[0], l3));
}

TEST_CASE("enumerated algebras satisfy their class and are pairwise distinct") {
  for (int n = 1; n <= 4; ++n) {
    auto res = enumerate_class(AlgClass::Cibrl, n);
    for (const auto& a : res.algebras) {
      REQUIRE(check_cibrl(a).passed());
      // the fusion abbreviation recovers the primitive table on every
      // involutive member
      if (search_detail::involutive(a)) REQUIRE(fusion_definability(a));
    }
    for (std::size_t i = 0; i < res.algebras.size(); ++i)
      for (std::size_t j = i + 1; j < res.algebras.size(); ++j)
        REQUIRE(!isomorphic(res.algebras[i], res.algebras[j]));
    auto sp = enumerate_class(AlgClass::SPrime, n);
    for (const auto& a : sp.algebras) REQUIRE(check_s_prime_algebra(a).passed());
    // involutive 3-potent members sit inside both parent classes
    REQUIRE(sp.count() <= enumerate_class(AlgClass::Cibrl3Potent, n).count());
  }
}

TEST_CASE("isomorphism check") {
  FiniteAlgebra l3 = parse_algebra(read_text_file(fixture("lukasiewicz3.alg")));
  REQUIRE(isomorphic(l3, relabeled_l3()));
  FiniteAlgebra g3 = parse_algebra(read_text_file(fixture("godel3.alg")));
  REQUIRE(!isomorphic(l3, g3));
  FiniteAlgebra b2 = parse_algebra(read_text_file(fixture("boolean2.alg")));
  REQUIRE(!isomorphic(l3, b2));
}

TEST_CASE("countermodel search") {
  // reflexive implication values coincide in every involutive 3-potent model
  auto eq = parse_statement("x => x = y => y");
  REQUIRE(!find_countermodel(eq, AlgClass::SPrime, 4).has_value());
  // but not across the weak-arrow lattices under the strong implication
  auto cm = find_countermodel(eq, AlgClass::N4Lattice, 4);
  REQUIRE(cm.has_value());
  REQUIRE(cm->n4algebra.has_value());
  int top = cm->n4algebra->find_top().value();
  REQUIRE((cm->lhs_value == top || cm->rhs_value == top));
  REQUIRE(cm->lhs_value != cm->rhs_value);

  // the distribution identity that needs 3-potency: a witness exists in a
  // plain residuated lattice
  auto item2 = parse_statement("(x*x) | (y*y) = ((x*x) | (y*y)) * ((x*x) | (y*y))");
  auto cm2 = find_countermodel(item2, AlgClass::Cibrl, 4);
  REQUIRE(cm2.has_value());
  REQUIRE(!search_detail::three_potent(*cm2->algebra));
  REQUIRE(!find_countermodel(item2, AlgClass::Cibrl3Potent, 4).has_value());
}

TEST_CASE("distributivity probe") {
  // chains distribute
  FiniteAlgebra l4 = parse_algebra(read_text_file(fixture("lukasiewicz4.alg")));
  REQUIRE(check_distributivity(l4));
  // the diamond lattice reduct distributes
  N4Algebra a4 = make_a4();
  REQUIRE(check_distributivity(to_strong_signature(a4)));
  // the five-element modular diamond does not; lattice-only table with a
  // placeholder implication
  FiniteAlgebra m3;
  m3.size = 5;
  m3.names = {"0", "x", "y", "z", "1"};
  m3.bot = 0;
  m3.top = 4;
  m3.meet.assign(25, 0);
  m3.join.assign(25, 0);
  m3.imp.assign(25, 4);
  auto set = [&](std::vector<int>& t, int a, int b, int v) {
    t[static_cast<std::size_t>(a * 5 + b)] = v;
    t[static_cast<std::size_t>(b * 5 + a)] = v;
  };
  for (int a = 0; a < 5; ++a) {
    set(m3.meet, a, a, a);
    set(m3.join, a, a, a);
    set(m3.meet, 0, a, 0);
    set(m3.join, 0, a, a);
    set(m3.meet, 4, a, a);
    set(m3.join, 4, a, 4);
  }
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      if (a != b) {
        set(m3.meet, a, b, 0);
        set(m3.join, a, b, 4);
      }
  REQUIRE(!check_distributivity(m3));
}

TEST_CASE("enumeration is deterministic and parallel-stable") {
  for (int n = 2; n <= 4; ++n) {
    auto serial = enumerate_class(AlgClass::Cibrl, n, 1);
    auto again = enumerate_class(AlgClass::Cibrl, n, 1);
    auto parallel = enumerate_class(AlgClass::Cibrl, n, 4);
    REQUIRE(serial.count() == again.count());
    REQUIRE(serial.count() == parallel.count());
    for (int i = 0; i < serial.count(); ++i) {
      REQUIRE(print_algebra(serial.algebras[static_cast<std::size_t>(i)]) ==
              print_algebra(again.algebras[static_cast<std::size_t>(i)]));
      REQUIRE(print_algebra(serial.algebras[static_cast<std::size_t>(i)]) ==
              print_algebra(parallel.algebras[static_cast<std::size_t>(i)]));
    }
  }
  auto serial = enumerate_class(AlgClass::N4Lattice, 3, 1);
  auto parallel = enumerate_class(AlgClass::N4Lattice, 3, 4);
  REQUIRE(serial.count() == parallel.count());
  for (int i = 0; i < serial.count(); ++i)
    REQUIRE(print_n4_algebra(serial.n4algebras[static_cast<std::size_t>(i)]) ==
            print_n4_algebra(parallel.n4algebras[static_cast<std::size_t>(i)]));
}

TEST_CASE("ceiling and budget") {
  REQUIRE_THROWS_AS(enumerate_class(AlgClass::Cibrl, 7), AlgebraError);
  REQUIRE_NOTHROW(enumerate_class(AlgClass::Cibrl, 5, 1, 0, 6));
  auto res = enumerate_class(AlgClass::N4Lattice, 4, 1, 1);
  REQUIRE(res.partial);
}

TEST_CASE("residuals are unique given the fusion") {
  // recomputing the residual from the fusion table must reproduce the
  // stored implication on every enumerated algebra
  for (int n = 1; n <= 4; ++n)
    for (const auto& a : enumerate_class(AlgClass::Cibrl, n).algebras)
      for (int x = 0; x < n; ++x)
        for (int c = 0; c < n; ++c) {
          int best = -1;
          for (int b = 0; b < n; ++b)
            if (a.leq(a.fuse_at(x, b), c) && (best < 0 || a.leq(best, b))) best = b;
          REQUIRE(best == a.imp_at(x, c));
        }
}

TEST_CASE("negation laws and the contraction axiom across the enumeration") {
  // the involutive 3-potent members satisfy both De Morgan laws
  for (int n = 1; n <= 4; ++n)
    for (const auto& a : enumerate_class(AlgClass::SPrime, n).algebras)
      for (const auto& l : de_morgan_negation_laws(a)) {
        CAPTURE(n, l.law);
        REQUIRE(l.ok);
      }
  // and the squared-cube axiom is not redundant: it fails in an involutive
  // residuated lattice that is not 3-potent
  Term a18 = term_of_formula(s_prime().find_axiom("A18'")->body);
  bool witnessed = false;
  for (const auto& a : enumerate_class(AlgClass::Cibrl, 4).algebras)
    if (search_detail::involutive(a) && !search_detail::three_potent(a)) {
      witnessed = true;
      REQUIRE(!holds_equation(a, Equation{a18, Term::top()}));
    }
  REQUIRE(witnessed);
}

TEST_CASE("distributivity of the enumerated models, recorded outcome") {
  // every involutive 3-potent algebra found up to size 5 distributes; the
  // plain residuated lattices stop distributing at size 6
  auto distrib = parse_statement("x & (y | z) = (x & y) | (x & z)");
  REQUIRE(!find_countermodel(distrib, AlgClass::SPrime, 5).has_value());
  auto cm = find_countermodel(distrib, AlgClass::Cibrl, 6);
  REQUIRE(cm.has_value());
  REQUIRE(cm->algebra->size == 6);
}

TEST_CASE("weak-arrow enumeration") {
  auto r4 = enumerate_class(AlgClass::N4Lattice, 4);
  REQUIRE(r4.count() >= 1);
  bool has_a4 = false;
  for (const auto& a : r4.n4algebras) {
    REQUIRE(check_n4_lattice(a).passed());
    REQUIRE(check_distributivity(to_strong_signature(a)));
    if (isomorphic(a, make_a4())) has_a4 = true;
  }
  REQUIRE(has_a4);

  auto n3 = enumerate_class(AlgClass::N3Lattice, 4);
  REQUIRE(n3.count() < r4.count());
  for (const auto& a : n3.n4algebras) {
    REQUIRE(check_n3(a).passed());
    REQUIRE(!isomorphic(a, make_a4()));
  }
}
