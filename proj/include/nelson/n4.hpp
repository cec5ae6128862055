#pragma once

// Weak-implication lattices: De Morgan algebras with an extra binary
// operation, checked against the five defining conditions, their quotients
// by the derived equivalence, the strong implication table, and the
// explosive extension. File format mirrors the algebra format with `wimp`
// and `neg` blocks in place of `imp`/`fuse`; negation is one row of n names.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "calculus.hpp"
#include "calculus_s_prime.hpp"
#include "proof.hpp"
#include "report.hpp"
#include "term.hpp"

namespace nelson {

struct N4Algebra {
  int size = 0;
  std::vector<std::string> names;
  std::vector<int> meet, join, wimp;
  std::vector<int> neg;

  int meet_at(int a, int b) const { return meet[static_cast<std::size_t>(a) * size + b]; }
  int join_at(int a, int b) const { return join[static_cast<std::size_t>(a) * size + b]; }
  int wimp_at(int a, int b) const { return wimp[static_cast<std::size_t>(a) * size + b]; }
  int neg_at(int a) const { return neg[static_cast<std::size_t>(a)]; }
  bool leq(int a, int b) const { return meet_at(a, b) == a; }

  const std::string& name_of(int a) const { return names[static_cast<std::size_t>(a)]; }
  int index_of(const std::string& name) const {
    for (int i = 0; i < size; ++i)
      if (names[static_cast<std::size_t>(i)] == name) return i;
    throw AlgebraError("unknown element '" + name + "'");
  }

  // finite lattices have bounds when the tables really are a lattice
  std::optional<int> find_bot() const {
    for (int m = 0; m < size; ++m) {
      bool ok = true;
      for (int x = 0; x < size && ok; ++x) ok = meet_at(m, x) == m;
      if (ok) return m;
    }
    return std::nullopt;
  }
  std::optional<int> find_top() const {
    for (int m = 0; m < size; ++m) {
      bool ok = true;
      for (int x = 0; x < size && ok; ++x) ok = join_at(m, x) == m;
      if (ok) return m;
    }
    return std::nullopt;
  }

  void validate() const {
    if (size < 1) throw AlgebraError("empty carrier");
    if (static_cast<int>(names.size()) != size) throw AlgebraError("bad name count");
    auto chk = [&](const std::vector<int>& t, std::size_t want, const char* what) {
      if (t.size() != want) throw AlgebraError(std::string(what) + " has wrong shape");
      for (int v : t)
        if (v < 0 || v >= size) throw AlgebraError(std::string(what) + " entry out of range");
    };
    std::size_t nn = static_cast<std::size_t>(size) * size;
    chk(meet, nn, "meet");
    chk(join, nn, "join");
    chk(wimp, nn, "wimp");
    chk(neg, static_cast<std::size_t>(size), "neg");
  }
};

// (a -> b) & (~b -> ~a), pointwise.
inline std::vector<int> strong_imp_table(const N4Algebra& a) {
  std::vector<int> t(static_cast<std::size_t>(a.size) * a.size);
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y)
      t[static_cast<std::size_t>(x) * a.size + y] =
          a.meet_at(a.wimp_at(x, y), a.wimp_at(a.neg_at(y), a.neg_at(x)));
  return t;
}

// View in the plain implication signature, with the strong implication as
// the implication table. Negation then derives as a => bot.
inline FiniteAlgebra to_strong_signature(const N4Algebra& a) {
  auto b = a.find_bot();
  auto t = a.find_top();
  if (!b || !t) throw AlgebraError("lattice reduct has no bounds");
  FiniteAlgebra out;
  out.size = a.size;
  out.names = a.names;
  out.meet = a.meet;
  out.join = a.join;
  out.imp = strong_imp_table(a);
  out.bot = *b;
  out.top = *t;
  return out;
}

inline bool distributive_lattice(const N4Algebra& a) {
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y)
      for (int z = 0; z < a.size; ++z)
        if (a.meet_at(x, a.join_at(y, z)) != a.join_at(a.meet_at(x, y), a.meet_at(x, z)))
          return false;
  return true;
}

inline ClassReport check_de_morgan(const N4Algebra& A) {
  ClassReport rep;
  rep.klass = "de-morgan";
  // reuse the lattice laws through a throwaway implication table
  FiniteAlgebra shim;
  shim.size = A.size;
  shim.names = A.names;
  shim.meet = A.meet;
  shim.join = A.join;
  shim.imp.assign(static_cast<std::size_t>(A.size) * A.size, 0);
  shim.bot = A.find_bot().value_or(0);
  shim.top = A.find_top().value_or(0);
  {
    LawResult r;
    r.law = "bounds-exist";
    r.ok = A.find_bot().has_value() && A.find_top().has_value();
    rep.laws.push_back(r);
  }
  for (auto& l : bounded_lattice_laws(shim)) rep.laws.push_back(std::move(l));
  detail::LawChecker c(shim);
  c.law("distributivity", 3, [&](const int* t) {
    return A.meet_at(t[0], A.join_at(t[1], t[2])) ==
           A.join_at(A.meet_at(t[0], t[1]), A.meet_at(t[0], t[2]));
  });
  c.law("neg-involution", 1, [&](const int* t) { return A.neg_at(A.neg_at(t[0])) == t[0]; });
  c.law("neg-antitone", 2, [&](const int* t) {
    return !A.leq(t[0], t[1]) || A.leq(A.neg_at(t[1]), A.neg_at(t[0]));
  });
  c.law("de-morgan-meet", 2, [&](const int* t) {
    return A.neg_at(A.meet_at(t[0], t[1])) == A.join_at(A.neg_at(t[0]), A.neg_at(t[1]));
  });
  c.law("de-morgan-join", 2, [&](const int* t) {
    return A.neg_at(A.join_at(t[0], t[1])) == A.meet_at(A.neg_at(t[0]), A.neg_at(t[1]));
  });
  for (auto& l : c.laws) rep.laws.push_back(std::move(l));
  return rep;
}

// a is below b in the derived preorder when (a->b) -> (a->b) = a->b.
inline bool preorder_leq(const N4Algebra& A, int a, int b) {
  int v = A.wimp_at(a, b);
  return A.wimp_at(v, v) == v;
}

inline bool equiv(const N4Algebra& A, int a, int b) {
  return preorder_leq(A, a, b) && preorder_leq(A, b, a);
}

struct Quotient {
  int classes = 0;
  std::vector<int> class_of;           // element -> class id
  std::vector<std::vector<int>> members;
  std::vector<int> qmeet, qjoin, qimp;  // classes x classes

  int qmeet_at(int a, int b) const { return qmeet[static_cast<std::size_t>(a) * classes + b]; }
  int qjoin_at(int a, int b) const { return qjoin[static_cast<std::size_t>(a) * classes + b]; }
  int qimp_at(int a, int b) const { return qimp[static_cast<std::size_t>(a) * classes + b]; }
  bool qleq(int a, int b) const { return qmeet_at(a, b) == a; }
};

// Partition by the derived equivalence and induce the three operations on
// classes from arbitrary representatives. Callers must have verified the
// congruence property for the induced tables to be meaningful.
inline Quotient make_quotient(const N4Algebra& A) {
  Quotient q;
  q.class_of.assign(static_cast<std::size_t>(A.size), -1);
  for (int x = 0; x < A.size; ++x) {
    if (q.class_of[static_cast<std::size_t>(x)] >= 0) continue;
    int id = q.classes++;
    q.members.push_back({});
    for (int y = 0; y < A.size; ++y)
      if (q.class_of[static_cast<std::size_t>(y)] < 0 && equiv(A, x, y)) {
        q.class_of[static_cast<std::size_t>(y)] = id;
        q.members.back().push_back(y);
      }
  }
  auto induce = [&](auto get) {
    std::vector<int> t(static_cast<std::size_t>(q.classes) * q.classes);
    for (int a = 0; a < q.classes; ++a)
      for (int b = 0; b < q.classes; ++b) {
        int ra = q.members[static_cast<std::size_t>(a)][0];
        int rb = q.members[static_cast<std::size_t>(b)][0];
        t[static_cast<std::size_t>(a) * q.classes + b] =
            q.class_of[static_cast<std::size_t>(get(ra, rb))];
      }
    return t;
  };
  q.qmeet = induce([&](int a, int b) { return A.meet_at(a, b); });
  q.qjoin = induce([&](int a, int b) { return A.join_at(a, b); });
  q.qimp = induce([&](int a, int b) { return A.wimp_at(a, b); });
  return q;
}

inline ClassReport check_n4_lattice(const N4Algebra& A) {
  ClassReport rep = check_de_morgan(A);
  rep.klass = "n4-lattice";
  FiniteAlgebra shim;  // only for witness naming inside LawChecker
  shim.size = A.size;
  shim.names = A.names;
  detail::LawChecker c(shim);
  c.law("preorder-reflexive", 1, [&](const int* t) { return preorder_leq(A, t[0], t[0]); });
  c.law("preorder-transitive", 3, [&](const int* t) {
    return !(preorder_leq(A, t[0], t[1]) && preorder_leq(A, t[1], t[2])) ||
           preorder_leq(A, t[0], t[2]);
  });
  c.law("equiv-congruence", 4, [&](const int* t) {
    if (!equiv(A, t[0], t[1]) || !equiv(A, t[2], t[3])) return true;
    return equiv(A, A.meet_at(t[0], t[2]), A.meet_at(t[1], t[3])) &&
           equiv(A, A.join_at(t[0], t[2]), A.join_at(t[1], t[3])) &&
           equiv(A, A.wimp_at(t[0], t[2]), A.wimp_at(t[1], t[3]));
  });
  c.law("negated-arrow", 2, [&](const int* t) {
    return equiv(A, A.neg_at(A.wimp_at(t[0], t[1])),
                 A.meet_at(t[0], A.neg_at(t[1])));
  });
  c.law("order-vs-preorders", 2, [&](const int* t) {
    bool lhs = A.leq(t[0], t[1]);
    bool rhs = preorder_leq(A, t[0], t[1]) &&
               preorder_leq(A, A.neg_at(t[1]), A.neg_at(t[0]));
    return lhs == rhs;
  });
  for (auto& l : c.laws) rep.laws.push_back(std::move(l));

  // quotient must be an implicative lattice: relative pseudo-complements
  // classwise and a greatest class
  bool congruence_ok = true;
  for (const auto& l : rep.laws)
    if (l.law == "equiv-congruence") congruence_ok = l.ok;
  LawResult ql;
  ql.law = "quotient-implicative-lattice";
  if (!congruence_ok) {
    ql.ok = false;
    ql.witness = Witness{{}, "equivalence is not a congruence"};
  } else {
    Quotient q = make_quotient(A);
    bool ok = true;
    std::string why;
    int top_class = -1;
    for (int x = 0; x < q.classes && top_class < 0; ++x) {
      bool is_top = true;
      for (int y = 0; y < q.classes && is_top; ++y) is_top = q.qleq(y, x);
      if (is_top) top_class = x;
    }
    if (top_class < 0) {
      ok = false;
      why = "quotient has no greatest class";
    }
    for (int a = 0; a < q.classes && ok; ++a)
      for (int b = 0; b < q.classes && ok; ++b) {
        int r = q.qimp_at(a, b);
        if (!q.qleq(q.qmeet_at(r, a), b)) {
          ok = false;
          why = "arrow class is not below the residual bound";
          break;
        }
        for (int k = 0; k < q.classes; ++k)
          if (q.qleq(q.qmeet_at(k, a), b) && !q.qleq(k, r)) {
            ok = false;
            why = "arrow class is not the largest residual";
            break;
          }
      }
    ql.ok = ok;
    if (!ok) ql.witness = Witness{{}, why};
  }
  rep.laws.push_back(std::move(ql));
  return rep;
}

// Boolean fast path over items 2..5 and the quotient condition, for the
// enumeration inner loop; the reporting checker remains the reference.
inline bool n4_conditions_quick(const N4Algebra& A) {
  const int n = A.size;
  for (int a = 0; a < n; ++a)
    if (!preorder_leq(A, a, a)) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (preorder_leq(A, a, b))
        for (int c = 0; c < n; ++c)
          if (preorder_leq(A, b, c) && !preorder_leq(A, a, c)) return false;
      bool order = A.leq(a, b);
      bool pre = preorder_leq(A, a, b) && preorder_leq(A, A.neg_at(b), A.neg_at(a));
      if (order != pre) return false;
      if (!equiv(A, A.neg_at(A.wimp_at(a, b)), A.meet_at(a, A.neg_at(b)))) return false;
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!equiv(A, a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (!equiv(A, A.meet_at(a, c), A.meet_at(b, c))) return false;
        if (!equiv(A, A.join_at(a, c), A.join_at(b, c))) return false;
        if (!equiv(A, A.wimp_at(a, c), A.wimp_at(b, c))) return false;
        if (!equiv(A, A.wimp_at(c, a), A.wimp_at(c, b))) return false;
      }
    }
  Quotient q = make_quotient(A);
  int top_class = -1;
  for (int x = 0; x < q.classes && top_class < 0; ++x) {
    bool is_top = true;
    for (int y = 0; y < q.classes && is_top; ++y) is_top = q.qleq(y, x);
    if (is_top) top_class = x;
  }
  if (top_class < 0) return false;
  for (int a = 0; a < q.classes; ++a)
    for (int b = 0; b < q.classes; ++b) {
      int r = q.qimp_at(a, b);
      if (!q.qleq(q.qmeet_at(r, a), b)) return false;
      for (int k = 0; k < q.classes; ++k)
        if (q.qleq(q.qmeet_at(k, a), b) && !q.qleq(k, r)) return false;
    }
  return true;
}

inline bool n13_valid_quick(const N4Algebra& A) {
  for (int a = 0; a < A.size; ++a)
    for (int b = 0; b < A.size; ++b) {
      int e = A.wimp_at(A.neg_at(a), A.wimp_at(a, b));
      if (A.wimp_at(e, e) != e) return false;
    }
  return true;
}

// The explosive axiom holds when ~a -> (a -> b) always lands on a
// fixpoint of the arrow diagonal.
inline ClassReport check_n3(const N4Algebra& A) {
  ClassReport rep = check_n4_lattice(A);
  rep.klass = "n3-lattice";
  FiniteAlgebra shim;
  shim.size = A.size;
  shim.names = A.names;
  detail::LawChecker c(shim);
  c.law("n13-valid", 2, [&](const int* t) {
    int e = A.wimp_at(A.neg_at(t[0]), A.wimp_at(t[0], t[1]));
    return A.wimp_at(e, e) == e;
  });
  for (auto& l : c.laws) rep.laws.push_back(std::move(l));
  return rep;
}

// Terms evaluate with the weak arrow primitive and the strong arrow derived.
inline int eval_term_n4(const N4Algebra& a, const Term& t, const Valuation& v) {
  switch (t.op()) {
    case TOp::Var: {
      auto it = v.find(t.var_name());
      if (it == v.end()) throw AlgebraError("valuation misses variable '" + t.var_name() + "'");
      return it->second;
    }
    case TOp::Bot: {
      auto b = a.find_bot();
      if (!b) throw AlgebraError("no bottom element");
      return *b;
    }
    case TOp::Top: {
      auto tp = a.find_top();
      if (!tp) throw AlgebraError("no top element");
      return *tp;
    }
    case TOp::Neg: return a.neg_at(eval_term_n4(a, t.child(), v));
    case TOp::Meet: return a.meet_at(eval_term_n4(a, t.left(), v), eval_term_n4(a, t.right(), v));
    case TOp::Join: return a.join_at(eval_term_n4(a, t.left(), v), eval_term_n4(a, t.right(), v));
    case TOp::WImp: return a.wimp_at(eval_term_n4(a, t.left(), v), eval_term_n4(a, t.right(), v));
    case TOp::Imp: {
      int x = eval_term_n4(a, t.left(), v), y = eval_term_n4(a, t.right(), v);
      return a.meet_at(a.wimp_at(x, y), a.wimp_at(a.neg_at(y), a.neg_at(x)));
    }
    case TOp::Fuse: throw AlgebraError("fusion has no table in this signature");
  }
  throw AlgebraError("unreachable");
}

inline std::optional<Valuation> find_statement_witness_n4(const N4Algebra& a,
                                                          const Quasiequation& q) {
  std::optional<Valuation> found;
  for_each_valuation(a.size, q.variables(), [&](const Valuation& v) {
    for (const auto& e : q.premises)
      if (eval_term_n4(a, e.lhs, v) != eval_term_n4(a, e.rhs, v)) return true;
    if (eval_term_n4(a, q.conclusion.lhs, v) != eval_term_n4(a, q.conclusion.rhs, v)) {
      found = v;
      return false;
    }
    return true;
  });
  return found;
}

// ---------------------------------------------------------------------------
// The four-element diamond with both atoms negation-fixed. Negation must be
// the involution exchanging the bounds: neg 1 = 0 and neg 0 = 1 (anything
// else breaks antitonicity); the atoms map to themselves.
inline N4Algebra make_a4() {
  N4Algebra a;
  a.size = 4;
  a.names = {"0", "n", "b", "1"};
  a.meet = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3};
  a.join = {0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3};
  a.wimp = {3, 3, 3, 3, 3, 3, 3, 3, 0, 1, 2, 3, 0, 1, 2, 3};
  a.neg = {3, 1, 2, 0};
  a.validate();
  return a;
}

// ---------------------------------------------------------------------------
// File format.

inline N4Algebra parse_n4_algebra(std::string_view text) {
  auto toks = detail::tokenize_file(text);
  std::size_t i = 0;
  auto next = [&]() -> const std::string& {
    if (i >= toks.size()) throw AlgebraError("unexpected end of algebra file");
    return toks[i++];
  };
  N4Algebra a;
  if (next() != "size") throw AlgebraError("algebra file must start with 'size'");
  a.size = std::stoi(next());
  if (a.size < 1 || a.size > 64) throw AlgebraError("unreasonable size");
  if (next() != "elements") throw AlgebraError("expected 'elements'");
  for (int k = 0; k < a.size; ++k) a.names.push_back(next());
  auto read_table = [&](int rows) {
    std::vector<int> t;
    for (int k = 0; k < rows * a.size; ++k) t.push_back(a.index_of(next()));
    return t;
  };
  while (i < toks.size()) {
    const std::string& kw = next();
    if (kw == "meet")
      a.meet = read_table(a.size);
    else if (kw == "join")
      a.join = read_table(a.size);
    else if (kw == "wimp")
      a.wimp = read_table(a.size);
    else if (kw == "neg")
      a.neg = read_table(1);
    else
      throw AlgebraError("unknown block '" + kw + "'");
  }
  a.validate();
  return a;
}

inline std::string print_n4_algebra(const N4Algebra& a) {
  std::ostringstream out;
  out << "size " << a.size << "\nelements";
  for (const auto& n : a.names) out << " " << n;
  out << "\n";
  auto dump = [&](const char* hdr, auto get) {
    out << hdr << "\n";
    for (int x = 0; x < a.size; ++x) {
      for (int y = 0; y < a.size; ++y) {
        if (y) out << " ";
        out << a.name_of(get(x, y));
      }
      out << "\n";
    }
  };
  dump("meet", [&](int x, int y) { return a.meet_at(x, y); });
  dump("join", [&](int x, int y) { return a.join_at(x, y); });
  dump("wimp", [&](int x, int y) { return a.wimp_at(x, y); });
  out << "neg\n";
  for (int x = 0; x < a.size; ++x) {
    if (x) out << " ";
    out << a.name_of(a.neg_at(x));
  }
  out << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Derivations in the weak-implication Hilbert system.

namespace detail {

class N4Builder {
 public:
  N4Builder() { p_.lang = Lang::N4; }

  int hyp(const Formula& f) {
    if (!p_.is_assumption(f)) p_.assumptions.push_back(f);
    return push({f, "HYP", {}, {}});
  }
  int axiom(const std::string& id,
            std::initializer_list<std::pair<const char*, Formula>> vs) {
    const AxiomSchema* ax = n4_system().find_axiom(id);
    if (!ax) throw RuleError("unknown axiom '" + id + "'");
    Bindings b;
    for (const auto& [k, v] : vs) b.vars.emplace(k, v);
    return push({instantiate_axiom_schema(*ax, b), id, {}, b});
  }
  int mp(int minor, int major) {
    const Formula& mj = formula(major);
    if (!mj.is_bin(Conn::WeakImp) || !(mj.left() == formula(minor)))
      throw RuleError("builder: MP premises do not fit");
    return push({mj.right(), "MP", {minor, major}, {}});
  }
  Formula formula(int i) const { return p_.steps[static_cast<std::size_t>(i)].formula; }

  // (b -> c) -> ((a -> b) -> (a -> c)) from N1 and N2
  int b_combinator(const Formula& a, const Formula& b, const Formula& c) {
    Formula bc = Formula::wimp(b, c);
    int n2a = axiom("N2", {{"phi", a}, {"psi", b}, {"gamma", c}});
    int lift = axiom("N1", {{"phi", formula(n2a)}, {"psi", bc}});
    int s1 = mp(n2a, lift);  // (b->c) -> N2-instance
    int n2b = axiom("N2", {{"phi", bc},
                           {"psi", Formula::wimp(a, bc)},
                           {"gamma", Formula::wimp(Formula::wimp(a, b), Formula::wimp(a, c))}});
    int s2 = mp(s1, n2b);
    int k2 = axiom("N1", {{"phi", bc}, {"psi", a}});
    return mp(k2, s2);
  }

  Proof finish(const Formula& goal) {
    Proof out = p_;
    out.goal = goal;
    return out;
  }

 private:
  int push(ProofStep s) {
    p_.steps.push_back(std::move(s));
    return static_cast<int>(p_.steps.size()) - 1;
  }
  Proof p_;
};

}  // namespace detail

inline std::vector<NamedProof> n4_hilbert_fixtures() {
  std::vector<NamedProof> out;
  const Lang L = Lang::N4;
  Formula p = Formula::var("p", L), q = Formula::var("q", L);
  {  // p -> p from N1 and N2 alone
    detail::N4Builder b;
    Formula pp = Formula::wimp(p, p);
    int s1 = b.axiom("N2", {{"phi", p}, {"psi", pp}, {"gamma", p}});
    int s2 = b.axiom("N1", {{"phi", p}, {"psi", pp}});
    int s3 = b.mp(s2, s1);
    int s4 = b.axiom("N1", {{"phi", p}, {"psi", p}});
    b.mp(s4, s3);
    out.push_back({"weak-identity", b.finish(pp)});
  }
  {  // an instance of the negated-arrow axiom stands on its own
    detail::N4Builder b;
    b.axiom("N12", {{"phi", p}, {"psi", q}});
    Formula goal = iff(Formula::neg(Formula::wimp(p, q)), Formula::conj(p, Formula::neg(q)));
    out.push_back({"negated-arrow-instance", b.finish(goal)});
  }
  {  // both halves of double negation composed: ~~~~p -> p
    detail::N4Builder b;
    Formula nnp = Formula::neg(Formula::neg(p));
    Formula n4p = Formula::neg(Formula::neg(nnp));
    int n9a = b.axiom("N9", {{"phi", p}});
    int e1;
    {
      int n3a = b.axiom("N3", {{"phi", Formula::wimp(nnp, p)}, {"psi", Formula::wimp(p, nnp)}});
      e1 = b.mp(n9a, n3a);  // ~~p -> p
    }
    int n9b = b.axiom("N9", {{"phi", nnp}});
    int e2;
    {
      int n3b =
          b.axiom("N3", {{"phi", Formula::wimp(n4p, nnp)}, {"psi", Formula::wimp(nnp, n4p)}});
      e2 = b.mp(n9b, n3b);  // ~~~~p -> ~~p
    }
    int comp = b.b_combinator(n4p, nnp, p);
    int half = b.mp(e1, comp);
    b.mp(e2, half);
    out.push_back({"double-negation-collapse", b.finish(Formula::wimp(n4p, p))});
  }
  return out;
}

}  // namespace nelson
