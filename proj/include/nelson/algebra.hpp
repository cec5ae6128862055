#pragma once

// Finite algebras over the residuated-lattice signature. The carrier is
// 0..n-1; tables are row-major with the row giving the left argument.
// Negation is always the derived ~a := a => 0; fusion may be stored as a
// primitive table or derived as ~(a => ~b).
//
// File format:
//   size n
//   elements a b c ...
//   bot <name>
//   top <name>
//   meet / join / imp / fuse blocks, each of n rows of n names
// '#' starts a comment anywhere.

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "report.hpp"
#include "term.hpp"

namespace nelson {

struct AlgebraError : std::runtime_error {
  explicit AlgebraError(const std::string& w) : std::runtime_error(w) {}
};

struct FiniteAlgebra {
  int size = 0;
  std::vector<std::string> names;
  std::vector<int> meet, join, imp;
  std::optional<std::vector<int>> fuse;
  int bot = 0, top = 0;

  int meet_at(int a, int b) const { return meet[static_cast<std::size_t>(a) * size + b]; }
  int join_at(int a, int b) const { return join[static_cast<std::size_t>(a) * size + b]; }
  int imp_at(int a, int b) const { return imp[static_cast<std::size_t>(a) * size + b]; }
  int neg_at(int a) const { return imp_at(a, bot); }
  int fuse_at(int a, int b) const {
    if (fuse) return (*fuse)[static_cast<std::size_t>(a) * size + b];
    return neg_at(imp_at(a, neg_at(b)));
  }
  bool leq(int a, int b) const { return meet_at(a, b) == a; }

  int power(int a, int n) const {
    int acc = a;
    for (int i = 1; i < n; ++i) acc = fuse_at(a, acc);
    return acc;
  }

  const std::string& name_of(int a) const { return names[static_cast<std::size_t>(a)]; }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size; ++i)
      if (names[static_cast<std::size_t>(i)] == name) return i;
    throw AlgebraError("unknown element '" + name + "'");
  }

  void validate() const {
    if (size < 1) throw AlgebraError("empty carrier");
    if (static_cast<int>(names.size()) != size) throw AlgebraError("bad name count");
    auto check_table = [&](const std::vector<int>& t, const char* what) {
      if (static_cast<int>(t.size()) != size * size)
        throw AlgebraError(std::string("table '") + what + "' has wrong shape");
      for (int v : t)
        if (v < 0 || v >= size)
          throw AlgebraError(std::string("table '") + what + "' entry out of range");
    };
    check_table(meet, "meet");
    check_table(join, "join");
    check_table(imp, "imp");
    if (fuse) check_table(*fuse, "fuse");
    if (bot < 0 || bot >= size || top < 0 || top >= size)
      throw AlgebraError("bounds out of range");
  }
};

// Signature conversions. Deriving the fusion table realizes ~(a => ~b);
// dropping it returns to the plain implication signature.
inline FiniteAlgebra to_s_prime(const FiniteAlgebra& a) {
  FiniteAlgebra out = a;
  std::vector<int> f(static_cast<std::size_t>(a.size) * a.size);
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y)
      f[static_cast<std::size_t>(x) * a.size + y] = a.neg_at(a.imp_at(x, a.neg_at(y)));
  out.fuse = std::move(f);
  return out;
}

inline FiniteAlgebra to_s_algebra(const FiniteAlgebra& a) {
  FiniteAlgebra out = a;
  out.fuse.reset();
  return out;
}

inline bool same_tables(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.size != b.size || a.bot != b.bot || a.top != b.top) return false;
  if (a.meet != b.meet || a.join != b.join || a.imp != b.imp) return false;
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y)
      if (a.fuse_at(x, y) != b.fuse_at(x, y)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation and exhaustive statement checking.

using Valuation = std::map<std::string, int>;

inline int eval_term(const FiniteAlgebra& a, const Term& t, const Valuation& v) {
  switch (t.op()) {
    case TOp::Var: {
      auto it = v.find(t.var_name());
      if (it == v.end()) throw AlgebraError("valuation misses variable '" + t.var_name() + "'");
      return it->second;
    }
    case TOp::Bot: return a.bot;
    case TOp::Top: return a.top;
    case TOp::Neg: return a.neg_at(eval_term(a, t.child(), v));
    case TOp::Meet: return a.meet_at(eval_term(a, t.left(), v), eval_term(a, t.right(), v));
    case TOp::Join: return a.join_at(eval_term(a, t.left(), v), eval_term(a, t.right(), v));
    case TOp::Imp: return a.imp_at(eval_term(a, t.left(), v), eval_term(a, t.right(), v));
    case TOp::Fuse: return a.fuse_at(eval_term(a, t.left(), v), eval_term(a, t.right(), v));
    case TOp::WImp: throw AlgebraError("weak implication has no table in this signature");
  }
  throw AlgebraError("unreachable");
}

// Runs fn over every valuation of vars, in lexicographic order with the
// leftmost variable slowest. fn returning false stops the sweep.
inline void for_each_valuation(int size, const std::set<std::string>& vars,
                               const std::function<bool(const Valuation&)>& fn) {
  std::vector<std::string> names(vars.begin(), vars.end());
  Valuation v;
  for (const auto& n : names) v[n] = 0;
  while (true) {
    if (!fn(v)) return;
    int i = static_cast<int>(names.size()) - 1;
    for (; i >= 0; --i) {
      int& slot = v[names[static_cast<std::size_t>(i)]];
      if (++slot < size) break;
      slot = 0;
    }
    if (i < 0) return;
  }
}

inline std::optional<Valuation> find_statement_witness(const FiniteAlgebra& a,
                                                       const Quasiequation& q) {
  std::optional<Valuation> found;
  for_each_valuation(a.size, q.variables(), [&](const Valuation& v) {
    for (const auto& e : q.premises)
      if (eval_term(a, e.lhs, v) != eval_term(a, e.rhs, v)) return true;
    if (eval_term(a, q.conclusion.lhs, v) != eval_term(a, q.conclusion.rhs, v)) {
      found = v;
      return false;
    }
    return true;
  });
  return found;
}

inline bool holds_quasiequation(const FiniteAlgebra& a, const Quasiequation& q) {
  return !find_statement_witness(a, q).has_value();
}

inline bool holds_equation(const FiniteAlgebra& a, const Equation& e) {
  return holds_quasiequation(a, as_statement(e));
}

// ---------------------------------------------------------------------------
// Class checkers. Every law gets its own report entry carrying the first
// witness in scan order and a violation count.

namespace detail {

class LawChecker {
 public:
  explicit LawChecker(const FiniteAlgebra& a) : a_(a) {}

  // scan arity-many element tuples; pred true means the law holds there
  void law(const std::string& name, int arity, const std::function<bool(const int*)>& pred,
           const std::function<std::string(const int*)>& describe = nullptr) {
    LawResult r;
    r.law = name;
    std::vector<int> tuple(static_cast<std::size_t>(arity), 0);
    bool more = true;
    while (more) {
      if (!pred(tuple.data())) {
        ++r.violations;
        if (!r.witness) {
          Witness w;
          w.elems = tuple;
          if (describe) {
            w.text = describe(tuple.data());
          } else {
            for (std::size_t i = 0; i < tuple.size(); ++i) {
              if (i) w.text += ",";
              w.text += a_.name_of(tuple[i]);
            }
          }
          r.witness = std::move(w);
        }
      }
      int i = arity - 1;
      for (; i >= 0; --i) {
        if (++tuple[static_cast<std::size_t>(i)] < a_.size) break;
        tuple[static_cast<std::size_t>(i)] = 0;
      }
      more = i >= 0;
    }
    r.ok = r.violations == 0;
    laws.push_back(std::move(r));
  }

  std::vector<LawResult> laws;

 private:
  const FiniteAlgebra& a_;
};

}  // namespace detail

inline std::vector<LawResult> bounded_lattice_laws(const FiniteAlgebra& A) {
  detail::LawChecker c(A);
  c.law("meet-commutative", 2, [&](const int* t) { return A.meet_at(t[0], t[1]) == A.meet_at(t[1], t[0]); });
  c.law("join-commutative", 2, [&](const int* t) { return A.join_at(t[0], t[1]) == A.join_at(t[1], t[0]); });
  c.law("meet-associative", 3, [&](const int* t) {
    return A.meet_at(A.meet_at(t[0], t[1]), t[2]) == A.meet_at(t[0], A.meet_at(t[1], t[2]));
  });
  c.law("join-associative", 3, [&](const int* t) {
    return A.join_at(A.join_at(t[0], t[1]), t[2]) == A.join_at(t[0], A.join_at(t[1], t[2]));
  });
  c.law("absorption", 2, [&](const int* t) {
    return A.meet_at(t[0], A.join_at(t[0], t[1])) == t[0] &&
           A.join_at(t[0], A.meet_at(t[0], t[1])) == t[0];
  });
  c.law("idempotent", 1, [&](const int* t) {
    return A.meet_at(t[0], t[0]) == t[0] && A.join_at(t[0], t[0]) == t[0];
  });
  c.law("bounds", 1, [&](const int* t) {
    return A.meet_at(A.bot, t[0]) == A.bot && A.join_at(A.top, t[0]) == A.top &&
           A.meet_at(A.top, t[0]) == t[0] && A.join_at(A.bot, t[0]) == t[0];
  });
  c.law("order-agreement", 2, [&](const int* t) {
    return (A.meet_at(t[0], t[1]) == t[0]) == (A.join_at(t[0], t[1]) == t[1]);
  });
  return c.laws;
}

inline ClassReport check_cibrl(const FiniteAlgebra& A) {
  ClassReport rep;
  rep.klass = "cibrl";
  rep.laws = bounded_lattice_laws(A);
  detail::LawChecker c(A);
  c.law("fuse-commutative", 2, [&](const int* t) { return A.fuse_at(t[0], t[1]) == A.fuse_at(t[1], t[0]); });
  c.law("fuse-associative", 3, [&](const int* t) {
    return A.fuse_at(A.fuse_at(t[0], t[1]), t[2]) == A.fuse_at(t[0], A.fuse_at(t[1], t[2]));
  });
  c.law("fuse-unit", 1, [&](const int* t) { return A.fuse_at(t[0], A.top) == t[0]; });
  c.law("residuation", 3, [&](const int* t) {
    return A.leq(A.fuse_at(t[0], t[1]), t[2]) == A.leq(t[1], A.imp_at(t[0], t[2]));
  });
  for (auto& l : c.laws) rep.laws.push_back(std::move(l));
  return rep;
}

inline ClassReport check_s_prime_algebra(const FiniteAlgebra& A) {
  ClassReport rep = check_cibrl(A);
  rep.klass = "sprime";
  detail::LawChecker c(A);
  c.law("involution", 1, [&](const int* t) { return A.neg_at(A.neg_at(t[0])) == t[0]; });
  c.law("three-potency", 1, [&](const int* t) { return A.leq(A.power(t[0], 2), A.power(t[0], 3)); });
  for (auto& l : c.laws) rep.laws.push_back(std::move(l));
  return rep;
}

// fuse(a,b) == ~(a => ~b) pointwise; trivial when the table is derived.
inline bool fusion_definability(const FiniteAlgebra& A) {
  for (int a = 0; a < A.size; ++a)
    for (int b = 0; b < A.size; ++b)
      if (A.fuse_at(a, b) != A.neg_at(A.imp_at(a, A.neg_at(b)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Law suites used by the verification pipelines.

// The eleven structural properties every algebra in the class satisfies:
// identity and bounds of the implication order, contraposition, exchange,
// involution, the commutative monoid, export/import, residuation, weak
// contraction, lattice-order agreement, and the squared-join inequality.
inline std::vector<LawResult> s_algebra_laws(const FiniteAlgebra& A) {
  detail::LawChecker c(A);
  auto leq_imp = [&](int a, int b) { return A.imp_at(a, b) == A.top; };
  c.law("1-identity-and-negated-bottom", 1, [&](const int* t) {
    return A.imp_at(t[0], t[0]) == A.top && A.neg_at(A.bot) == A.top;
  });
  c.law("2-implication-order", 2, [&](const int* t) {
    bool anti = !(leq_imp(t[0], t[1]) && leq_imp(t[1], t[0])) || t[0] == t[1];
    return anti && leq_imp(t[0], A.top) && leq_imp(A.bot, t[0]);
  });
  c.law("2-implication-order-transitive", 3, [&](const int* t) {
    return !(leq_imp(t[0], t[1]) && leq_imp(t[1], t[2])) || leq_imp(t[0], t[2]);
  });
  c.law("3-contraposition", 2, [&](const int* t) {
    return A.imp_at(t[0], t[1]) == A.imp_at(A.neg_at(t[1]), A.neg_at(t[0]));
  });
  c.law("4-exchange", 3, [&](const int* t) {
    return A.imp_at(t[0], A.imp_at(t[1], t[2])) == A.imp_at(t[1], A.imp_at(t[0], t[2]));
  });
  c.law("5-involution", 1, [&](const int* t) {
    return A.neg_at(A.neg_at(t[0])) == t[0] && A.imp_at(t[0], A.bot) == A.neg_at(t[0]);
  });
  c.law("6-commutative-monoid", 3, [&](const int* t) {
    return A.fuse_at(t[0], t[1]) == A.fuse_at(t[1], t[0]) &&
           A.fuse_at(A.fuse_at(t[0], t[1]), t[2]) == A.fuse_at(t[0], A.fuse_at(t[1], t[2])) &&
           A.fuse_at(t[0], A.top) == t[0];
  });
  c.law("7-export-import", 3, [&](const int* t) {
    return A.imp_at(A.fuse_at(t[0], t[1]), t[2]) == A.imp_at(t[0], A.imp_at(t[1], t[2]));
  });
  c.law("8-residuation", 3, [&](const int* t) {
    return leq_imp(A.fuse_at(t[0], t[1]), t[2]) == leq_imp(t[1], A.imp_at(t[0], t[2]));
  });
  c.law("9-three-potency", 1, [&](const int* t) {
    return leq_imp(A.power(t[0], 2), A.power(t[0], 3));
  });
  c.law("10-lattice-order", 2, [&](const int* t) {
    bool inf_ok = leq_imp(A.meet_at(t[0], t[1]), t[0]) && leq_imp(A.meet_at(t[0], t[1]), t[1]);
    bool sup_ok = leq_imp(t[0], A.join_at(t[0], t[1])) && leq_imp(t[1], A.join_at(t[0], t[1]));
    bool agree = (A.meet_at(t[0], t[1]) == t[0]) == leq_imp(t[0], t[1]);
    return inf_ok && sup_ok && agree;
  });
  c.law("11-squared-join", 2, [&](const int* t) {
    int lhs = A.power(A.join_at(t[0], t[1]), 2);
    int rhs = A.join_at(A.power(t[0], 2), A.power(t[1], 2));
    return leq_imp(lhs, rhs);
  });
  return c.laws;
}

// Join/fusion distribution identities. The first holds in every residuated
// lattice here; the remaining three need 3-potency.
inline std::vector<LawResult> square_join_laws(const FiniteAlgebra& A) {
  detail::LawChecker c(A);
  c.law("1-join-fuse-distribution", 3, [&](const int* t) {
    return A.fuse_at(A.join_at(t[0], t[1]), t[2]) ==
           A.join_at(A.fuse_at(t[0], t[2]), A.fuse_at(t[1], t[2]));
  });
  c.law("2-squared-join-idempotent", 2, [&](const int* t) {
    int v = A.join_at(A.power(t[0], 2), A.power(t[1], 2));
    return v == A.fuse_at(v, v);
  });
  c.law("3-squared-join-absorb", 2, [&](const int* t) {
    int lhs = A.power(A.join_at(t[0], A.power(t[1], 2)), 2);
    int rhs = A.power(A.join_at(t[0], t[1]), 2);
    return lhs == rhs;
  });
  c.law("4-square-of-join", 2, [&](const int* t) {
    int lhs = A.power(A.join_at(t[0], t[1]), 2);
    int rhs = A.join_at(A.power(t[0], 2), A.power(t[1], 2));
    return lhs == rhs;
  });
  return c.laws;
}

inline std::vector<LawResult> de_morgan_negation_laws(const FiniteAlgebra& A) {
  detail::LawChecker c(A);
  c.law("de-morgan-meet", 2, [&](const int* t) {
    return A.neg_at(A.meet_at(t[0], t[1])) == A.join_at(A.neg_at(t[0]), A.neg_at(t[1]));
  });
  c.law("de-morgan-join", 2, [&](const int* t) {
    return A.neg_at(A.join_at(t[0], t[1])) == A.meet_at(A.neg_at(t[0]), A.neg_at(t[1]));
  });
  return c.laws;
}

// ---------------------------------------------------------------------------
// File format.

namespace detail {

inline std::vector<std::string> tokenize_file(std::string_view text) {
  std::vector<std::string> toks;
  std::string cur;
  bool comment = false;
  for (char c : text) {
    if (c == '\n') comment = false;
    if (comment) continue;
    if (c == '#') {
      comment = true;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

}  // namespace detail

inline FiniteAlgebra parse_algebra(std::string_view text) {
  auto toks = detail::tokenize_file(text);
  std::size_t i = 0;
  auto next = [&]() -> const std::string& {
    if (i >= toks.size()) throw AlgebraError("unexpected end of algebra file");
    return toks[i++];
  };
  FiniteAlgebra a;
  if (next() != "size") throw AlgebraError("algebra file must start with 'size'");
  a.size = std::stoi(next());
  if (a.size < 1 || a.size > 64) throw AlgebraError("unreasonable size");
  if (next() != "elements") throw AlgebraError("expected 'elements'");
  for (int k = 0; k < a.size; ++k) a.names.push_back(next());
  for (int k = 0; k < a.size; ++k)
    for (int j = k + 1; j < a.size; ++j)
      if (a.names[static_cast<std::size_t>(k)] == a.names[static_cast<std::size_t>(j)])
        throw AlgebraError("duplicate element name");
  auto read_table = [&]() {
    std::vector<int> t;
    t.reserve(static_cast<std::size_t>(a.size) * a.size);
    for (int k = 0; k < a.size * a.size; ++k) t.push_back(a.index_of(next()));
    return t;
  };
  bool saw_bot = false, saw_top = false;
  while (i < toks.size()) {
    const std::string& kw = next();
    if (kw == "bot")
      a.bot = a.index_of(next()), saw_bot = true;
    else if (kw == "top")
      a.top = a.index_of(next()), saw_top = true;
    else if (kw == "meet")
      a.meet = read_table();
    else if (kw == "join")
      a.join = read_table();
    else if (kw == "imp")
      a.imp = read_table();
    else if (kw == "fuse")
      a.fuse = read_table();
    else
      throw AlgebraError("unknown block '" + kw + "'");
  }
  if (!saw_bot || !saw_top) throw AlgebraError("missing bot/top");
  if (a.meet.empty() || a.join.empty() || a.imp.empty())
    throw AlgebraError("missing meet/join/imp block");
  a.validate();
  return a;
}

inline std::string print_algebra(const FiniteAlgebra& a) {
  std::ostringstream out;
  out << "size " << a.size << "\nelements";
  for (const auto& n : a.names) out << " " << n;
  out << "\nbot " << a.name_of(a.bot) << "\ntop " << a.name_of(a.top) << "\n";
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
  dump("imp", [&](int x, int y) { return a.imp_at(x, y); });
  if (a.fuse) dump("fuse", [&](int x, int y) { return a.fuse_at(x, y); });
  return out.str();
}

}  // namespace nelson
