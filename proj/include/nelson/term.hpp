#pragma once

// Terms over the algebraic signature: lattice meet/join, the two
// implications, fusion, negation and the bounds. Equations pair two terms;
// a quasiequation lists premise equations before the conclusion.
//
// Concrete syntax reuses the formula operators plus `1` for the top
// constant; statements are written "lhs = rhs" and
// "eq1, eq2 ==> eq" for quasiequations.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "formula.hpp"

namespace nelson {

enum class TOp : std::uint8_t { Var, Bot, Top, Neg, Meet, Join, Imp, Fuse, WImp };

class Term {
  struct Node {
    TOp op;
    std::string name;
    std::shared_ptr<const Node> a, b;
  };
  std::shared_ptr<const Node> n_;
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

 public:
  Term() = default;
  bool valid() const { return n_ != nullptr; }

  static Term var(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = TOp::Var;
    n->name = std::move(name);
    return Term(std::move(n));
  }
  static Term constant(TOp op) {
    if (op != TOp::Bot && op != TOp::Top) throw FormulaError("not a constant op");
    auto n = std::make_shared<Node>();
    n->op = op;
    return Term(std::move(n));
  }
  static Term bot() { return constant(TOp::Bot); }
  static Term top() { return constant(TOp::Top); }
  static Term neg(const Term& t) {
    auto n = std::make_shared<Node>();
    n->op = TOp::Neg;
    n->a = t.n_;
    return Term(std::move(n));
  }
  static Term bin(TOp op, const Term& l, const Term& r) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = l.n_;
    n->b = r.n_;
    return Term(std::move(n));
  }
  static Term meet(const Term& l, const Term& r) { return bin(TOp::Meet, l, r); }
  static Term join(const Term& l, const Term& r) { return bin(TOp::Join, l, r); }
  static Term imp(const Term& l, const Term& r) { return bin(TOp::Imp, l, r); }
  static Term fuse(const Term& l, const Term& r) { return bin(TOp::Fuse, l, r); }
  static Term wimp(const Term& l, const Term& r) { return bin(TOp::WImp, l, r); }

  TOp op() const {
    if (!n_) throw FormulaError("use of empty term");
    return n_->op;
  }
  const std::string& var_name() const { return n_->name; }
  Term left() const { return Term(n_->a); }
  Term right() const { return Term(n_->b); }
  Term child() const { return Term(n_->a); }

  friend bool operator==(const Term& x, const Term& y) {
    if (!x.n_ || !y.n_) return x.n_ == y.n_;
    return eq(*x.n_, *y.n_);
  }
  friend bool operator!=(const Term& x, const Term& y) { return !(x == y); }

 private:
  static bool eq(const Node& a, const Node& b) {
    if (a.op != b.op) return false;
    switch (a.op) {
      case TOp::Var: return a.name == b.name;
      case TOp::Bot:
      case TOp::Top: return true;
      case TOp::Neg: return eq(*a.a, *b.a);
      default: return eq(*a.a, *b.a) && eq(*a.b, *b.b);
    }
  }
};

inline void collect_term_vars(const Term& t, std::set<std::string>& out) {
  switch (t.op()) {
    case TOp::Var: out.insert(t.var_name()); break;
    case TOp::Neg: collect_term_vars(t.child(), out); break;
    case TOp::Bot:
    case TOp::Top: break;
    default:
      collect_term_vars(t.left(), out);
      collect_term_vars(t.right(), out);
  }
}

struct Equation {
  Term lhs, rhs;
};

struct Quasiequation {
  std::vector<Equation> premises;
  Equation conclusion;

  bool is_equation() const { return premises.empty(); }

  std::set<std::string> variables() const {
    std::set<std::string> s;
    for (const auto& e : premises) {
      collect_term_vars(e.lhs, s);
      collect_term_vars(e.rhs, s);
    }
    collect_term_vars(conclusion.lhs, s);
    collect_term_vars(conclusion.rhs, s);
    return s;
  }
};

inline Quasiequation as_statement(Equation e) { return Quasiequation{{}, std::move(e)}; }

// Formula connectives carry over one-to-one.
inline Term term_of_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Var: return Term::var(f.var_name());
    case Formula::Kind::Bottom: return Term::bot();
    case Formula::Kind::Top: return Term::top();
    case Formula::Kind::Neg: return Term::neg(term_of_formula(f.child()));
    case Formula::Kind::Bin: {
      Term l = term_of_formula(f.left()), r = term_of_formula(f.right());
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

// ---------------------------------------------------------------------------
// Printing and parsing.

namespace detail {
inline int top_level(TOp op) {
  switch (op) {
    case TOp::Imp:
    case TOp::WImp: return 1;
    case TOp::Join: return 2;
    case TOp::Meet: return 3;
    case TOp::Fuse: return 4;
    default: return 6;
  }
}

inline void print_term_rec(const Term& t, int min_level, std::string& out) {
  switch (t.op()) {
    case TOp::Var: out += t.var_name(); return;
    case TOp::Bot: out += "0"; return;
    case TOp::Top: out += "1"; return;
    case TOp::Neg:
      out += "~";
      print_term_rec(t.child(), 5, out);
      return;
    default: {
      int lvl = top_level(t.op());
      bool parens = lvl < min_level;
      bool right_assoc = (t.op() == TOp::Imp || t.op() == TOp::WImp);
      if (parens) out += "(";
      print_term_rec(t.left(), right_assoc ? lvl + 1 : lvl, out);
      switch (t.op()) {
        case TOp::Meet: out += " & "; break;
        case TOp::Join: out += " | "; break;
        case TOp::Imp: out += " => "; break;
        case TOp::WImp: out += " -> "; break;
        case TOp::Fuse: out += " * "; break;
        default: break;
      }
      print_term_rec(t.right(), right_assoc ? lvl : lvl + 1, out);
      if (parens) out += ")";
    }
  }
}
}  // namespace detail

inline std::string print_term(const Term& t) {
  std::string out;
  detail::print_term_rec(t, 0, out);
  return out;
}

inline std::string print_equation(const Equation& e) {
  return print_term(e.lhs) + " = " + print_term(e.rhs);
}

inline std::string print_statement(const Quasiequation& q) {
  if (q.is_equation()) return print_equation(q.conclusion);
  std::string out;
  for (std::size_t i = 0; i < q.premises.size(); ++i) {
    if (i) out += ", ";
    out += print_equation(q.premises[i]);
  }
  return out + " ==> " + print_equation(q.conclusion);
}

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view s) : s_(s) {}

  Term parse_full() {
    Term t = parse_imp();
    skip_ws();
    if (i_ != s_.size()) throw ParseError("trailing input after term", i_);
    return t;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }
  bool eat(std::string_view tok) {
    skip_ws();
    if (s_.substr(i_, tok.size()) == tok) {
      // '=' must not swallow the '=' of '=>' or '==>'
      if (tok == "=" && i_ + 1 < s_.size() && (s_[i_ + 1] == '>' || s_[i_ + 1] == '='))
        return false;
      i_ += tok.size();
      return true;
    }
    return false;
  }

  Term parse_imp() {
    Term l = parse_join();
    skip_ws();
    if (eat("=>")) return Term::imp(l, parse_imp());
    if (eat("->")) return Term::wimp(l, parse_imp());
    return l;
  }
  Term parse_join() {
    Term l = parse_meet();
    while (eat("|")) l = Term::join(l, parse_meet());
    return l;
  }
  Term parse_meet() {
    Term l = parse_fuse();
    while (eat("&")) l = Term::meet(l, parse_fuse());
    return l;
  }
  Term parse_fuse() {
    Term l = parse_unary();
    while (eat("*")) l = Term::fuse(l, parse_unary());
    return l;
  }
  Term parse_unary() {
    if (eat("~")) return Term::neg(parse_unary());
    return parse_atom();
  }
  Term parse_atom() {
    skip_ws();
    if (i_ >= s_.size()) throw ParseError("expected a term", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Term t = parse_imp();
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
      ++i_;
      return t;
    }
    if (c == '0') {
      ++i_;
      return Term::bot();
    }
    if (c == '1') {
      ++i_;
      if (i_ < s_.size() && s_[i_] == 'c') ++i_;  // formula-style spelling
      return Term::top();
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i_ + 1;
      while (j < s_.size() && ((s_[j] >= 'a' && s_[j] <= 'z') || (s_[j] >= 'A' && s_[j] <= 'Z') ||
                               (s_[j] >= '0' && s_[j] <= '9') || s_[j] == '_'))
        ++j;
      Term t = Term::var(std::string(s_.substr(i_, j - i_)));
      i_ = j;
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "' in term", i_);
  }
};

}  // namespace detail

inline Term parse_term(std::string_view s) { return detail::TermParser(s).parse_full(); }

inline Equation parse_equation(std::string_view s) {
  // split at the unique top-level '=' that is not part of '=>' or '==>'
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && c == '=') {
      bool part_of_imp = (i + 1 < s.size() && s[i + 1] == '>');
      bool part_of_arrow = (i + 1 < s.size() && s[i + 1] == '=');
      bool closes_arrow = (i > 0 && s[i - 1] == '=');
      if (!part_of_imp && !part_of_arrow && !closes_arrow)
        return Equation{parse_term(s.substr(0, i)), parse_term(s.substr(i + 1))};
    }
  }
  throw ParseError("equation needs '='", 0);
}

inline Quasiequation parse_statement(std::string_view s) {
  // premises ==> conclusion, or a bare equation
  int depth = 0;
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s[i] == '=' && s[i + 1] == '=' && s[i + 2] == '>') {
      Quasiequation q;
      std::string prem(s.substr(0, i));
      for (const auto& part : detail::split_top(prem, ','))
        q.premises.push_back(parse_equation(part));
      q.conclusion = parse_equation(s.substr(i + 3));
      return q;
    }
  }
  return as_statement(parse_equation(s));
}

}  // namespace nelson
