#pragma once

// Propositional formulas for the three languages handled by the workbench:
// the strong-implication language of S, its extension with primitive fusion
// and top used by the finite calculus, and the weak-implication language of
// the paraconsistent systems. Formulas are immutable trees; every formula
// carries its language tag and constructors reject connectives outside it.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nelson {

enum class Lang : std::uint8_t { S, SPrime, N4 };

enum class Conn : std::uint8_t { And, Or, Imp, WeakImp, Fuse };

inline const char* lang_name(Lang l) {
  switch (l) {
    case Lang::S: return "s";
    case Lang::SPrime: return "sprime";
    case Lang::N4: return "n4";
  }
  return "?";
}

inline bool lang_allows(Lang l, Conn c) {
  switch (l) {
    case Lang::S:
      return c == Conn::And || c == Conn::Or || c == Conn::Imp;
    case Lang::SPrime:
      return c != Conn::WeakImp;
    case Lang::N4:
      return c == Conn::And || c == Conn::Or || c == Conn::WeakImp;
  }
  return false;
}

inline bool lang_has_bottom(Lang l) { return l != Lang::N4; }
inline bool lang_has_top(Lang l) { return l == Lang::SPrime; }
inline bool lang_has_negation(Lang) { return true; }

// The implication used by <=> and by modus ponens in each language.
inline Conn lang_imp(Lang l) { return l == Lang::N4 ? Conn::WeakImp : Conn::Imp; }

struct FormulaError : std::runtime_error {
  explicit FormulaError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& what, std::size_t p)
      : std::runtime_error(what + " (at offset " + std::to_string(p) + ")"), pos(p) {}
};

class Formula {
 public:
  enum class Kind : std::uint8_t { Var, Bottom, Top, Neg, Bin };

 private:
  struct Node {
    Kind kind;
    Conn conn;  // meaningful for Kind::Bin only
    Lang lang;
    std::string name;  // Kind::Var only
    std::shared_ptr<const Node> a, b;
  };

  std::shared_ptr<const Node> n_;

  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  const Node& node() const {
    if (!n_) throw FormulaError("use of empty formula");
    return *n_;
  }

 public:
  Formula() = default;  // empty; any structural use throws
  bool valid() const { return n_ != nullptr; }

  static bool valid_var_name(std::string_view s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    for (char c : s)
      if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
            (c >= '0' && c <= '9') || c == '_'))
        return false;
    return true;
  }

  static Formula var(std::string name, Lang lang) {
    if (!valid_var_name(name))
      throw FormulaError("invalid variable name '" + name + "'");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->lang = lang;
    n->name = std::move(name);
    return Formula(std::move(n));
  }

  static Formula bottom(Lang lang) {
    if (!lang_has_bottom(lang))
      throw FormulaError(std::string("bottom not available in language ") + lang_name(lang));
    auto n = std::make_shared<Node>();
    n->kind = Kind::Bottom;
    n->lang = lang;
    return Formula(std::move(n));
  }

  static Formula top(Lang lang) {
    if (!lang_has_top(lang))
      throw FormulaError(std::string("top not available in language ") + lang_name(lang));
    auto n = std::make_shared<Node>();
    n->kind = Kind::Top;
    n->lang = lang;
    return Formula(std::move(n));
  }

  static Formula neg(const Formula& f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->lang = f.lang();
    n->a = f.n_;
    return Formula(std::move(n));
  }

  static Formula bin(Conn c, const Formula& l, const Formula& r) {
    if (l.lang() != r.lang())
      throw FormulaError("language mismatch between operands");
    if (!lang_allows(l.lang(), c))
      throw FormulaError(std::string("connective not in language ") + lang_name(l.lang()));
    auto n = std::make_shared<Node>();
    n->kind = Kind::Bin;
    n->conn = c;
    n->lang = l.lang();
    n->a = l.n_;
    n->b = r.n_;
    return Formula(std::move(n));
  }

  static Formula imp(const Formula& l, const Formula& r) { return bin(Conn::Imp, l, r); }
  static Formula wimp(const Formula& l, const Formula& r) { return bin(Conn::WeakImp, l, r); }
  static Formula conj(const Formula& l, const Formula& r) { return bin(Conn::And, l, r); }
  static Formula disj(const Formula& l, const Formula& r) { return bin(Conn::Or, l, r); }

  Kind kind() const { return node().kind; }
  Lang lang() const { return node().lang; }
  Conn conn() const {
    if (kind() != Kind::Bin) throw FormulaError("conn() on non-binary formula");
    return node().conn;
  }
  const std::string& var_name() const {
    if (kind() != Kind::Var) throw FormulaError("var_name() on non-variable");
    return node().name;
  }
  Formula left() const {
    if (kind() != Kind::Bin) throw FormulaError("left() on non-binary formula");
    return Formula(node().a);
  }
  Formula right() const {
    if (kind() != Kind::Bin) throw FormulaError("right() on non-binary formula");
    return Formula(node().b);
  }
  Formula child() const {
    if (kind() != Kind::Neg) throw FormulaError("child() on non-negation");
    return Formula(node().a);
  }

  bool is_var() const { return kind() == Kind::Var; }
  bool is_bin(Conn c) const { return valid() && kind() == Kind::Bin && conn() == c; }

  friend bool operator==(const Formula& x, const Formula& y) {
    if (!x.n_ || !y.n_) return x.n_ == y.n_;
    return equal(*x.n_, *y.n_);
  }
  friend bool operator!=(const Formula& x, const Formula& y) { return !(x == y); }

 private:
  static bool equal(const Node& x, const Node& y) {
    if (x.kind != y.kind || x.lang != y.lang) return false;
    switch (x.kind) {
      case Kind::Var: return x.name == y.name;
      case Kind::Bottom:
      case Kind::Top: return true;
      case Kind::Neg: return equal(*x.a, *y.a);
      case Kind::Bin: return x.conn == y.conn && equal(*x.a, *y.a) && equal(*x.b, *y.b);
    }
    return false;
  }
};

using Substitution = std::map<std::string, Formula>;

inline void collect_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Var: out.insert(f.var_name()); break;
    case Formula::Kind::Neg: collect_vars(f.child(), out); break;
    case Formula::Kind::Bin:
      collect_vars(f.left(), out);
      collect_vars(f.right(), out);
      break;
    default: break;
  }
}

inline std::set<std::string> vars_of(const Formula& f) {
  std::set<std::string> s;
  collect_vars(f, s);
  return s;
}

// Simultaneous capture-free replacement (propositional, so no binders).
// Images must live in the formula's own language.
inline Formula substitute(const Formula& f, const Substitution& s) {
  switch (f.kind()) {
    case Formula::Kind::Var: {
      auto it = s.find(f.var_name());
      if (it == s.end()) return f;
      if (it->second.lang() != f.lang())
        throw FormulaError("substitution image changes language of '" + f.var_name() + "'");
      return it->second;
    }
    case Formula::Kind::Bottom:
    case Formula::Kind::Top:
      return f;
    case Formula::Kind::Neg:
      return Formula::neg(substitute(f.child(), s));
    case Formula::Kind::Bin:
      return Formula::bin(f.conn(), substitute(f.left(), s), substitute(f.right(), s));
  }
  throw FormulaError("unreachable");
}

// ---------------------------------------------------------------------------
// Abbreviation expanders. All of these build plain trees eagerly; checkers
// compare fully expanded formulas.

// g1 => (g2 => (... => (gn => phi)...)); the empty chain is phi itself.
inline Formula imp_chain(const std::vector<Formula>& ctx, Formula phi) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
    phi = Formula::imp(*it, phi);
  return phi;
}

// a => (a => b)
inline Formula imp_twice(const Formula& a, const Formula& b) {
  return Formula::imp(a, Formula::imp(a, b));
}

inline Formula imp_twice_chain(const std::vector<Formula>& ctx, Formula phi) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
    phi = imp_twice(*it, phi);
  return phi;
}

// (a -> b) & (b -> a) with the implication native to the operands' language.
inline Formula iff(const Formula& a, const Formula& b) {
  Conn c = lang_imp(a.lang());
  return Formula::conj(Formula::bin(c, a, b), Formula::bin(c, b, a));
}

// Multiplicative conjunction: primitive where available, ~(a => ~b) otherwise.
inline Formula fusion(const Formula& a, const Formula& b) {
  if (a.lang() == Lang::SPrime) return Formula::bin(Conn::Fuse, a, b);
  if (a.lang() == Lang::S) return Formula::neg(Formula::imp(a, Formula::neg(b)));
  throw FormulaError("fusion not available in language n4");
}

// x^1 = x, x^n = x * x^(n-1), right-nested.
inline Formula fusion_power(const Formula& x, int n) {
  if (n < 1) throw FormulaError("fusion_power needs n >= 1");
  Formula acc = x;
  for (int i = 1; i < n; ++i) acc = fusion(x, acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Parsing. ASCII grammar, tightest first: ~, *, &, |, => / -> (right
// associative), <=> (expands to the biconditional). Atoms are identifiers,
// `0` for bottom, `1c` for top.

namespace detail {

inline std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return std::string(s.substr(a, b - a));
}

// split on sep at parenthesis depth zero
inline std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

enum class Tok : std::uint8_t {
  Ident, Zero, TopC, Tilde, Star, Amp, Pipe, Imp, WImp, Iff, LPar, RPar, End
};

struct Token {
  Tok t;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex_formula(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok t, std::string text, std::size_t pos) {
    out.push_back({t, std::move(text), pos});
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { ++i; continue; }
    std::size_t start = i;
    if (c == '(') { push(Tok::LPar, "(", start); ++i; continue; }
    if (c == ')') { push(Tok::RPar, ")", start); ++i; continue; }
    if (c == '~') { push(Tok::Tilde, "~", start); ++i; continue; }
    if (c == '*') { push(Tok::Star, "*", start); ++i; continue; }
    if (c == '&') { push(Tok::Amp, "&", start); ++i; continue; }
    if (c == '|') { push(Tok::Pipe, "|", start); ++i; continue; }
    if (c == '0') { push(Tok::Zero, "0", start); ++i; continue; }
    if (c == '1') {
      if (i + 1 < s.size() && s[i + 1] == 'c') { push(Tok::TopC, "1c", start); i += 2; continue; }
      throw ParseError("bare '1' is not a formula token (top is '1c')", start);
    }
    if (c == '=') {
      if (i + 1 < s.size() && s[i + 1] == '>') { push(Tok::Imp, "=>", start); i += 2; continue; }
      throw ParseError("expected '=>'", start);
    }
    if (c == '-') {
      if (i + 1 < s.size() && s[i + 1] == '>') { push(Tok::WImp, "->", start); i += 2; continue; }
      throw ParseError("expected '->'", start);
    }
    if (c == '<') {
      if (i + 2 < s.size() && s[i + 1] == '=' && s[i + 2] == '>') {
        push(Tok::Iff, "<=>", start); i += 3; continue;
      }
      throw ParseError("expected '<=>'", start);
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < s.size() &&
             ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= 'A' && s[j] <= 'Z') ||
              (s[j] >= '0' && s[j] <= '9') || s[j] == '_'))
        ++j;
      push(Tok::Ident, std::string(s.substr(i, j - i)), start);
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, Lang lang)
      : toks_(lex_formula(text)), lang_(lang) {}

  Formula parse() {
    Formula f = parse_iff();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  Lang lang_;

  const Token& cur() const { return toks_[at_]; }
  void advance() { ++at_; }
  void expect(Tok t, const char* msg) {
    if (cur().t != t) throw ParseError(msg, cur().pos);
    advance();
  }

  Formula parse_iff() {
    Formula l = parse_imp();
    if (cur().t == Tok::Iff) {
      advance();
      Formula r = parse_iff();
      return iff(l, r);
    }
    return l;
  }

  Formula parse_imp() {
    Formula l = parse_or();
    if (cur().t == Tok::Imp || cur().t == Tok::WImp) {
      Conn c = cur().t == Tok::Imp ? Conn::Imp : Conn::WeakImp;
      std::size_t pos = cur().pos;
      advance();
      Formula r = parse_imp();
      if (!lang_allows(lang_, c))
        throw ParseError(std::string("connective not in language ") + lang_name(lang_), pos);
      return Formula::bin(c, l, r);
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (cur().t == Tok::Pipe) {
      advance();
      l = Formula::disj(l, parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_fuse();
    while (cur().t == Tok::Amp) {
      advance();
      l = Formula::conj(l, parse_fuse());
    }
    return l;
  }

  Formula parse_fuse() {
    Formula l = parse_unary();
    while (cur().t == Tok::Star) {
      std::size_t pos = cur().pos;
      advance();
      if (!lang_allows(lang_, Conn::Fuse))
        throw ParseError(std::string("connective not in language ") + lang_name(lang_), pos);
      l = Formula::bin(Conn::Fuse, l, parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    if (cur().t == Tok::Tilde) {
      advance();
      return Formula::neg(parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    const Token& t = cur();
    switch (t.t) {
      case Tok::Ident: {
        advance();
        return Formula::var(t.text, lang_);
      }
      case Tok::Zero: {
        if (!lang_has_bottom(lang_))
          throw ParseError(std::string("bottom not in language ") + lang_name(lang_), t.pos);
        advance();
        return Formula::bottom(lang_);
      }
      case Tok::TopC: {
        if (!lang_has_top(lang_))
          throw ParseError(std::string("top not in language ") + lang_name(lang_), t.pos);
        advance();
        return Formula::top(lang_);
      }
      case Tok::LPar: {
        advance();
        Formula f = parse_iff();
        expect(Tok::RPar, "expected ')'");
        return f;
      }
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, Lang lang) {
  return detail::FormulaParser(text, lang).parse();
}

// Precedence levels used by the printer; higher binds tighter.
namespace detail {
inline int conn_level(Conn c) {
  switch (c) {
    case Conn::Imp:
    case Conn::WeakImp: return 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    case Conn::Fuse: return 4;
  }
  return 0;
}

inline void print_rec(const Formula& f, int min_level, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Var: out += f.var_name(); return;
    case Formula::Kind::Bottom: out += "0"; return;
    case Formula::Kind::Top: out += "1c"; return;
    case Formula::Kind::Neg: {
      out += "~";
      print_rec(f.child(), 5, out);
      return;
    }
    case Formula::Kind::Bin: {
      Conn c = f.conn();
      int lvl = conn_level(c);
      bool parens = lvl < min_level;
      if (parens) out += "(";
      bool right_assoc = (c == Conn::Imp || c == Conn::WeakImp);
      // the non-default side gets a strictly tighter context, so that
      // reparsing restores the original association
      print_rec(f.left(), right_assoc ? lvl + 1 : lvl, out);
      switch (c) {
        case Conn::And: out += " & "; break;
        case Conn::Or: out += " | "; break;
        case Conn::Imp: out += " => "; break;
        case Conn::WeakImp: out += " -> "; break;
        case Conn::Fuse: out += " * "; break;
      }
      print_rec(f.right(), right_assoc ? lvl : lvl + 1, out);
      if (parens) out += ")";
      return;
    }
  }
}
}  // namespace detail

inline std::string print_formula(const Formula& f) {
  std::string out;
  detail::print_rec(f, 0, out);
  return out;
}

}  // namespace nelson
