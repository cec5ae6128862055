#pragma once

// Proof objects shared by all three checkers, plus the line-oriented file
// format:
//
//   # comment
//   assume: <formula>
//   goal: <formula>
//   N. <formula> ; <RULE> [i,j,...] {phi := <f>, psi := <f>, gamma_list := [<f>; <f>]}
//
// Steps are numbered from 1 in order; premise references point at earlier
// steps. Formulas are compared structurally after parsing.

#include <string>
#include <string_view>
#include <vector>

#include "calculus.hpp"
#include "formula.hpp"

namespace nelson {

struct ProofStep {
  Formula formula;
  std::string rule;  // axiom/rule name, "HYP", or "MP"
  std::vector<int> premises;  // zero-based indices of earlier steps
  Bindings params;
};

struct Proof {
  Lang lang = Lang::S;
  std::vector<Formula> assumptions;
  std::vector<ProofStep> steps;
  Formula goal;

  bool is_assumption(const Formula& f) const {
    for (const auto& a : assumptions)
      if (a == f) return true;
    return false;
  }
};

namespace detail {

inline std::vector<std::string> split_semi_top(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ';' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline Bindings parse_bindings(const std::string& text, Lang lang, std::size_t line_no) {
  Bindings b;
  auto fail = [&](const std::string& msg) {
    throw ParseError("proof file line " + std::to_string(line_no) + ": " + msg, 0);
  };
  std::string inner = strip(text);
  if (inner.empty()) return b;
  if (inner.front() != '{' || inner.back() != '}') fail("malformed binding block");
  inner = inner.substr(1, inner.size() - 2);
  for (const auto& item_raw : split_top(inner, ',')) {
    std::string item = strip(item_raw);
    if (item.empty()) continue;
    std::size_t asn = item.find(":=");
    if (asn == std::string::npos) fail("binding needs ':='");
    std::string key = strip(item.substr(0, asn));
    std::string val = strip(item.substr(asn + 2));
    if (key == "gamma_list") {
      if (val.size() < 2 || val.front() != '[' || val.back() != ']')
        fail("gamma_list needs [...]");
      std::vector<Formula> ctx;
      std::string body = strip(val.substr(1, val.size() - 2));
      if (!body.empty())
        for (const auto& f : split_semi_top(body)) ctx.push_back(parse_formula(f, lang));
      b.gamma = std::move(ctx);
    } else {
      if (b.vars.count(key)) fail("duplicate binding for '" + key + "'");
      b.vars.emplace(key, parse_formula(val, lang));
    }
  }
  return b;
}

}  // namespace detail

inline Proof parse_proof(std::string_view text, Lang lang) {
  Proof p;
  p.lang = lang;
  bool have_goal = false;
  std::size_t line_no = 0, pos = 0;
  int expected_index = 1;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line = detail::strip(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw ParseError("proof file line " + std::to_string(line_no) + ": " + msg, 0);
    };
    if (line.rfind("assume:", 0) == 0) {
      if (!p.steps.empty()) fail("assumptions must precede steps");
      p.assumptions.push_back(parse_formula(line.substr(7), lang));
      continue;
    }
    if (line.rfind("goal:", 0) == 0) {
      if (have_goal) fail("duplicate goal");
      p.goal = parse_formula(line.substr(5), lang);
      have_goal = true;
      continue;
    }
    // numbered step
    std::size_t dot = line.find('.');
    if (dot == std::string::npos) fail("expected 'N. <formula> ; <RULE> ...'");
    int num = 0;
    try {
      num = std::stoi(line.substr(0, dot));
    } catch (...) {
      fail("bad step number");
    }
    if (num != expected_index) fail("steps must be numbered consecutively from 1");
    ++expected_index;
    std::string rest = line.substr(dot + 1);
    std::size_t semi = rest.find(';');
    if (semi == std::string::npos) fail("step needs '; <RULE>'");
    ProofStep step;
    step.formula = parse_formula(rest.substr(0, semi), lang);
    std::string just = detail::strip(rest.substr(semi + 1));
    // rule name runs to the first '[' or '{'
    std::size_t cut = just.find_first_of("[{");
    step.rule = detail::strip(just.substr(0, cut));
    if (step.rule.empty()) fail("missing rule name");
    std::string tail = cut == std::string::npos ? "" : just.substr(cut);
    tail = detail::strip(tail);
    if (!tail.empty() && tail.front() == '[') {
      std::size_t close = tail.find(']');
      if (close == std::string::npos) fail("unterminated premise list");
      std::string inside = detail::strip(tail.substr(1, close - 1));
      if (!inside.empty())
        for (const auto& tok : detail::split_top(inside, ',')) {
          int ref = 0;
          try {
            ref = std::stoi(detail::strip(tok));
          } catch (...) {
            fail("bad premise index");
          }
          if (ref < 1 || ref >= num) fail("premise index out of range");
          step.premises.push_back(ref - 1);
        }
      tail = detail::strip(tail.substr(close + 1));
    }
    if (!tail.empty()) step.params = detail::parse_bindings(tail, lang, line_no);
    p.steps.push_back(std::move(step));
  }
  if (!have_goal) throw ParseError("proof file has no goal", 0);
  return p;
}

inline std::string print_bindings(const Bindings& b) {
  std::string out;
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& [k, v] : b.vars) {
    sep();
    out += k + " := " + print_formula(v);
  }
  if (b.gamma) {
    sep();
    out += "gamma_list := [";
    for (std::size_t i = 0; i < b.gamma->size(); ++i) {
      if (i) out += "; ";
      out += print_formula((*b.gamma)[i]);
    }
    out += "]";
  }
  if (out.empty()) return "";
  return "{" + out + "}";
}

inline std::string print_proof(const Proof& p) {
  std::string out;
  for (const auto& a : p.assumptions) out += "assume: " + print_formula(a) + "\n";
  out += "goal: " + print_formula(p.goal) + "\n";
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    out += std::to_string(i + 1) + ". " + print_formula(s.formula) + " ; " + s.rule;
    if (!s.premises.empty()) {
      out += " [";
      for (std::size_t j = 0; j < s.premises.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(s.premises[j] + 1);
      }
      out += "]";
    }
    std::string bs = print_bindings(s.params);
    if (!bs.empty()) out += " " + bs;
    out += "\n";
  }
  return out;
}

}  // namespace nelson
