// render.hpp — fixed plain-text grammar for operator polynomials, with round-trip parser
#pragma once

#include <oscar/errors.hpp>
#include <oscar/poly.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oscar::algebra {

// Grammar (one term per line; empty poly renders as "0"):
//   term    := coeff " * [" oplist "] * exp(" freq ")" region?
//   region  := " @ region(" "!"? freq ")"     ("!" marks the complement)
//   coeff   := mono | "{" mono (" + " mono)* "}"
//   mono    := cnum ("*" sym "^" int)* ("*(" freq ")^" int)*
//   cnum    := "(" rat ")" | "(" rat "*i)" | "(" rat ("+"|"-") urat "*i)"
//   rat     := int "/" uint          (urat: unsigned)
//   sym     := "g" | "gc" | "hbar"
//   oplist  := op (" " op)*          (may be empty)
//   op      := mode-label, trailing "t" marks the dagger: "ct", "c", "a", ...
//   freq    := "0" | ("-"? (uint "*")? wsym) (("+"|"-") (uint "*")? wsym)*
//   wsym    := "wc" | "wr" | "w"

inline std::string render(const NormalTerm& t) {
  std::string out = t.coeff.str() + " * [";
  for (std::size_t i = 0; i < t.ops.size(); ++i) {
    if (i) out += " ";
    out += t.ops[i].str();
  }
  out += "] * exp(" + t.phase.str() + ")";
  if (t.region)
    out += " @ region(" + std::string(t.region->complement ? "!" : "") + t.region->freq.str() + ")";
  return out;
}

inline std::string render(const OperatorPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.terms().size(); ++i) {
    if (i) out += "\n";
    out += render(p.terms()[i]);
  }
  return out;
}

namespace parse_detail {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  char get() { return done() ? '\0' : s[i++]; }
  bool try_eat(const std::string& lit) {
    if (s.compare(i, lit.size(), lit) == 0) {
      i += lit.size();
      return true;
    }
    return false;
  }
  void eat(const std::string& lit) {
    if (!try_eat(lit))
      throw ConfigError("poly parse: expected '" + lit + "' at offset " + std::to_string(i) +
                        " in: " + s);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("poly parse: " + what + " at offset " + std::to_string(i) + " in: " + s);
  }
};

inline std::int64_t parse_int(Cursor& c) {
  bool neg = c.try_eat("-");
  if (!neg) c.try_eat("+");
  if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("expected integer");
  std::int64_t v = 0;
  while (std::isdigit(static_cast<unsigned char>(c.peek()))) v = v * 10 + (c.get() - '0');
  return neg ? -v : v;
}

inline Rational parse_rat(Cursor& c) {
  const std::int64_t num = parse_int(c);
  c.eat("/");
  const std::int64_t den = parse_int(c);
  return Rational(num, den);
}

inline FreqExpr parse_freq(Cursor& c) {
  if (c.try_eat("0")) return FreqExpr::zero();
  FreqExpr f;
  bool first = true;
  while (true) {
    int sign = 1;
    if (c.try_eat("-"))
      sign = -1;
    else if (!c.try_eat("+") && !first)
      break;
    int mag = 1;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      mag = static_cast<int>(parse_int(c));
      c.eat("*");
    }
    FreqSym s;
    if (c.try_eat("wc"))
      s = FreqSym::mode_c;
    else if (c.try_eat("wr"))
      s = FreqSym::mode_r;
    else if (c.try_eat("w"))
      s = FreqSym::bath;
    else
      c.fail("expected frequency symbol");
    f = f + FreqExpr::sym(s, sign * mag);
    first = false;
    if (c.peek() != '+' && c.peek() != '-') break;
  }
  return f;
}

inline GaussianRational parse_cnum(Cursor& c) {
  c.eat("(");
  const Rational first = parse_rat(c);
  GaussianRational z;
  if (c.try_eat("*i")) {
    z = GaussianRational{Rational(0), first};
  } else if (c.peek() == '+' || c.peek() == '-') {
    const int sign = c.get() == '-' ? -1 : 1;
    Rational im = parse_rat(c);
    if (sign < 0) im = -im;
    c.eat("*i");
    z = GaussianRational{first, im};
  } else {
    z = GaussianRational{first};
  }
  c.eat(")");
  return z;
}

inline CoeffSum parse_mono(Cursor& c) {
  CoeffSum out{parse_cnum(c)};
  while (c.peek() == '*') {
    c.get();
    if (c.try_eat("(")) {
      const FreqExpr base = parse_freq(c);
      c.eat(")^");
      const int pw = static_cast<int>(parse_int(c));
      out = out.times_freq_factor(base, pw);
    } else {
      CoupSym s;
      if (c.try_eat("gc"))
        s = CoupSym::gamma_c;
      else if (c.try_eat("g"))
        s = CoupSym::g;
      else if (c.try_eat("hbar"))
        s = CoupSym::hbar;
      else
        c.fail("expected coupling symbol");
      c.eat("^");
      const int pw = static_cast<int>(parse_int(c));
      out = out * CoeffSum::symbol(s, pw);
    }
  }
  return out;
}

inline CoeffSum parse_coeff(Cursor& c) {
  if (!c.try_eat("{")) return parse_mono(c);
  CoeffSum out = parse_mono(c);
  while (c.try_eat(" + ")) out += parse_mono(c);
  c.eat("}");
  return out;
}

inline std::vector<LadderOp> parse_oplist(Cursor& c) {
  std::vector<LadderOp> ops;
  const std::map<std::string, ModeId> table{
      {"c", mode_c()}, {"r", mode_r()}, {"a", mode_bath()}};
  while (c.peek() != ']') {
    if (c.peek() == ' ') {
      c.get();
      continue;
    }
    std::string tok;
    while (c.peek() != ' ' && c.peek() != ']' && !c.done()) tok += c.get();
    if (tok.empty()) c.fail("expected operator token");
    bool dag = false;
    auto it = table.find(tok);
    if (it == table.end() && tok.back() == 't') {
      it = table.find(tok.substr(0, tok.size() - 1));
      dag = true;
    }
    if (it == table.end()) c.fail("unknown mode label '" + tok + "'");
    ops.push_back({it->second, dag});
  }
  return ops;
}

inline NormalTerm parse_term(const std::string& line) {
  Cursor c{line};
  NormalTerm t;
  t.coeff = parse_coeff(c);
  c.eat(" * [");
  t.ops = parse_oplist(c);
  c.eat("] * exp(");
  t.phase = parse_freq(c);
  c.eat(")");
  if (c.try_eat(" @ region(")) {
    const bool complement = c.try_eat("!");
    t.region = RegionTag{parse_freq(c), complement};
    c.eat(")");
  }
  if (!c.done()) c.fail("trailing characters");
  return t;
}

}  // namespace parse_detail

// Inverse of render(); accepts exactly the grammar above.
inline OperatorPoly parse_poly(const std::string& text) {
  std::string trimmed = text;
  while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == ' '))
    trimmed.pop_back();
  if (trimmed.empty() || trimmed == "0") return OperatorPoly::zero();
  OperatorPoly out;
  std::size_t pos = 0;
  while (pos <= trimmed.size()) {
    const std::size_t nl = trimmed.find('\n', pos);
    const std::string line =
        trimmed.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    if (!line.empty()) {
      const NormalTerm t = parse_detail::parse_term(line);
      out = out + OperatorPoly::from_term(t.coeff, t.ops, t.phase, t.region);
    }
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return out;
}

}  // namespace oscar::algebra
