// freq.hpp — integer linear combinations of the three frequency symbols
#pragma once

#include <oscar/rational.hpp>

#include <array>
#include <cstdlib>
#include <numeric>
#include <string>

namespace oscar::algebra {

// The frequency symbols: the two oscillator frequencies and the free bath frequency.
enum class FreqSym : int { mode_c = 0, mode_r = 1, bath = 2 };

inline const char* freq_sym_name(FreqSym s) {
  switch (s) {
    case FreqSym::mode_c: return "wc";
    case FreqSym::mode_r: return "wr";
    default: return "w";
  }
}

// Integer-coefficient linear combination over {wc, wr, w}. Value semantics;
// used both as oscillating-phase label and as symbolic denominator base.
struct FreqExpr {
  std::array<int, 3> c{0, 0, 0};

  static FreqExpr zero() { return {}; }
  static FreqExpr sym(FreqSym s, int k = 1) {
    FreqExpr f;
    f.c[static_cast<int>(s)] = k;
    return f;
  }

  int coeff(FreqSym s) const { return c[static_cast<int>(s)]; }
  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }

  friend FreqExpr operator+(const FreqExpr& a, const FreqExpr& b) {
    return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}};
  }
  friend FreqExpr operator-(const FreqExpr& a, const FreqExpr& b) {
    return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]}};
  }
  FreqExpr operator-() const { return {{-c[0], -c[1], -c[2]}}; }
  friend FreqExpr operator*(int k, const FreqExpr& a) {
    return {{k * a.c[0], k * a.c[1], k * a.c[2]}};
  }

  friend bool operator==(const FreqExpr& a, const FreqExpr& b) { return a.c == b.c; }
  friend bool operator!=(const FreqExpr& a, const FreqExpr& b) { return !(a == b); }
  friend bool operator<(const FreqExpr& a, const FreqExpr& b) { return a.c < b.c; }

  double eval(double wc, double wr, double w) const { return c[0] * wc + c[1] * wr + c[2] * w; }

  // Canonical text form in symbol order wc, wr, w: "0", "wc+wr", "-wc+w", "2*wc", ...
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = 0; i < 3; ++i) {
      if (c[i] == 0) continue;
      const int a = std::abs(c[i]);
      if (out.empty())
        out += (c[i] < 0) ? "-" : "";
      else
        out += (c[i] < 0) ? "-" : "+";
      if (a != 1) out += std::to_string(a) + "*";
      out += freq_sym_name(static_cast<FreqSym>(i));
    }
    return out;
  }
};

inline const FreqExpr kOmegaC = FreqExpr::sym(FreqSym::mode_c);
inline const FreqExpr kOmegaR = FreqExpr::sym(FreqSym::mode_r);
inline const FreqExpr kOmegaBath = FreqExpr::sym(FreqSym::bath);

// expr = content * primitive with gcd(primitive coefficients) = 1 and the first
// nonzero primitive coefficient positive. Keeps denominator bases canonical so
// structurally equal factors merge: -(wc+wr) and 2*(wc+wr) share base (wc+wr).
struct CanonicalFreq {
  FreqExpr primitive;
  Rational content;
};

inline CanonicalFreq canonicalize(const FreqExpr& f) {
  if (f.is_zero()) throw NumericError("canonicalize: zero frequency expression");
  int g = 0;
  for (int x : f.c) g = std::gcd(g, std::abs(x));
  int lead = 0;
  for (int x : f.c)
    if (x != 0) {
      lead = x;
      break;
    }
  const int s = lead < 0 ? -1 : 1;
  CanonicalFreq out;
  out.content = Rational(s * g);
  out.primitive = {{f.c[0] / (s * g), f.c[1] / (s * g), f.c[2] / (s * g)}};
  return out;
}

}  // namespace oscar::algebra
