// coeff.hpp — exact coefficient field: Gaussian rationals × symbol powers × frequency-factor powers
#pragma once

#include <oscar/freq.hpp>
#include <oscar/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oscar::algebra {

// The scalar coupling symbols tracked as integer exponents.
enum class CoupSym : int { g = 0, gamma_c = 1, hbar = 2 };

inline const char* coup_sym_name(CoupSym s) {
  switch (s) {
    case CoupSym::g: return "g";
    case CoupSym::gamma_c: return "gc";
    default: return "hbar";
  }
}

// One numeric assignment of all six symbols, strictly positive.
struct EvalPoint {
  double g = 1, gamma_c = 1, hbar = 1, wc = 1, wr = 1, w = 1;
};

// Randomized strictly-positive evaluation points for deciding coefficient
// equality. Points keep the pairwise frequency gaps bounded away from zero so
// inverse-difference factors stay well conditioned.
class EvalContext {
 public:
  explicit EvalContext(std::uint64_t seed = 0x05eedful) : seed_(seed) {}

  int npoints = 10;
  double rtol = 1e-12;

  const std::vector<EvalPoint>& points() {
    if (pts_.empty()) {
      std::mt19937_64 rng(seed_);
      std::uniform_real_distribution<double> u(0.5, 2.0);
      while (static_cast<int>(pts_.size()) < npoints) {
        EvalPoint p;
        p.g = u(rng);
        p.gamma_c = u(rng);
        p.hbar = u(rng);
        p.wc = u(rng);
        p.wr = u(rng);
        p.w = u(rng);
        const double gap = 0.05;
        if (std::abs(p.wc - p.wr) < gap || std::abs(p.wc - p.w) < gap ||
            std::abs(p.wr - p.w) < gap)
          continue;
        pts_.push_back(p);
      }
    }
    return pts_;
  }

 private:
  std::uint64_t seed_;
  std::vector<EvalPoint> pts_;
};

inline EvalContext& default_eval_context() {
  static EvalContext ctx;
  return ctx;
}

// One exact monomial: scalar × g^p0 gc^p1 hbar^p2 × Π base^power with canonical
// primitive bases sorted lexicographically.
struct FreqFactor {
  FreqExpr base;  // canonical primitive (gcd 1, positive leading coefficient)
  int power = 0;  // nonzero; negative for denominators

  friend bool operator==(const FreqFactor& a, const FreqFactor& b) {
    return a.base == b.base && a.power == b.power;
  }
  friend bool operator<(const FreqFactor& a, const FreqFactor& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.power < b.power;
  }
};

struct CoeffMonomial {
  GaussianRational scalar;
  std::array<int, 3> pows{0, 0, 0};  // exponents of g, gc, hbar
  std::vector<FreqFactor> factors;   // sorted by base

  // Ordering/equality of the symbol part only (the merge key).
  friend bool key_less(const CoeffMonomial& a, const CoeffMonomial& b) {
    if (a.pows != b.pows) return a.pows < b.pows;
    return a.factors < b.factors;
  }
  friend bool key_equal(const CoeffMonomial& a, const CoeffMonomial& b) {
    return a.pows == b.pows && a.factors == b.factors;
  }

  std::complex<double> eval(const EvalPoint& p) const {
    auto ipow = [](double x, int e) {
      double base = e < 0 ? 1.0 / x : x;
      int n = e < 0 ? -e : e;
      double acc = 1;
      for (int i = 0; i < n; ++i) acc *= base;
      return acc;
    };
    double mag = ipow(p.g, pows[0]) * ipow(p.gamma_c, pows[1]) * ipow(p.hbar, pows[2]);
    for (const auto& f : factors) mag *= ipow(f.base.eval(p.wc, p.wr, p.w), f.power);
    return scalar.to_complex() * mag;
  }

  std::string str() const {
    std::string out = scalar.str();
    for (int i = 0; i < 3; ++i)
      if (pows[i] != 0)
        out += "*" + std::string(coup_sym_name(static_cast<CoupSym>(i))) + "^" +
               std::to_string(pows[i]);
    for (const auto& f : factors)
      out += "*(" + f.base.str() + ")^" + std::to_string(f.power);
    return out;
  }
};

// Exact sum of monomials, merged on the symbol part, no zero scalars.
// Equality is decided by evaluation at randomized strictly-positive points
// (relative tolerance 1e-12); the structural form is for display only.
class CoeffSum {
 public:
  CoeffSum() = default;
  CoeffSum(GaussianRational s) {  // NOLINT: implicit from scalars is intended
    if (!s.is_zero()) terms_.push_back({s, {0, 0, 0}, {}});
  }
  CoeffSum(Rational r) : CoeffSum(GaussianRational(r)) {}      // NOLINT
  CoeffSum(std::int64_t n) : CoeffSum(GaussianRational(n)) {}  // NOLINT

  static CoeffSum symbol(CoupSym s, int power = 1) {
    CoeffSum c;
    CoeffMonomial m;
    m.scalar = GaussianRational(Rational(1));
    m.pows[static_cast<int>(s)] = power;
    c.terms_.push_back(m);
    return c;
  }
  static CoeffSum unit_i() { return CoeffSum(GaussianRational::unit_i()); }

  const std::vector<CoeffMonomial>& terms() const { return terms_; }
  bool structurally_zero() const { return terms_.empty(); }

  friend CoeffSum operator+(const CoeffSum& a, const CoeffSum& b) {
    CoeffSum out;
    out.terms_ = a.terms_;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
    out.normalize();
    return out;
  }
  friend CoeffSum operator-(const CoeffSum& a, const CoeffSum& b) { return a + (-b); }
  CoeffSum operator-() const {
    CoeffSum out = *this;
    for (auto& m : out.terms_) m.scalar = -m.scalar;
    return out;
  }
  friend CoeffSum operator*(const CoeffSum& a, const CoeffSum& b) {
    CoeffSum out;
    for (const auto& ma : a.terms_)
      for (const auto& mb : b.terms_) {
        CoeffMonomial m;
        m.scalar = ma.scalar * mb.scalar;
        for (int i = 0; i < 3; ++i) m.pows[i] = ma.pows[i] + mb.pows[i];
        m.factors = ma.factors;
        for (const auto& f : mb.factors) merge_factor(m.factors, f.base, f.power);
        out.terms_.push_back(std::move(m));
      }
    out.normalize();
    return out;
  }
  CoeffSum& operator+=(const CoeffSum& b) { return *this = *this + b; }
  CoeffSum& operator*=(const CoeffSum& b) { return *this = *this * b; }

  CoeffSum conj() const {
    CoeffSum out = *this;
    for (auto& m : out.terms_) m.scalar = m.scalar.conj();
    return out;
  }

  // Multiply by f^power exactly; f need not be canonical (content is folded
  // into the scalar). pre: f nonzero.
  CoeffSum times_freq_factor(const FreqExpr& f, int power) const {
    const CanonicalFreq cf = canonicalize(f);
    CoeffSum out = *this;
    const Rational content_pow = cf.content.pow(power);
    for (auto& m : out.terms_) {
      m.scalar = m.scalar * content_pow;
      merge_factor(m.factors, cf.primitive, power);
    }
    out.normalize();
    return out;
  }

  std::complex<double> eval(const EvalPoint& p) const {
    std::complex<double> acc = 0;
    for (const auto& m : terms_) acc += m.eval(p);
    return acc;
  }

  bool is_zero(EvalContext& ctx = default_eval_context()) const {
    if (terms_.empty()) return true;
    for (const auto& p : ctx.points()) {
      std::complex<double> acc = 0;
      double scale = 0;
      for (const auto& m : terms_) {
        const std::complex<double> v = m.eval(p);
        acc += v;
        scale += std::abs(v);
      }
      if (std::abs(acc) > ctx.rtol * std::max(scale, 1e-300)) return false;
    }
    return true;
  }

  bool equals(const CoeffSum& other, EvalContext& ctx = default_eval_context()) const {
    return (*this - other).is_zero(ctx);
  }

  // Text form: single monomial as-is, sums wrapped in braces: "{m1 + m2}".
  std::string str() const {
    if (terms_.empty()) return "(0/1)";
    if (terms_.size() == 1) return terms_[0].str();
    std::string out = "{";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) out += " + ";
      out += terms_[i].str();
    }
    return out + "}";
  }

 private:
  static void merge_factor(std::vector<FreqFactor>& fs, const FreqExpr& base, int power) {
    if (power == 0) return;
    for (auto it = fs.begin(); it != fs.end(); ++it) {
      if (it->base == base) {
        it->power += power;
        if (it->power == 0) fs.erase(it);
        return;
      }
    }
    fs.push_back({base, power});
    std::sort(fs.begin(), fs.end());
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const CoeffMonomial& a, const CoeffMonomial& b) { return key_less(a, b); });
    std::vector<CoeffMonomial> merged;
    for (auto& m : terms_) {
      if (!merged.empty() && key_equal(merged.back(), m))
        merged.back().scalar = merged.back().scalar + m.scalar;
      else
        merged.push_back(std::move(m));
    }
    terms_.clear();
    for (auto& m : merged)
      if (!m.scalar.is_zero()) terms_.push_back(std::move(m));
  }

  std::vector<CoeffMonomial> terms_;
};

}  // namespace oscar::algebra
