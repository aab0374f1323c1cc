// rational.hpp — exact rational and Gaussian-rational scalars
#pragma once

#include <oscar/errors.hpp>

#include <complex>
#include <cstdint>
#include <numeric>
#include <string>

namespace oscar {

namespace detail {
inline std::int64_t to_i64_checked(__int128 v) {
  if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
    throw NumericError("rational overflow: value exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace detail

// Exact rational number with canonical form: gcd(num, den) = 1, den > 0, zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers is intended
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_,
                   __int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw NumericError("rational division by zero");
    return from128(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  Rational inverse() const {
    if (num_ == 0) throw NumericError("rational inverse of zero");
    Rational r;
    r.num_ = den_ * (num_ < 0 ? -1 : 1);
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }

  // Integer power; negative exponents invert.
  Rational pow(int e) const {
    Rational base = e < 0 ? inverse() : *this;
    int n = e < 0 ? -e : e;
    Rational acc(1);
    for (int i = 0; i < n; ++i) acc *= base;
    return acc;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Canonical text form "num/den", e.g. "-3/2", "1/1".
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

 private:
  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw NumericError("rational with zero denominator");
    __int128 nn = n, dd = d;
    if (dd < 0) {
      nn = -nn;
      dd = -dd;
    }
    __int128 g = detail::gcd128(nn, dd);
    if (g > 1) {
      nn /= g;
      dd /= g;
    }
    num_ = detail::to_i64_checked(nn);
    den_ = detail::to_i64_checked(dd);
    if (num_ == 0) den_ = 1;
  }

  static Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw NumericError("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::to_i64_checked(n);
    r.den_ = detail::to_i64_checked(d);
    if (r.num_ == 0) r.den_ = 1;
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Gaussian rational: exact complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(r) {}  // NOLINT: implicit from Rational is intended
  GaussianRational(Rational r, Rational i) : re(r), im(i) {}

  static GaussianRational unit_i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  GaussianRational conj() const { return {re, -im}; }

  GaussianRational operator-() const { return {-re, -im}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator*(const GaussianRational& a, const Rational& s) {
    return {a.re * s, a.im * s};
  }
  GaussianRational inverse() const {
    Rational n2 = re * re + im * im;
    if (n2.is_zero()) throw NumericError("gaussian-rational inverse of zero");
    return {re / n2, -(im / n2)};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  // Text forms: "(re)", "(im*i)", "(re+im*i)", "(re-im*i)"; parts in num/den form.
  std::string str() const {
    if (im.is_zero()) return "(" + re.str() + ")";
    if (re.is_zero()) return "(" + im.str() + "*i)";
    if (im.sign() > 0) return "(" + re.str() + "+" + im.str() + "*i)";
    return "(" + re.str() + "-" + (-im).str() + "*i)";
  }
};

}  // namespace oscar
