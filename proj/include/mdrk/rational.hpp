#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdrk {

/// Exact rational number on 128-bit integers, always kept in lowest terms
/// with a positive denominator. Large enough for all Lagrange-basis
/// coefficient arithmetic up to stencil radius 8 (factors bounded by 16!).
class Rational {
 public:
  using Int = __int128;

  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  static Rational from_int128(Int n, Int d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
  }

  Int numerator() const { return num_; }
  Int denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  Rational operator-() const { return from_int128(-num_, den_); }

  Rational& operator+=(const Rational& o) {
    // a/b + c/d = (a*(d/g) + c*(b/g)) / (b*(d/g)), g = gcd(b, d)
    Int g = gcd128(den_, o.den_);
    Int dg = o.den_ / g;
    Int n = checked_add(checked_mul(num_, dg), checked_mul(o.num_, den_ / g));
    Int d = checked_mul(den_, dg);
    num_ = n;
    den_ = d;
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    Int g1 = gcd128(abs128(num_), o.den_);
    Int g2 = gcd128(abs128(o.num_), den_);
    num_ = checked_mul(num_ / g1, o.num_ / g2);
    den_ = checked_mul(den_ / g2, o.den_ / g1);
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return *this *= from_int128(o.den_, o.num_);
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (a - b).num_ < 0;
  }

  /// Nearest double. Exact division when both parts fit into the 53-bit
  /// significand; otherwise a long-double intermediate is used.
  double to_double() const {
    const Int lim = Int(1) << 53;
    if (abs128(num_) < lim && den_ < lim) {
      return static_cast<double>(static_cast<long long>(num_)) /
             static_cast<double>(static_cast<long long>(den_));
    }
    return static_cast<double>(static_cast<long double>(num_) /
                               static_cast<long double>(den_));
  }

  /// "num/den", or just "num" when the denominator is one.
  std::string to_string() const {
    std::string s = int128_to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += int128_to_string(den_);
    }
    return s;
  }

  static Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= Rational(i);
    return r;
  }

  Rational pow(int e) const {
    if (e < 0) return Rational(1) / pow(-e);
    Rational r(1), base = *this;
    while (e > 0) {
      if (e & 1) r *= base;
      base = (e > 1) ? base * base : base;
      e >>= 1;
    }
    return r;
  }

 private:
  static Int abs128(Int v) { return v < 0 ? -v : v; }

  static Int gcd128(Int a, Int b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
      throw std::overflow_error("Rational: 128-bit overflow in multiply");
    return r;
  }
  static Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
      throw std::overflow_error("Rational: 128-bit overflow in add");
    return r;
  }

  static std::string int128_to_string(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    char buf[48];
    int pos = sizeof(buf);
    while (u > 0) {
      buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
      u /= 10;
    }
    std::string s(buf + pos, buf + sizeof(buf));
    return neg ? "-" + s : s;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Int g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  Int num_;
  Int den_;
};

}  // namespace mdrk
