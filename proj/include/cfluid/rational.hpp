#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "cfluid/errors.hpp"

namespace cfluid {

/// Exact rational number over 64-bit integers.  The algebraic data handled
/// here (structure constants, generator coefficients) stays tiny, so plain
/// int64 with gcd normalization is enough; overflow throws.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num) : num_(num), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked(a.num_, b.den_) + checked(b.num_, a.den_),
                    checked(a.den_, b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked(a.num_, b.num_), checked(a.den_, b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    return Rational(checked(a.num_, b.den_), checked(a.den_, b.num_));
  }
  Rational operator-() const { return Rational(-num_, den_); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  static std::int64_t checked(std::int64_t a, std::int64_t b) {
    const __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) throw Error("rational overflow");
    return static_cast<std::int64_t>(p);
  }
  void normalize() {
    if (den_ == 0) throw Error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Element of Q(sqrt(2)): a + b*sqrt(2).  Used to verify the o(3,2)
/// dictionary identities exactly after clearing sqrt(2) factors.
struct QSqrt2 {
  Rational a;  // rational part
  Rational b;  // coefficient of sqrt(2)

  QSqrt2() = default;
  QSqrt2(Rational rational_part) : a(rational_part) {}
  QSqrt2(Rational rational_part, Rational sqrt2_part)
      : a(rational_part), b(sqrt2_part) {}
  static QSqrt2 sqrt2() { return QSqrt2(Rational(0), Rational(1)); }

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  double to_double() const { return a.to_double() + b.to_double() * 1.4142135623730951; }

  friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
    return {x.a * y.a + Rational(2) * (x.b * y.b), x.a * y.b + x.b * y.a};
  }
  friend QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y) {
    // 1/(a + b sqrt2) = (a - b sqrt2)/(a^2 - 2 b^2)
    const Rational norm = y.a * y.a - Rational(2) * (y.b * y.b);
    if (norm.is_zero()) throw Error("division by zero in Q(sqrt2)");
    const QSqrt2 conj{y.a / norm, -y.b / norm};
    return x * conj;
  }
  QSqrt2 operator-() const { return {-a, -b}; }
  friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
    return x.a == y.a && x.b == y.b;
  }
};

}  // namespace cfluid
