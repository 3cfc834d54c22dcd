#pragma once

// Exact numbers of the form p + q * sqrt(2) with rational p, q. Fractional
// matching weights built from b = 1 + sqrt(2) live in this field, so theorem
// inequalities can be checked without rounding.

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dynmatch {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Nearest rational with denominator dividing 10^9 (reduced). Decimal inputs
/// such as 0.1 or 0.25 come back exact.
Rational rational_from_double(double x);

class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(Rational p, Rational q = 0) : p_(std::move(p)), q_(std::move(q)) {}
  QSqrt2(std::int64_t p) : p_(p), q_(0) {}

  static QSqrt2 sqrt2() { return {0, 1}; }
  /// b = 1 + sqrt(2).
  static QSqrt2 b() { return {1, 1}; }

  const Rational& rational_part() const noexcept { return p_; }
  const Rational& sqrt2_part() const noexcept { return q_; }

  int sign() const;
  double to_double() const;
  std::string str() const;

  QSqrt2 inverse() const;

  QSqrt2& operator+=(const QSqrt2& o);
  QSqrt2& operator-=(const QSqrt2& o);
  QSqrt2& operator*=(const QSqrt2& o);
  QSqrt2& operator/=(const QSqrt2& o) { return *this *= o.inverse(); }

  friend QSqrt2 operator+(QSqrt2 a, const QSqrt2& b) { return a += b; }
  friend QSqrt2 operator-(QSqrt2 a, const QSqrt2& b) { return a -= b; }
  friend QSqrt2 operator*(QSqrt2 a, const QSqrt2& b) { return a *= b; }
  friend QSqrt2 operator/(QSqrt2 a, const QSqrt2& b) { return a /= b; }
  friend QSqrt2 operator-(const QSqrt2& a) { return {-a.p_, -a.q_}; }

  friend bool operator==(const QSqrt2& a, const QSqrt2& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const QSqrt2& a, const QSqrt2& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational p_ = 0;
  Rational q_ = 0;
};

}  // namespace dynmatch
