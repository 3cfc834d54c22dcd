#include "dynmatch/exact_number.hpp"

#include <cmath>
#include <sstream>

#include "dynmatch/error.hpp"

namespace dynmatch {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error(Errc::kInvalidInput, "non-finite value");
  constexpr std::int64_t kScale = 1'000'000'000;
  const long double scaled = std::round(static_cast<long double>(x) * kScale);
  return Rational(BigInt(static_cast<std::int64_t>(scaled)), BigInt(kScale));
}

// sign(p + q sqrt2): when p and q disagree in sign compare p^2 with 2 q^2.
int QSqrt2::sign() const {
  const int sp = p_.sign();
  const int sq = q_.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  const Rational lhs = p_ * p_;
  const Rational rhs = 2 * q_ * q_;
  if (lhs == rhs) return 0;  // unreachable for rational p, q != 0
  return lhs > rhs ? sp : sq;
}

double QSqrt2::to_double() const {
  return p_.convert_to<double>() + q_.convert_to<double>() * std::sqrt(2.0);
}

std::string QSqrt2::str() const {
  std::ostringstream os;
  os << p_ << (q_.sign() < 0 ? " - " : " + ") << abs(q_) << "*sqrt2";
  return os.str();
}

QSqrt2 QSqrt2::inverse() const {
  // 1 / (p + q s) = (p - q s) / (p^2 - 2 q^2)
  const Rational norm = p_ * p_ - 2 * q_ * q_;
  if (norm == 0) throw Error(Errc::kInvalidInput, "division by zero");
  return {p_ / norm, -q_ / norm};
}

QSqrt2& QSqrt2::operator+=(const QSqrt2& o) {
  p_ += o.p_;
  q_ += o.q_;
  return *this;
}

QSqrt2& QSqrt2::operator-=(const QSqrt2& o) {
  p_ -= o.p_;
  q_ -= o.q_;
  return *this;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
  const Rational p = p_ * o.p_ + 2 * q_ * o.q_;
  const Rational q = p_ * o.q_ + q_ * o.p_;
  p_ = p;
  q_ = q;
  return *this;
}

}  // namespace dynmatch
