#include <doctest.h>

#include <cmath>

#include "dynmatch/exact_number.hpp"

using namespace dynmatch;

TEST_SUITE("exact_number") {

TEST_CASE("decimal inputs are exact") {
  CHECK(rational_from_double(0.1) == Rational(1, 10));
  CHECK(rational_from_double(0.25) == Rational(1, 4));
  CHECK(rational_from_double(-2.5) == Rational(-5, 2));
}

TEST_CASE("identities in Q(sqrt 2)") {
  const QSqrt2 b = QSqrt2::b();
  const QSqrt2 one(1);
  CHECK(one - b.inverse() == QSqrt2(2, -1));
  CHECK(b.inverse() == QSqrt2(-1, 1));
  CHECK((b + one).inverse() == QSqrt2(1, Rational(-1, 2)));
  CHECK(QSqrt2::sqrt2() * QSqrt2::sqrt2() == QSqrt2(2));
  CHECK((b * b.inverse()) == one);
}

TEST_CASE("sign and ordering") {
  CHECK(QSqrt2(2, -1).sign() == 1);
  CHECK(QSqrt2(-2, 1).sign() == -1);
  CHECK(QSqrt2(1, -1).sign() == -1);
  CHECK(QSqrt2(Rational(141, 100), -1).sign() == -1);
  CHECK(QSqrt2(Rational(142, 100), -1).sign() == 1);
  CHECK(QSqrt2(0).sign() == 0);
  CHECK(QSqrt2(3) > QSqrt2(0, 2));
  CHECK(QSqrt2(2, -1) < QSqrt2(Rational(3, 5)));
}

TEST_CASE("ordering agrees with floating point away from ties") {
  for (int p = -6; p <= 6; ++p) {
    for (int q = -6; q <= 6; ++q) {
      const QSqrt2 v(Rational(p, 3), Rational(q, 2));
      const double d = p / 3.0 + q / 2.0 * std::sqrt(2.0);
      CHECK(v.to_double() == doctest::Approx(d));
      if (std::abs(d) > 1e-12) CHECK(v.sign() == (d > 0 ? 1 : -1));
    }
  }
}

TEST_CASE("string form") { CHECK(QSqrt2(2, -1).str() == "2 - 1*sqrt2"); }

}  // TEST_SUITE
