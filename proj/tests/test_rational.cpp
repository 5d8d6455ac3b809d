#include <doctest.h>

#include "cubeshape/rational.hpp"

using cubeshape::Rational;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, -7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
}

TEST_CASE("rational comparisons cross-multiply exactly") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(10, 1) >= Rational(10));
  CHECK(Rational(7, 2) > Rational(3));
  // values whose doubles collide still compare exactly
  Rational big(3037000499LL, 3037000500LL);
  CHECK(big < Rational(1));
}

TEST_CASE("rational overflow is detected, not wrapped") {
  Rational huge(0x7fffffffffffffffLL);
  CHECK_THROWS_AS(huge * huge, std::overflow_error);
  CHECK_NOTHROW(huge * Rational(1));
  // reduction can bring an oversized intermediate back in range
  Rational half(1, 0x4000000000000000LL);
  CHECK_NOTHROW(half * Rational(0x4000000000000000LL));
}

TEST_CASE("from_double is the exact dyadic value") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(2.5) == Rational(5, 2));
  CHECK(Rational::from_double(8.0) == Rational(8));
  CHECK(Rational::from_double(-0.75) == Rational(-3, 4));
  // 0.1 is not 1/10 in binary; round-trip must reproduce the double exactly
  Rational tenth = Rational::from_double(0.1);
  CHECK(tenth.to_double() == 0.1);
  CHECK(tenth != Rational(1, 10));
  CHECK_THROWS_AS(Rational::from_double(1e300), std::overflow_error);
}

TEST_CASE("string form") {
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(-5).str() == "-5");
  CHECK(Rational(8, 4).str() == "2");
}
