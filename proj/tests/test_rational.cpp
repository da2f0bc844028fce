#include "doctest.h"
#include "helpers.hpp"
#include "qfano/rational.hpp"

using qfano::Rational;

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(6, 3).is_integer());
  CHECK(Rational(6, 3).as_integer() == 2);
  CHECK(Rational(125, 2).str() == "125/2");
  CHECK(Rational(-7).str() == "-7");
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational arithmetic stays exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(a < Rational(1, 2));
  CHECK(Rational(29, 2) > Rational(14));
  CHECK_THROWS(a / Rational(0));
}

TEST_CASE("rational parse and print round-trip") {
  for (const char* s : {"0", "5", "-3", "1/2", "-29/2", "125/2", "81/2"}) {
    Rational r = Rational::parse(s);
    CHECK(r.str() == s);
  }
  CHECK(Rational::parse("4/8") == Rational(1, 2));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("1/-2"));
  CHECK_THROWS(Rational::parse("a"));
  CHECK_THROWS(Rational::parse("1.5"));
  CHECK_THROWS(Rational::parse("1/2x"));
}

TEST_CASE("rational overflow guard throws instead of wrapping") {
  Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
  // near the edge but fine
  CHECK(Rational(1LL << 40) * Rational(1, 1LL << 40) == Rational(1));
}

TEST_CASE("rational field laws on random values") {
  qfano::testing::Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    Rational a = rng.rational(), b = rng.rational(), c = rng.rational();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!c.is_zero()) CHECK((a / c) * c == a);
    CHECK(a - a == Rational(0));
  }
}
