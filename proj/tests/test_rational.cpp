#include "doctest.h"
#include "mmsalloc/error.hpp"
#include "mmsalloc/rational.hpp"

using namespace mmsalloc;

TEST_CASE("rational parsing and printing") {
  CHECK(Rational::parse("6/4") == Rational(BigInt(3), BigInt(2)));
  CHECK(Rational::parse(" -7 ") == Rational(-7));
  CHECK(Rational::parse("3/-6").to_string() == "-1/2");
  CHECK(Rational::parse("-3/6").to_string() == "-1/2");
  CHECK(Rational(BigInt(10), BigInt(5)).to_string() == "2");
  CHECK(Rational::parse("123456789012345678901234567890").to_string() == "123456789012345678901234567890");
  CHECK_THROWS_AS(Rational::parse("1/0"), MmsError);
  CHECK_THROWS_AS(Rational::parse("abc"), MmsError);
  CHECK_THROWS_AS(Rational::parse(""), MmsError);
}

TEST_CASE("rational arithmetic stays exact") {
  Rational third(BigInt(1), BigInt(3));
  CHECK(third + third + third == Rational(1));
  CHECK(third * 3 - 1 == Rational(0));
  CHECK((Rational(7) / 2).floor() == 3);
  CHECK((Rational(-7) / 2).floor() == -4);
  CHECK((Rational(-7) / 2).ceil() == -3);
  CHECK(Rational(-1) < third);
  CHECK((-third).sign() == -1);
  CHECK(Rational(BigInt(2), BigInt(4)).denominator() == 2);
}
