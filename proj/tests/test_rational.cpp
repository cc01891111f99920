#include <stdexcept>

#include "doctest.h"
#include "pldyn/rational.hpp"

using pldyn::Rational;

TEST_CASE("parse and format use canonical p/q") {
  CHECK(Rational::parse("6/8").str() == "3/4");
  CHECK(Rational::parse("4/2").str() == "2");
  CHECK(Rational::parse("-1/3").str() == "-1/3");
  CHECK(Rational::parse("0/5").str() == "0");
  CHECK(Rational(10, -4).str() == "-5/2");
}

TEST_CASE("malformed rationals are rejected") {
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("floor, ceil and frac") {
  CHECK(pldyn::floor_int(Rational(-1, 3)) == -1);
  CHECK(pldyn::ceil_int(Rational(-1, 3)) == 0);
  CHECK(pldyn::floor_int(Rational(7, 3)) == 2);
  CHECK(pldyn::frac(Rational(7, 3)) == Rational(1, 3));
  CHECK(pldyn::frac(Rational(-1, 4)) == Rational(3, 4));
  CHECK(pldyn::pow2(-3) == Rational(1, 8));
  CHECK(pldyn::pow2(4) == Rational(16));
}

TEST_CASE("arithmetic is exact well past 64-bit range") {
  Rational third(1, 3);
  Rational p = 1;
  for (int i = 0; i < 80; ++i) p *= third;
  Rational q = p;
  for (int i = 0; i < 80; ++i) q *= Rational(3);
  CHECK(q == Rational(1));
  CHECK(p.str().size() > 30);
}

TEST_CASE("equal values hash equally") {
  CHECK(Rational(2, 4).hash() == Rational(1, 2).hash());
}
