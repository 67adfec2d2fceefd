#include "doctest.h"

#include "bethemix/errors.hpp"
#include "bethemix/exact.hpp"

using namespace bethemix;

TEST_CASE("rational string round trip") {
  CHECK(rational_to_string(Rational(1, 3)) == "1/3");
  CHECK(rational_to_string(Rational(0)) == "0/1");
  CHECK(rational_to_string(Rational(-2, 4)) == "-1/2");
  CHECK(rational_from_string("48/49") == Rational(48, 49));
  CHECK(rational_from_string("7") == Rational(7));
  CHECK(rational_from_string("-3/9") == Rational(-1, 3));
  CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_string(""), ParseError);
  CHECK_THROWS_AS(rational_from_string("x/y"), ParseError);
}

TEST_CASE("doubles convert exactly") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(0.1) != Rational(1, 10));  // 0.1 is not dyadic
  CHECK(rational_to_double(Rational(1, 4)) == 0.25);
}

TEST_CASE("integer powers") {
  CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(rational_pow(Rational(1, 2), -1) == Rational(2));
  CHECK(rational_pow(Rational(5), 0) == Rational(1));
  CHECK_THROWS_AS(rational_pow(Rational(0), -2), DomainError);
}
