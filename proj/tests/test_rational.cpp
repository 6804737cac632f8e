#include <doctest.h>

#include "epb/rational.hpp"
#include "testutil.hpp"

using namespace epb;

TEST_SUITE("rational") {

TEST_CASE("lowest terms and positive denominator") {
  Rational r(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational(0, 7).num() == 0);
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational(-10, -5) == Rational(2));
}

TEST_CASE("arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(7, 2) / Rational(7) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("string round trip") {
  CHECK(Rational(-3, 7).str() == "-3/7");
  CHECK(Rational(42).str() == "42");
  CHECK(Rational(std::string("-3/7")) == Rational(-3, 7));
  CHECK(Rational(std::string("12")) == Rational(12));
}

TEST_CASE("pow") {
  CHECK(Rational::pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(Rational::pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(Rational::pow(Rational(5), 0) == Rational(1));
}

TEST_CASE("invariants hold on random arithmetic") {
  testutil::Rng rng(123);
  for (int k = 0; k < 2000; ++k) {
    Rational a = testutil::random_rational(rng, 50);
    Rational b = testutil::random_rational(rng, 50);
    for (Rational r : {a + b, a - b, a * b}) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
      CHECK(g == 1);
      CHECK(r.den() > 0);
    }
  }
}

}  // TEST_SUITE
