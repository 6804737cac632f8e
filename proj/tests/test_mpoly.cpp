#include <doctest.h>

#include "epb/mpoly.hpp"
#include "testutil.hpp"

using namespace epb;
using testutil::Rng;

namespace {

MPoly xv(int i) { return MPoly::variable(VarId::x(i)); }
MPoly fv(int i) { return MPoly::variable(VarId::f(i)); }

}  // namespace

TEST_SUITE("mpoly") {

TEST_CASE("add cancellation and identity") {
  CHECK((xv(0) + xv(2)) + (-xv(2)) == xv(0));
  MPoly p = xv(0) * xv(3) + MPoly::constant(Rational(1, 2)) * xv(2);
  CHECK(p + MPoly::zero() == p);
  MPoly half_sq = Rational(1, 2) * (xv(0) * xv(0));
  CHECK(half_sq + half_sq == xv(0) * xv(0));
}

TEST_CASE("mul basics") {
  CHECK(xv(0) * xv(3) == MPoly::term(Monomial::var(VarId::x(0)).times(Monomial::var(VarId::x(3))), 1));
  CHECK((fv(1) - fv(2)) * (fv(1) + fv(2)) == fv(1) * fv(1) - fv(2) * fv(2));
  CHECK(MPoly::zero() * (xv(0) + xv(2)) == MPoly::zero());
}

TEST_CASE("exact division") {
  CHECK((fv(1) * fv(1) - fv(2) * fv(2)).exact_div(fv(1) - fv(2)) == fv(1) + fv(2));
  CHECK(MPoly::zero().exact_div(fv(1) - fv(2)) == MPoly::zero());
  // (f1^3 - f2^3)/(f1 - f2) = f1^2 + f1 f2 + f2^2
  MPoly f13 = fv(1).pow(3), f23 = fv(2).pow(3);
  CHECK((f13 - f23).exact_div(fv(1) - fv(2)) ==
        fv(1).pow(2) + fv(1) * fv(2) + fv(2).pow(2));
  CHECK_THROWS_AS((xv(0) * xv(3) + MPoly::constant(1)).exact_div(xv(0)), NotDivisible);
  CHECK_THROWS_AS(MPoly::constant(1).exact_div(MPoly::zero()), std::domain_error);
}

TEST_CASE("partial derivatives") {
  CHECK((xv(0) * xv(3)).partial(VarId::x(3)) == xv(0));
  CHECK((xv(2) * xv(2)).partial(VarId::x(2)) == Rational(2) * xv(2));
  MPoly p = MPoly::variable(VarId::a(0)) * xv(0) * xv(0);
  CHECK(p.partial(VarId::a(0)) == xv(0) * xv(0));
  CHECK(p.partial(VarId::x(5)) == MPoly::zero());
}

TEST_CASE("substitute") {
  MPoly p = MPoly::variable(VarId::a(0)) * xv(0) * xv(0);
  CHECK(p.substitute({{VarId::a(0), MPoly::constant(1)}}) == xv(0) * xv(0));
  CHECK(xv(0).substitute({{VarId::x(0), MPoly::variable(VarId::e(1))}}) ==
        MPoly::variable(VarId::e(1)));
  CHECK(p.substitute({}) == p);
  // simultaneous, not sequential
  MPoly q = xv(0) * xv(2);
  auto r = q.substitute({{VarId::x(0), xv(2)}, {VarId::x(2), xv(0)}});
  CHECK(r == q);
}

TEST_CASE("canonical text form") {
  MPoly p = Rational(-2) * (xv(0) * xv(3)) +
            MPoly::variable(VarId::b(1)) * xv(0) * xv(2) * MPoly::constant(Rational(1, 2));
  CHECK(p.str() == "(-2)*x0*x3 + 1/2*b1*x0*x2");
  CHECK(MPoly::zero().str() == "0");
  CHECK(MPoly::constant(Rational(-1, 3)).str() == "(-1/3)");
  CHECK(xv(-2).str() == "xm2");
  CHECK(MPoly::parse(p.str()) == p);
}


TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS(MPoly::parse("x0 + "));
  CHECK_THROWS(MPoly::parse("2*"));
  CHECK_THROWS(MPoly::parse("x0 ** x2"));
  CHECK_THROWS(MPoly::parse("q9"));
}

TEST_CASE("ring axioms on random polynomials") {
  Rng rng(7);
  auto pool = testutil::mixed_pool();
  for (int k = 0; k < 300; ++k) {
    MPoly a = testutil::random_mpoly(rng, pool);
    MPoly b = testutil::random_mpoly(rng, pool);
    MPoly c = testutil::random_mpoly(rng, pool);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == MPoly::zero());
  }
}

TEST_CASE("exact_div inverts mul") {
  Rng rng(11);
  auto pool = testutil::mixed_pool();
  int done = 0;
  while (done < 300) {
    MPoly q = testutil::random_mpoly(rng, pool);
    MPoly d = testutil::random_mpoly(rng, pool);
    if (d.is_zero()) continue;
    CHECK((q * d).exact_div(d) == q);
    ++done;
  }
}

TEST_CASE("serialization round trip on random polynomials") {
  Rng rng(13);
  auto pool = testutil::mixed_pool();
  std::vector<VarId> with_negative = pool;
  with_negative.push_back(VarId::x(-2));
  with_negative.push_back(VarId::u(1));
  for (int k = 0; k < 300; ++k) {
    MPoly p = testutil::random_mpoly(rng, with_negative);
    CHECK(MPoly::parse(p.str()) == p);
  }
}

TEST_CASE("degree and homogeneity helpers") {
  MPoly p = xv(0) * xv(3) + xv(2) * xv(2);
  CHECK(p.is_homogeneous_in(VarClass::X, 2));
  CHECK(!(p + xv(0)).is_homogeneous_in(VarClass::X, 2));
  MPoly q = MPoly::variable(VarId::a(1)) * xv(0);
  CHECK(q.degree_in(VarClass::Param) == 1);
  CHECK(q.degree_in(VarClass::X) == 1);
  CHECK(q.degree() == 2);
}

}  // TEST_SUITE
