#include <doctest.h>

#include "epb/brackets.hpp"
#include "testutil.hpp"

using namespace epb;
using testutil::Rng;

namespace {

MPoly xv(int i) { return MPoly::variable(VarId::x(i)); }
MPoly pv(VarId v) { return MPoly::variable(v); }

// Hand-evaluated Case-1 oracle for {x0, x2}, even n:
// (2-n) x0 x3 + (n/2 - 1)(b0 x0^2 + b1 x0 x2 + b2 x0 x4).
MPoly oracle_x0x2_even(int n) {
  Rational k(n - 2);
  return Rational(-1) * k * (xv(0) * xv(3)) +
         (Rational(n, 2) - 1) *
             (pv(VarId::b(0)) * xv(0) * xv(0) + pv(VarId::b(1)) * xv(0) * xv(2) +
              pv(VarId::b(2)) * xv(0) * xv(4));
}

// Hand-evaluated Case-1 oracle for {x0, x2}, odd n:
// (2-n) c x0 x3 + (3-n) x0 x5 - x2 x3
//   + (n/2-1)(b0 x0^2 + b1 x0 x2) + (n-3)/2 b2 x0 x4 + 1/2 b2 x2^2.
MPoly oracle_x0x2_odd(int n) {
  return Rational(2 - n) * pv(VarId::c()) * (xv(0) * xv(3)) +
         Rational(3 - n) * (xv(0) * xv(5)) - xv(2) * xv(3) +
         (Rational(n, 2) - 1) * (pv(VarId::b(0)) * xv(0) * xv(0) +
                                 pv(VarId::b(1)) * xv(0) * xv(2)) +
         Rational(n - 3, 2) * pv(VarId::b(2)) * (xv(0) * xv(4)) +
         Rational(1, 2) * pv(VarId::b(2)) * (xv(2) * xv(2));
}

}  // namespace

TEST_SUITE("brackets") {

TEST_CASE("pair_bracket matches the hand-evaluated Case-1 oracle") {
  for (int n : {4, 6, 8}) CHECK(pair_bracket(n, 0, 2).poly == oracle_x0x2_even(n));
  for (int n : {5, 7}) CHECK(pair_bracket(n, 0, 2).poly == oracle_x0x2_odd(n));
}

TEST_CASE("antisymmetry") {
  CHECK(pair_bracket(6, 3, 3).poly == MPoly::zero());
  CHECK(pair_bracket(6, 2, 0).poly == -pair_bracket(6, 0, 2).poly);
  for (int n : {5, 6}) {
    BracketTable t = build_table(n);
    for (int i : t.vars)
      for (int j : t.vars)
        CHECK(pair_bracket(n, i, j).poly == -pair_bracket(n, j, i).poly);
  }
}

TEST_CASE("build_table shape and parameter linearity") {
  BracketTable t5 = build_table(5);
  CHECK(t5.entries.size() == 10);
  CHECK(t5.vars == std::vector<int>{0, 2, 3, 4, 5});
  for (auto& [key, poly] : t5.entries) {
    CHECK(poly.degree_in(VarClass::Param) <= 1);
    CHECK(poly.is_homogeneous_in(VarClass::X, 2));
  }
  BracketTable t6 = build_table(6);
  CHECK(t6.entries.size() == 15);
  for (auto& [key, poly] : t6.entries) {
    CHECK(poly.degree_in(VarClass::Param) <= 1);
    CHECK(poly.is_homogeneous_in(VarClass::X, 2));
  }
}

TEST_CASE("closure: alpha = n succeeds, alpha = n±1 fails") {
  CHECK_NOTHROW(build_table(4, Rational(4)));
  CHECK_THROWS_AS(build_table(4, Rational(5)), ClosureViolation);
  CHECK_THROWS_AS(build_table(4, Rational(3)), ClosureViolation);
  CHECK_THROWS_AS(build_table(5, Rational(6)), ClosureViolation);
}

TEST_CASE("split_nine: nine tables, exact reconstruction") {
  for (int n : {5, 6}) {
    BracketTable t = build_table(n);
    NineSplit split = split_nine(t);
    CHECK(split.nine().size() == 9);
    for (auto* part : split.nine())
      for (auto& [key, poly] : part->entries)
        CHECK(poly.degree_in(VarClass::Param) == 0);
    BracketTable back = reconstruct(split);
    CHECK(back.entries == t.entries);
  }
}

TEST_CASE("instantiated table equals base + sum(p * direction)") {
  Rng rng(31);
  for (int n : {5, 6}) {
    BracketTable t = build_table(n);
    NineSplit split = split_nine(t);
    std::map<VarId, Rational> values;
    for (VarId p : legal_params(t.parity)) values[p] = testutil::random_rational(rng);
    BracketTable lhs = instantiate(t, values);
    BracketTable rhs = split.base;
    for (auto& [label, dir] : split.directions) {
      Rational v = values.at(*VarId::parse(label));
      rhs = table_lincomb(Rational(1), rhs, v, dir);
    }
    CHECK(lhs.entries == rhs.entries);
  }
}

TEST_CASE("nambu3 fixtures") {
  MPoly p = xv(1) * xv(2) * xv(3);
  BracketTable t = nambu3(p);
  CHECK(t.entry(1, 2) == xv(1) * xv(2));
  CHECK(t.entry(2, 3) == xv(2) * xv(3));
  CHECK(t.signed_entry(3, 1) == xv(1) * xv(3));  // {x3, x1} = dP/dx2
  MPoly cube = Rational(1, 3) * xv(1).pow(3);
  BracketTable t2 = nambu3(cube);
  CHECK(t2.entry(2, 3) == xv(1) * xv(1));
  CHECK(t2.entry(1, 2) == MPoly::zero());
  CHECK(t2.entry(1, 3) == MPoly::zero());
  CHECK_THROWS_AS(nambu3(xv(1) * xv(2)), std::invalid_argument);
}

TEST_CASE("jacobian4 fixtures") {
  MPoly p = xv(1) * xv(3) + xv(2) * xv(4);
  MPoly r = xv(1) * xv(1) + xv(2) * xv(3);
  BracketTable t = jacobian4(p, r);
  BracketTable zero = jacobian4(p, p);
  for (auto& [key, poly] : zero.entries) CHECK(poly.is_zero());
  BracketTable neg = jacobian4(r, p);
  for (auto& [key, poly] : t.entries)
    CHECK(neg.entry(key.first, key.second) == -poly);
  // spot check {x1, x2} = dP/dx3 dR/dx4 - dP/dx4 dR/dx3
  CHECK(t.entry(1, 2) ==
        p.partial(VarId::x(3)) * r.partial(VarId::x(4)) -
            p.partial(VarId::x(4)) * r.partial(VarId::x(3)));
}



// Hand-evaluated Case-2 oracle for {x0, x3}, even n (R = T = 1):
// sum_k [(2-n)a_k + (k) a_k-terms], B-part from -(n/2)diffQ + Q'.
MPoly oracle_x0x3_even(int n) {
  MPoly out;
  Rational half(1, 2);
  // A-part: a1..a4 groups
  out += Rational(2 - n) * half * pv(VarId::a(1)) * (xv(0) * xv(0));
  out += Rational(2 - n) * pv(VarId::a(2)) * (xv(0) * xv(2));
  out += Rational(3 - n) * pv(VarId::a(3)) * (xv(0) * xv(4));
  out += Rational(-n) * half * pv(VarId::a(3)) * (xv(2) * xv(2));
  if (n >= 6) out += Rational(4 - n) * pv(VarId::a(4)) * (xv(0) * xv(6));
  out += Rational(-n) * pv(VarId::a(4)) * (xv(2) * xv(4));
  // B-part
  out += (Rational(1) - Rational(n, 2)) * pv(VarId::b(1)) * (xv(0) * xv(3));
  if (n >= 5) out += (Rational(2) - Rational(n, 2)) * pv(VarId::b(2)) * (xv(0) * xv(5));
  out += Rational(-n, 2) * pv(VarId::b(2)) * (xv(2) * xv(3));
  return out;
}

// Hand-evaluated Case-3 oracle for {x3, x5} (R = 1, T = f), both parities.
MPoly oracle_x3x5(int n) {
  bool even = n % 2 == 0;
  MPoly out;
  int kmax = even ? 4 : 3;
  for (int k = 0; k <= kmax; ++k) {
    Rational c(2 - n + k);
    if (!c.is_zero() && (2 * k == 0 || 2 * k <= n))
      out += c * pv(VarId::a(k)) * (xv(2 * k) * xv(3));
    if (k >= 1) out += Rational(-k) * pv(VarId::a(k)) * (xv(2 * k - 2) * xv(5));
  }
  Rational half(1, 2);
  out += (Rational(1) - Rational(n, 2)) * pv(VarId::b(0)) * (xv(3) * xv(3));
  out += (Rational(1) - Rational(n, 2)) * pv(VarId::b(1)) * (xv(3) * xv(5));
  if (even) {
    if (n >= 8) out += (Rational(3) - Rational(n, 2)) * pv(VarId::b(2)) * (xv(3) * xv(7));
    out += Rational(-2) * pv(VarId::b(2)) * (xv(5) * xv(5));
  } else {
    if (n >= 7) out += Rational(5 - n, 2) * pv(VarId::b(2)) * (xv(3) * xv(7));
    out += Rational(-3, 2) * pv(VarId::b(2)) * (xv(5) * xv(5));
  }
  return out;
}

TEST_CASE("pair_bracket matches the hand-evaluated Case-2 and Case-3 oracles") {
  for (int n : {4, 6, 8}) CHECK(pair_bracket(n, 0, 3).poly == oracle_x0x3_even(n));
  for (int n : {6, 8}) CHECK(pair_bracket(n, 3, 5).poly == oracle_x3x5(n));
  for (int n : {5, 7}) CHECK(pair_bracket(n, 3, 5).poly == oracle_x3x5(n));
}

TEST_CASE("closure also holds through n = 10") {
  for (int n : {9, 10}) {
    CHECK_THROWS_AS(build_table(n, Rational(n - 1)), ClosureViolation);
    CHECK_THROWS_AS(build_table(n, Rational(n + 1)), ClosureViolation);
    CHECK_NOTHROW(build_table(n, Rational(n)));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(pair_bracket(6, 1, 2), std::invalid_argument);   // x1 is not a generator
  CHECK_THROWS_AS(pair_bracket(6, 0, 7), std::invalid_argument);
  CHECK_THROWS_AS(build_table(2), std::invalid_argument);
  BracketTable t = build_table(4);
  CHECK_THROWS_AS(t.entry(0, 5), std::out_of_range);
  CHECK_THROWS_AS(split_nine(instantiate(t, {})), std::invalid_argument);
  CHECK_THROWS_AS(instantiate(t, {{VarId::c(), Rational(1)}}), std::invalid_argument);
}

TEST_CASE("odd tables carry c; even tables do not") {
  BracketTable t5 = build_table(5);
  bool has_c = false;
  for (auto& [key, poly] : t5.entries)
    if (poly.degree_in_var(VarId::c()) > 0) has_c = true;
  CHECK(has_c);
  BracketTable t4 = build_table(4);
  for (auto& [key, poly] : t4.entries) CHECK(poly.degree_in_var(VarId::c()) == 0);
}

}  // TEST_SUITE
