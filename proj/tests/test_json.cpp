#include <doctest.h>

#include "epb/json_io.hpp"
#include "epb/schouten.hpp"
#include "testutil.hpp"

using namespace epb;
using testutil::Rng;

TEST_SUITE("json") {

TEST_CASE("mpoly round trip") {
  Rng rng(67);
  auto pool = testutil::mixed_pool();
  pool.push_back(VarId::x(-2));
  pool.push_back(VarId::u(2));
  for (int k = 0; k < 100; ++k) {
    MPoly p = testutil::random_mpoly(rng, pool);
    CHECK(mpoly_from_json(mpoly_to_json(p)) == p);
  }
  json j = mpoly_to_json(MPoly::constant(Rational(-7, 3)));
  CHECK(j[0]["coeff"]["num"] == "-7");
  CHECK(j[0]["coeff"]["den"] == "3");
}

TEST_CASE("bracket table round trip") {
  for (int n : {4, 5}) {
    BracketTable t = build_table(n);
    BracketTable back = table_from_json(table_to_json(t));
    CHECK(back.n == t.n);
    CHECK(back.parity == t.parity);
    CHECK(back.alpha == t.alpha);
    CHECK(back.vars == t.vars);
    CHECK(back.entries == t.entries);
    CHECK(back.symbolic == t.symbolic);
  }
}

TEST_CASE("golden wrapper carries a schema version") {
  json g = golden_table_json(build_table(4));
  CHECK(g["schema_version"] == kGoldenSchemaVersion);
  CHECK(g["n"] == 4);
  CHECK(g["parity"] == "even");
}

TEST_CASE("serialization is deterministic") {
  BracketTable t = build_table(5);
  CHECK(table_to_json(t).dump(2) == table_to_json(build_table(5, 3)).dump(2));
}

TEST_CASE("compat report JSON shape") {
  BracketTable t = build_table(5);
  NineSplit split = split_nine(t);
  CompatReport r = compatible_space_dim(split.nine(), 0);
  json j = compat_report_to_json(r);
  CHECK(j["n"] == 5);
  CHECK(j["degree"] == 0);
  CHECK(j["unknowns"] == 10);
  CHECK(j["solution_dim"] == 0);
  CHECK(j["conclusive"] == true);
  CHECK(j["basis"].is_array());
}

TEST_CASE("params file validation") {
  json ok = {{"a0", {{"num", "1"}, {"den", "2"}}}};
  auto vals = params_from_json(ok, Parity::Even);
  CHECK(vals.at(VarId::a(0)) == Rational(1, 2));
  json bad_even = {{"c", {{"num", "1"}, {"den", "1"}}}};
  CHECK_THROWS(params_from_json(bad_even, Parity::Even));
  CHECK_NOTHROW(params_from_json(bad_even, Parity::Odd));
  json bad_odd = {{"a4", {{"num", "1"}, {"den", "1"}}}};
  CHECK_THROWS(params_from_json(bad_odd, Parity::Odd));
}

}  // TEST_SUITE
