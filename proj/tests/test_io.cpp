#include "doctest.h"
#include "sendov/errors.hpp"
#include "sendov/io.hpp"

using namespace sendov;

TEST_CASE("reals: exact doubles as numbers, the rest as strings") {
  CHECK(real_to_json(DoubleDouble(0.25)) == json(0.25));
  const DoubleDouble third = DoubleDouble(1.0) / DoubleDouble(3.0);
  const json j = real_to_json(third);
  REQUIRE(j.is_string());
  CHECK(real_from_json(j) == third);
  CHECK(real_from_json(json("1.5E-3")) == DoubleDouble::parse("0.0015"));
  CHECK_THROWS_AS(real_from_json(json("abc")), InvalidSpec);
  CHECK_THROWS_AS(real_from_json(json(true)), InvalidSpec);
}

TEST_CASE("spec round trip") {
  const PolySpec spec(DoubleDouble::parse("0.788188270312241"),
                      {CriticalPoint(ComplexDD{DoubleDouble::parse("0.0469833741737209"),
                                               DoubleDouble::parse("0.576557593047195")},
                                     1),
                       CriticalPoint(std::complex<double>(-0.5, 0.0), 3)});
  const json j = spec_to_json(spec);
  CHECK(j["critical_points"][1]["re"] == json(-0.5));
  const PolySpec back = spec_from_json(json::parse(j.dump()));
  CHECK(back.beta() == spec.beta());
  CHECK(back.critical_points()[0].zeta.im == spec.critical_points()[0].zeta.im);
  CHECK(back.degree() == 5);
  CHECK(spec_to_json(back).dump() == j.dump());
}

TEST_CASE("malformed specs") {
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"critical_points": []})")), InvalidSpec);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"beta": 1.5, "critical_points": [{"re": 0, "m": 1}]})")),
                  InvalidSpec);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"beta": 0.5, "critical_points": [{"re": 0, "m": 0}]})")),
                  InvalidSpec);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"beta": 0.5, "critical_points": [{"re": 0}]})")), InvalidSpec);
  CHECK(spec_from_json(json::parse(R"({"beta": "0.5", "critical_points": [{"re": "-0.1", "m": 2}]})")).degree() == 3);
}

TEST_CASE("problem round trip") {
  SearchProblem p;
  p.n = 6;
  p.pattern = {{{1, true}, {3, false}}};
  p.beta_hi = 0.99;
  const SearchProblem back = problem_from_json(json::parse(problem_to_json(p).dump()));
  CHECK(back.n == 6);
  CHECK(back.pattern == p.pattern);
  CHECK(back.beta_hi == 0.99);
  CHECK(back.beta_mode == BetaMode::free);

  json fixed = problem_to_json(p);
  fixed["beta"] = {{"mode", "fixed"}, {"value", 0.5}};
  fixed["normalization"] = "penalty_only";
  const SearchProblem f = problem_from_json(fixed);
  CHECK(f.beta_mode == BetaMode::fixed);
  CHECK(f.normalization == Normalization::penalty_only);

  json wrong = problem_to_json(p);
  wrong["n"] = 7;
  CHECK_THROWS_AS(problem_from_json(wrong), InvalidSpec);
  wrong = problem_to_json(p);
  wrong["beta"]["mode"] = "loose";
  CHECK_THROWS_AS(problem_from_json(wrong), InvalidSpec);
}

TEST_CASE("membership and descriptor JSON") {
  MembershipReport m;
  m.is_member = true;
  m.max_modulus = 0.5;
  m.degree = 3;
  m.method = MembershipMethod::both;
  const json j = membership_to_json(m);
  CHECK(j["is_member"] == true);
  CHECK(j["disk_count"].is_null());
  CHECK(j["method"] == "both");

  const json d = descriptor_to_json(describe_phelps_rodriguez(5, 0.25));
  CHECK(d["family"] == "phelps_rodriguez");
  CHECK(d["params"]["t"] == 0.25);
  CHECK(spec_from_json(d).degree() == 5);
}
