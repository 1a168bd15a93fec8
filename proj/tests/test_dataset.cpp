#include <cmath>

#include "doctest.h"
#include "sendov/dataset.hpp"
#include "sendov/errors.hpp"
#include "sendov/metrics.hpp"
#include "sendov/verify.hpp"

using namespace sendov;
using nlohmann::json;

namespace {

const ExtremalRecord& row(int table, int n) {
  for (const ExtremalRecord& r : embedded_dataset()) {
    if (r.table_id == table && r.n == n) return r;
  }
  throw std::runtime_error("no such row");
}

VerifyOptions values_only() {
  VerifyOptions o;
  o.membership_cap = 1;
  return o;
}

}  // namespace

TEST_CASE("embedded dataset shape") {
  const auto& records = embedded_dataset();
  CHECK(records.size() == 18);
  for (const ExtremalRecord& r : records) {
    CHECK(r.spec().degree() == r.n);
    CHECK(r.values_table_id == r.table_id + 1);
    CHECK(r.derived_constant.has_value() == (r.table_id != 1));
  }
  CHECK(row(3, 300).critical_points[1].re == "-4.07186589509001E-7");
  CHECK(row(1, 6).beta == "0.788188270312241");
  CHECK(*row(7, 401).derived_constant == "0.24483");
}

TEST_CASE("dataset round-trips to the same strings") {
  const json original = json::parse(embedded_dataset_text());
  CHECK(dataset_to_json(embedded_dataset()) == original);
  const auto again = parse_dataset(dataset_to_json(embedded_dataset()).dump());
  CHECK(dataset_to_json(again).dump() == original.dump());
}

TEST_CASE("scientific notation parses in either case") {
  CHECK(DoubleDouble::parse("-4.07186589509001e-7") == DoubleDouble::parse("-4.07186589509001E-7"));
  CHECK(to_double(parse_constant("1/3")) == doctest::Approx(1.0 / 3).epsilon(1e-16));
  CHECK(to_double(parse_constant("4/15")) == doctest::Approx(4.0 / 15).epsilon(1e-16));
  CHECK(to_double(parse_constant("0.233")) == 0.233);
}

TEST_CASE("malformed datasets") {
  CHECK_THROWS_AS(parse_dataset("{"), DatasetError);
  CHECK_THROWS_AS(parse_dataset(R"({"format": 2, "tables": []})"), DatasetError);
  json doc = json::parse(embedded_dataset_text());
  json bad_sum = doc;
  bad_sum["tables"][0]["rows"][0]["critical_points"][1]["m"] = 4;
  CHECK_THROWS_AS(parse_dataset(bad_sum.dump()), DatasetError);
  json bad_number = doc;
  bad_number["tables"][0]["rows"][0]["beta"] = "0.78x";
  CHECK_THROWS_AS(parse_dataset(bad_number.dump()), DatasetError);
  json bad_beta = doc;
  bad_beta["tables"][0]["rows"][0]["beta"] = "1.5";
  CHECK_THROWS_AS(parse_dataset(bad_beta.dump()), DatasetError);
  json missing = doc;
  missing["tables"][1]["rows"][0].erase("expected_derived");
  CHECK_THROWS_AS(parse_dataset(missing.dump()), DatasetError);
}

TEST_CASE("every row reproduces its printed r, c and derived value") {
  const VerificationReport rep = verify_tables(embedded_dataset(), values_only());
  CHECK(rep.records.size() == 18);
  CHECK(rep.membership_skipped == 18);
  for (const RecordCheck& c : rep.records) {
    INFO("table " << c.table_id << " n=" << c.n);
    CHECK(c.r_match);
    CHECK(c.c_match);
    CHECK(c.derived_match);
  }
  CHECK(rep.ok());
}

TEST_CASE("verification examples") {
  const VerificationReport rep = verify_tables(embedded_dataset(), values_only());
  auto find = [&](int t, int n) -> const RecordCheck& {
    for (const RecordCheck& c : rep.records) {
      if (c.table_id == t && c.n == n) return c;
    }
    throw std::runtime_error("missing");
  };
  CHECK(find(3, 300).c == doctest::Approx(0.334058904562927).epsilon(1e-6));
  CHECK(std::fabs(*find(3, 2400).derived - 0.221645) <= 1e-4);
  CHECK(std::fabs(*find(7, 401).derived - 1.118207) <= 1e-4);
  CHECK(std::fabs(find(1, 7).d - 0.932803780327529) <= 1e-12);
}

TEST_CASE("max_n and membership cap") {
  VerifyOptions o;
  o.max_n = 7;
  const VerificationReport rep = verify_tables(embedded_dataset(), o);
  REQUIRE(rep.records.size() == 2);
  CHECK(rep.membership_checked == 2);
  for (const RecordCheck& c : rep.records) {
    REQUIRE(c.membership);
    CHECK(c.membership->is_member);
    CHECK(c.membership->disk_count == c.n);
  }
  CHECK(rep.ok());
}

TEST_CASE("mismatches fail, except in the caveat table") {
  std::vector<ExtremalRecord> records{row(1, 6), row(9, 50)};
  records[0].expected_r = "0.93904385";
  records[1].expected_c = "0.2659";
  const VerificationReport rep = verify_tables(records, values_only());
  CHECK_FALSE(rep.records[0].r_match);
  CHECK(rep.records[0].c_match);
  CHECK_FALSE(rep.records[1].c_match);
  CHECK(rep.records[1].warn_only);
  CHECK(rep.failed == 1);
  CHECK(rep.warnings == 1);
  CHECK_FALSE(rep.ok());
}
