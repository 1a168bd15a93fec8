#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "sendov/dataset.hpp"
#include "sendov/errors.hpp"
#include "sendov/families.hpp"
#include "sendov/io.hpp"
#include "sendov/metrics.hpp"
#include "sendov/search.hpp"

using namespace sendov;

namespace {

SearchProblem problem(int n, MultiplicityPattern pattern, double hi = 0.999) {
  SearchProblem p;
  p.n = n;
  p.pattern = std::move(pattern);
  p.beta_hi = hi;
  return p;
}

PolySpec table1(int n) {
  for (const ExtremalRecord& r : embedded_dataset()) {
    if (r.table_id == 1 && r.n == n) return r.spec();
  }
  throw std::runtime_error("missing row");
}

void check_reported(const SearchResult& r) {
  CHECK(r.membership.is_member);
  CHECK(check_membership(r.spec, 1e-9).is_member);
  const DoubleDouble beta = r.spec.beta();
  const DoubleDouble c = (DoubleDouble(1.0) - dist_to_nearest_critical_dd(r.spec)) / (beta * (DoubleDouble(1.0) - beta));
  CHECK(r.c == doctest::Approx(to_double(c)).epsilon(1e-12));
  CHECK(r.d == doctest::Approx(dist_to_nearest_critical(r.spec)).epsilon(1e-15));
}

}  // namespace

TEST_CASE("multiplicity patterns") {
  const MultiplicityPattern p{{{1, true}, {3, false}}};
  CHECK(p.degree() == 6);
  CHECK(p.distinct_points() == 3);
  CHECK(p.to_string() == "[(1,paired),(3,unpaired)]");

  const auto one = enumerate_patterns(4, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == MultiplicityPattern{{{3, false}}});

  for (int n = 2; n <= 12; ++n) {
    for (int k = 1; k <= 4; ++k) {
      std::set<std::string> seen;
      for (const MultiplicityPattern& q : enumerate_patterns(n, k)) {
        CHECK(q.degree() == n);
        CHECK(q.distinct_points() <= k);
        CHECK(seen.insert(q.to_string()).second);
      }
    }
  }
  const auto six = enumerate_patterns(6, 3);
  CHECK(std::find(six.begin(), six.end(), p) != six.end());
  CHECK(enumerate_patterns(3, 2).size() == 3);  // [(2)], [(1),(1)], [(1,paired)]
  CHECK_THROWS_AS(enumerate_patterns(6, 7), InvalidSpec);
}

TEST_CASE("problem validation") {
  CHECK_NOTHROW(problem(6, {{{1, true}, {3, false}}}).validate());
  CHECK_THROWS_AS(problem(7, {{{1, true}, {3, false}}}).validate(), InvalidSpec);
  SearchProblem p = problem(2, {{{1, false}}});
  p.beta_lo = 0.5;
  p.beta_hi = 0.4;
  CHECK_THROWS_AS(p.validate(), InvalidSpec);
  p.beta_hi = 1.0;
  CHECK_THROWS_AS(p.validate(), InvalidSpec);
}

TEST_CASE("encode and decode") {
  const SearchProblem p = problem(6, {{{1, true}, {3, false}}});
  const PolySpec spec = table1(6);
  const std::vector<double> x = encode(p, spec);
  REQUIRE(x.size() == 4);
  CHECK(x[0] == doctest::Approx(0.788188270312241).epsilon(1e-15));
  CHECK(x[3] == doctest::Approx(-0.150855581784183).epsilon(1e-15));
  const PolySpec back = decode(p, x);
  CHECK(back.degree() == 6);
  CHECK(std::abs(back.critical_points()[1].value() - std::conj(back.critical_points()[0].value())) == 0.0);
  CHECK_THROWS_AS(encode(problem(6, {{{5, false}}}), spec), InvalidSpec);
}

TEST_CASE("objective") {
  const PolySpec spec = table1(6);
  CHECK(objective(spec, 1e3) == doctest::Approx(0.365121611819106).epsilon(1e-9));
  const PolySpec pushed = spec.divided_by(DoubleDouble(1.0) / DoubleDouble(1.01));
  const double excess = objective(pushed, 1e3) - c_value(pushed).c;
  CHECK(excess == doctest::Approx(0.01 * 1e3).epsilon(1e-6));
  CHECK_THROWS_AS(objective(phelps_rodriguez(4), 1e3), EndpointUndefined);
}

TEST_CASE("normalize") {
  const PolySpec spec = table1(6);
  const PolySpec same = normalize(spec);
  CHECK(std::fabs(same.beta_value() - spec.beta_value()) <= 1e-9);

  // Roots of (z^3 - 1) / 3 scaled into the disk of radius 1/2.
  const PolySpec half(DoubleDouble(0.5), {CriticalPoint(std::complex<double>(0, 0), 2)});
  const PolySpec doubled = normalize(half);
  CHECK(doubled.beta_value() == doctest::Approx(1.0).epsilon(1e-14));

  const PolySpec twice = normalize(normalize(table1(7)));
  CHECK(std::fabs(twice.beta_value() - normalize(table1(7)).beta_value()) <= 1e-12);

  const MultiplicityPattern pat{{{1, true}, {2, false}}};
  const SearchProblem p = problem(5, pat);
  for (const std::vector<double>& x : {std::vector<double>{0.3, 0.2, 0.9, -0.4}, std::vector<double>{0.6, -0.5, 0.1, 0.3}}) {
    const PolySpec n = normalize(decode(p, x));
    CHECK(max_root_modulus(n) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check_membership(n).is_member);
    CHECK(std::fabs(n.critical_points()[0].value().imag() + n.critical_points()[1].value().imag()) <= 1e-15);
  }
}

TEST_CASE("local search: degree 2") {
  const SearchProblem p = problem(2, {{{1, false}}}, 0.999999);
  const SearchResult r = local_search(p, PolySpec(DoubleDouble(0.4), {CriticalPoint(std::complex<double>(-0.1, 0), 1)}));
  CHECK(r.c == doctest::Approx(0.5).epsilon(1e-6));
  check_reported(r);
}

TEST_CASE("local search: degree 6 from the table configuration") {
  const SearchProblem p = problem(6, {{{1, true}, {3, false}}});
  std::vector<double> x = encode(p, table1(6));
  for (double& v : x) v += 0.01;
  const SearchResult r = local_search(p, decode(p, x));
  CHECK(r.c == doctest::Approx(0.365121611819106).epsilon(1e-6));
  CHECK(std::fabs(r.spec.beta_value() - 0.788188270312241) <= 1e-6);
  CHECK(r.converged);
  check_reported(r);
}

TEST_CASE("local search: degree 3 stays above one third") {
  const SearchProblem p = problem(3, {{{1, false}, {1, false}}});
  const SearchResult r = local_search(p, decode(p, {0.5, 0.1, -0.4}));
  CHECK(r.c >= 1.0 / 3 - 1e-4);
  check_reported(r);
}

TEST_CASE("multistart recovers the small-degree values") {
  struct Case {
    int n;
    MultiplicityPattern pattern;
    double target;
    double tol;
  };
  const std::vector<Case> cases{
      {2, {{{1, false}}}, 0.5, 1e-3},
      {3, {{{1, true}}}, 1.0 / 3, 1e-3},
      {4, {{{1, true}, {1, false}}}, 1.0 / 3, 1e-3},
      {5, {{{2, true}}}, 0.3, 1e-3},
      {6, {{{1, true}, {3, false}}}, 0.365121611819106, 1e-6},
      {7, {{{1, true}, {4, false}}}, 0.335088765359222, 1e-4},
  };
  for (const Case& c : cases) {
    INFO("n=" << c.n);
    const SearchResult r = multistart(problem(c.n, c.pattern), 20, 1);
    CHECK(r.c >= c.target - 1e-9);
    CHECK(r.c <= c.target + c.tol);
    check_reported(r);
  }
}

TEST_CASE("multistart is deterministic across thread counts") {
  const SearchProblem p = problem(5, {{{1, true}, {2, false}}});
  SearchOptions one;
  one.threads = 1;
  SearchOptions four;
  four.threads = 4;
  const std::string a = result_to_json(multistart(p, 6, 42, one)).dump();
  const std::string b = result_to_json(multistart(p, 6, 42, four)).dump();
  const std::string c = result_to_json(multistart(p, 6, 42, one)).dump();
  CHECK(a == b);
  CHECK(a == c);
  CHECK(result_to_json(multistart(p, 6, 43, one)).dump() != a);
}

TEST_CASE("pattern scan") {
  SearchOptions o;
  o.budget = 2000;
  const auto six = pattern_scan(6, 3, 6, 7, o);
  REQUIRE_FALSE(six.empty());
  CHECK(six.front().pattern == "[(1,paired),(3,unpaired)]");
  CHECK(six.front().c == doctest::Approx(0.365121611819106).epsilon(1e-6));
  for (std::size_t i = 1; i < six.size(); ++i) CHECK(six[i - 1].c <= six[i].c);

  const auto four = pattern_scan(4, 1, 4, 7, o);
  REQUIRE(four.size() == 1);
  CHECK(four[0].c >= 1.0 / 3 - 1e-9);

  double previous = 1e300;
  for (int k = 1; k <= 3; ++k) {
    const auto scan = pattern_scan(5, k, 4, 7, o);
    REQUIRE_FALSE(scan.empty());
    CHECK(scan.front().c <= previous + 1e-9);
    previous = scan.front().c;
    for (const SearchResult& r : scan) check_reported(r);
  }
}

TEST_CASE("fixed beta uses the penalty") {
  SearchProblem p = problem(4, {{{1, true}, {1, false}}});
  p.beta_mode = BetaMode::fixed;
  p.beta_fixed = 0.5;
  const SearchResult r = multistart(p, 4, 3);
  CHECK(r.spec.beta_value() == 0.5);
  CHECK(std::isfinite(r.c));
  CHECK(r.c >= 1.0 / 3);
  check_reported(r);
}

TEST_CASE("table shapes are among the enumerated patterns") {
  for (const ExtremalRecord& r : embedded_dataset()) {
    if (r.n > 400) continue;
    MultiplicityPattern shape;
    for (const RecordPoint& p : r.critical_points) shape.parts.push_back({p.multiplicity, p.conjugate_pair});
    std::sort(shape.parts.begin(), shape.parts.end(), [](const PatternPart& a, const PatternPart& b) {
      if (a.paired != b.paired) return a.paired;
      return a.multiplicity < b.multiplicity;
    });
    INFO("table " << r.table_id << " n=" << r.n);
    CHECK(shape.degree() == r.n);
    if (shape.distinct_points() > 4) continue;
    const auto patterns = enumerate_patterns(r.n, shape.distinct_points());
    CHECK(std::find(patterns.begin(), patterns.end(), shape) != patterns.end());
  }
}
