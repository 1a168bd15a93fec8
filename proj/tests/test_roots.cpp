#include <algorithm>
#include <random>

#include "doctest.h"
#include "sendov/errors.hpp"
#include "sendov/roots.hpp"

using namespace sendov;
using cd = std::complex<double>;

namespace {

PolySpec cube_roots() { return PolySpec(1.0, {CriticalPoint(cd(0, 0), 1), CriticalPoint(cd(0, 0), 1)}); }

PolySpec z5_minus_z() {
  std::vector<CriticalPoint> crits;
  const double r = std::pow(0.2, 0.25);
  for (int k = 0; k < 4; ++k) crits.emplace_back(std::polar(r, k * M_PI / 2), 1);
  return PolySpec(0.0, std::move(crits));
}

PolySpec counterexample() {
  return PolySpec(DoubleDouble::parse("0.674"),
                  {CriticalPoint(cd(-0.24, 0.38), 1), CriticalPoint(cd(-0.13, -0.25), 2)});
}

PolySpec table1_n6() {
  const ComplexDD a{DoubleDouble::parse("0.0469833741737209"), DoubleDouble::parse("0.576557593047195")};
  return PolySpec(DoubleDouble::parse("0.788188270312241"),
                  {CriticalPoint(a, 1), CriticalPoint(conj(a), 1),
                   CriticalPoint(ComplexDD{DoubleDouble::parse("-0.150855581784183")}, 3)});
}

// Roots drawn in the unit disk; the spec is recovered from the companion roots
// of the derivative so that the polynomial is a member by construction.
PolySpec member_from_roots(const std::vector<cd>& roots) {
  std::vector<cd> c{1.0};
  for (const cd& r : roots) {
    std::vector<cd> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  std::vector<CriticalPoint> crits;
  for (const cd& z : companion_roots(CoefficientPoly{c}.derivative())) crits.emplace_back(z, 1);
  return PolySpec(std::abs(roots[0]), std::move(crits));
}

std::vector<cd> sorted(std::vector<cd> v) {
  std::sort(v.begin(), v.end(), [](cd a, cd b) {
    return std::arg(a) != std::arg(b) ? std::arg(a) < std::arg(b) : std::abs(a) < std::abs(b);
  });
  return v;
}

double nearest(const std::vector<cd>& set, cd z) {
  double best = 1e300;
  for (const cd& s : set) best = std::min(best, std::abs(s - z));
  return best;
}

}  // namespace

TEST_CASE("cube roots of unity") {
  const RootSet r = find_roots(cube_roots());
  REQUIRE(r.roots.size() == 3);
  CHECK(r.roots[0] == cd(1, 0));
  for (int k = 0; k < 3; ++k) CHECK(nearest(r.roots, std::polar(1.0, 2 * M_PI * k / 3)) < 1e-13);
  CHECK(r.max_modulus == doctest::Approx(1.0).epsilon(1e-14));
  for (double res : r.residuals) CHECK(res < 1e-14);
}

TEST_CASE("z^5 - z has roots 0 and the fourth roots of unity") {
  const RootSet r = find_roots(z5_minus_z());
  REQUIRE(r.roots.size() == 5);
  for (cd expected : {cd(0, 0), cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)}) {
    CHECK(nearest(r.roots, expected) < 1e-12);
  }
}

TEST_CASE("counterexample quartic has every root inside the disk") {
  const RootSet r = find_roots(counterexample());
  REQUIRE(r.roots.size() == 4);
  for (const cd& z : r.roots) CHECK(std::abs(z) < 1.0);
  // Frozen from a 30-digit evaluation.
  CHECK(r.max_modulus == doctest::Approx(0.999583867557635).epsilon(1e-12));
}

TEST_CASE("disk counts") {
  CHECK(count_roots_in_disk(cube_roots(), 1.000001) == 3);
  CHECK(count_roots_in_disk(cube_roots(), 0.5) == 0);
  CHECK(count_roots_in_disk(table1_n6(), 1 + 1e-9) == 6);
  CHECK(count_roots_in_disk(z5_minus_z(), 0.5) == 1);
  CHECK(count_roots_in_disk(cube_roots(), 0.99, Precision::double_double) == 0);
  CHECK_THROWS_AS(count_roots_in_disk(cube_roots(), 0.0), InvalidSpec);
}

TEST_CASE("a root exactly on the contour is reported") {
  // P(1) = 0 by construction and the circle passes through it.
  CHECK_THROWS_AS(count_roots_in_disk(PolySpec(1.0, {CriticalPoint(cd(0.3, 0.1), 1)}), 1.0),
                  OnCircleAmbiguity);
}

TEST_CASE("membership") {
  std::vector<CriticalPoint> z7{CriticalPoint(cd(0, 0), 6)};
  const MembershipReport member = check_membership(PolySpec(1.0, z7));
  CHECK(member.is_member);
  CHECK(member.max_modulus == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(member.method == MembershipMethod::both);
  CHECK(member.disk_count == 7);
  CHECK(member.margin == doctest::Approx(1e-9 + 1.0 - member.max_modulus));

  const MembershipReport t1 = check_membership(table1_n6());
  CHECK(t1.is_member);
  CHECK(t1.disk_count == 6);

  // (z^2/2 - 1.2 z) - (1/2 - 1.2) has roots 1 and 1.4.
  const MembershipReport out = check_membership(PolySpec(1.0, {CriticalPoint(cd(1.2, 0), 1)}));
  CHECK_FALSE(out.is_member);
  CHECK(out.max_modulus == doctest::Approx(1.4).epsilon(1e-13));
  CHECK(out.disk_count == 1);
  CHECK(out.margin < 0);
}

TEST_CASE("precision selection") {
  RootOptions dd;
  dd.precision = Precision::double_double;
  const RootSet r = find_roots(table1_n6(), dd);
  CHECK(r.precision == Precision::double_double);
  const RootSet d = find_roots(table1_n6());
  CHECK(d.precision == Precision::binary64);
  for (const cd& z : d.roots) CHECK(nearest(r.roots, z) < 1e-10);
  CHECK(std::string(to_string(Precision::double_double)) == "dd");
  CHECK(std::string(to_string(MembershipMethod::argument_principle)) == "argument_principle");
}

TEST_CASE("quadrature route agrees with the dense route") {
  // Degree 80: above the dense cap.
  std::vector<CriticalPoint> crits{CriticalPoint(cd(0.1, 0.5), 20), CriticalPoint(cd(0.1, -0.5), 20),
                                   CriticalPoint(cd(-0.3, 0), 39)};
  const PolySpec s(0.7, crits);
  REQUIRE(s.degree() == 80);
  const RootSet r = find_roots(s);
  REQUIRE(r.roots.size() == 80);
  // A winding count between two sorted moduli must split the roots there.
  std::vector<double> mods;
  for (const cd& z : r.roots) mods.push_back(std::abs(z));
  std::sort(mods.begin(), mods.end());
  int checked = 0;
  for (std::size_t k = 5; k + 1 < mods.size(); k += 7) {
    if (mods[k + 1] - mods[k] < 1e-6) continue;
    CHECK(count_roots_in_disk(s, 0.5 * (mods[k] + mods[k + 1])) == static_cast<int>(k + 1));
    ++checked;
  }
  CHECK(checked >= 3);
  CHECK(count_roots_in_disk(s, mods.back() * 1.01) == 80);
}

TEST_CASE("property: Vieta, residuals, Gauss-Lucas, radius-2 count") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(u(rng) * 24);
    std::vector<cd> roots;
    roots.emplace_back(0.05 + 0.95 * u(rng), 0.0);
    for (int k = 1; k < n; ++k) roots.push_back(std::polar(std::sqrt(u(rng)), 2 * M_PI * u(rng)));
    const PolySpec s = member_from_roots(roots);
    const RootSet r = find_roots(s);
    REQUIRE(static_cast<int>(r.roots.size()) == n);

    // Vieta: sum of roots against the subleading coefficient.
    const CoefficientPoly c = expand_coefficients(s);
    cd sum{};
    for (const cd& z : r.roots) sum += z;
    const cd vieta = -c.coeffs[static_cast<std::size_t>(n - 1)] / c.coeffs[static_cast<std::size_t>(n)];
    CHECK(std::abs(sum - vieta) <= 1e-8 * std::max(1.0, std::abs(vieta)));

    // Backward-error residual against local conditioning.
    double scale = 0;
    const CoefficientPoly dc = c.derivative();
    for (std::size_t i = 0; i < r.roots.size(); ++i) {
      double spacing = 1e300;
      for (std::size_t j = 0; j < r.roots.size(); ++j) {
        if (i != j) spacing = std::min(spacing, std::abs(r.roots[i] - r.roots[j]));
      }
      scale = std::max(scale, std::abs(dc(r.roots[i])) * spacing);
    }
    for (double res : r.residuals) CHECK(res <= 1e-8 * scale);

    // Same multiset as the generating roots.
    for (const cd& z : roots) CHECK(nearest(r.roots, z) < 1e-6);

    // Gauss-Lucas: every critical point in the (inflated) hull of the roots.
    // Checked through the half-plane test on each hull edge direction.
    for (const CriticalPoint& cp : s.critical_points()) {
      const cd z = cp.value();
      bool inside = true;
      for (int k = 0; k < 360 && inside; ++k) {
        const cd dir = std::polar(1.0, 2 * M_PI * k / 360);
        double support = -1e300;
        for (const cd& w : r.roots) support = std::max(support, (w * std::conj(dir)).real());
        if ((z * std::conj(dir)).real() > support + 1e-8) inside = false;
      }
      CHECK(inside);
    }

    if (trial % 6 == 0) CHECK(count_roots_in_disk(s, 2.0) == n);
  }
}

TEST_CASE("companion roots cross-check") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CriticalPoint> crits;
    for (int k = 0; k < 10; ++k) crits.emplace_back(cd(u(rng), u(rng)) * 0.7, 1 + (k % 2));
    const PolySpec s(0.5 * (u(rng) + 1), crits);
    const std::vector<cd> dense = companion_roots(expand_coefficients(s));
    const RootSet r = find_roots(s);
    REQUIRE(dense.size() == r.roots.size());
    const auto a = sorted(dense);
    for (const cd& z : r.roots) CHECK(nearest(a, z) < 1e-7);
  }
}

TEST_CASE("table configuration above the dense cap") {
  // A degree-50 extremal row with a multiplicity-37 point, through quadrature.
  std::vector<CriticalPoint> crits;
  auto pair = [&](const char* re, const char* im, int m) {
    const ComplexDD z{DoubleDouble::parse(re), DoubleDouble::parse(im)};
    crits.emplace_back(z, m);
    crits.emplace_back(conj(z), m);
  };
  pair("0.288272070152277", "0.742813688052441", 1);
  pair("-0.00780080468460338", "0.287472554138991", 5);
  crits.emplace_back(ComplexDD{DoubleDouble::parse("-0.0507632875087811")}, 37);
  const PolySpec s(DoubleDouble::parse("0.932492785695482"), crits);
  REQUIRE(s.degree() == 50);
  const MembershipReport m = check_membership(s);
  CHECK(m.is_member);
  CHECK(m.disk_count == 50);
  CHECK(std::fabs(m.max_modulus - 1.0) < 1e-8);
}
