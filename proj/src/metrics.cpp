#include "sendov/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sendov/errors.hpp"

namespace sendov {

double dist_to_nearest_critical(const PolySpec& spec) {
  double best = std::numeric_limits<double>::infinity();
  const std::complex<double> beta(spec.beta_value(), 0.0);
  for (const CriticalPoint& c : spec.critical_points()) best = std::min(best, std::abs(c.value() - beta));
  return best;
}

DoubleDouble dist_to_nearest_critical_dd(const PolySpec& spec) {
  const ComplexDD beta(spec.beta());
  DoubleDouble best = std::numeric_limits<double>::infinity();
  for (const CriticalPoint& c : spec.critical_points()) {
    // norm() rather than the scaled abs(): the coordinates are O(1) and the
    // plain sum of squares keeps the full double-double precision.
    const DoubleDouble dist = sqrt(norm(c.zeta - beta));
    if (dist < best) best = dist;
  }
  return best;
}

CValue c_value(double beta, double d) { return c_value(DoubleDouble(beta), DoubleDouble(d)); }

CValue c_value(const DoubleDouble& beta, const DoubleDouble& d) {
  if (!(beta > DoubleDouble(0.0)) || !(beta < DoubleDouble(1.0))) {
    throw EndpointUndefined("c is undefined unless 0 < beta < 1 (beta = " + to_string(beta, 17) + ")");
  }
  const DoubleDouble one(1.0);
  const DoubleDouble c = (one - d) / (beta * (one - beta));
  return {to_double(beta), to_double(d), to_double(c)};
}

CValue c_value(const PolySpec& spec) {
  return c_value(spec.beta(), dist_to_nearest_critical_dd(spec));
}

double schmeisser_bound(int n, double beta) {
  return (n + 2 * beta - beta * beta * (n - 2)) / (n + 2 - beta * (n - 2));
}

double lemma2_bound(int n, double beta) { return 1.0 - (4.0 - n) / 4.0 * beta * (1.0 - beta); }

double r2_exact(double beta) { return (1.0 + beta) / 2.0; }

double r3_exact(double beta) { return (3.0 * beta + std::sqrt(12.0 - 3.0 * beta * beta)) / 6.0; }

double rn_at_zero(int n) { return std::pow(1.0 / n, 1.0 / (n - 1)); }

double r5_asymptotic(double beta) {
  const double t = 1.0 - beta;
  return 1.0 - 0.3 * t + t * t / 200.0;
}

std::optional<double> conjectured_cn(int n) {
  const DoubleDouble one(1.0);
  switch (n) {
    case 2: return 0.5;
    case 3:
    case 4: return to_double(one / DoubleDouble(3.0));
    case 5: return to_double(DoubleDouble(3.0) / DoubleDouble(10.0));
    case 6: return to_double(DoubleDouble::parse("0.365121611819106"));
    case 7: return to_double(DoubleDouble::parse("0.335088765359222"));
    case 8: return to_double((DoubleDouble(8.0) - DoubleDouble(4.0) * sqrt(DoubleDouble(2.0))) / 7.0);
    default: return std::nullopt;
  }
}

bool check_refined_bound(const PolySpec& spec, double c, double slack) {
  const DoubleDouble beta = spec.beta();
  const DoubleDouble bound = DoubleDouble(1.0) - DoubleDouble(c) * beta * (DoubleDouble(1.0) - beta);
  return dist_to_nearest_critical_dd(spec) <= bound + DoubleDouble(slack);
}

namespace {

std::function<double(int, double)> quadratic(double c) {
  return [c](int, double beta) { return 1.0 - c * beta * (1.0 - beta); };
}

bool always(int, double) { return true; }

std::vector<BoundEntry> make_catalog() {
  std::vector<BoundEntry> v;
  v.push_back({"sendov", BoundKind::conjectured, "all n, beta in [0,1]", always,
               [](int, double) { return 1.0; }});
  v.push_back({"best_known", BoundKind::upper_bound, "all n, beta in [0,1]", always,
               [](int, double) { return 1.0753829; }});
  v.push_back({"schmeisser_bound", BoundKind::upper_bound, "n >= 2, beta in [0,1]", always,
               schmeisser_bound});
  v.push_back({"lemma2_bound", BoundKind::upper_bound, "n >= 2, beta in [0,1]", always, lemma2_bound});
  v.push_back({"r2_exact", BoundKind::exact, "n = 2", [](int n, double) { return n == 2; },
               [](int, double b) { return r2_exact(b); }});
  v.push_back({"r3_exact", BoundKind::exact, "n = 3", [](int n, double) { return n == 3; },
               [](int, double b) { return r3_exact(b); }});
  v.push_back({"rn_at_zero", BoundKind::exact, "n >= 2, beta = 0",
               [](int, double b) { return b == 0.0; }, [](int n, double) { return rn_at_zero(n); }});
  v.push_back({"rn_at_one", BoundKind::exact, "n >= 2, beta = 1",
               [](int, double b) { return b == 1.0; }, [](int, double) { return 1.0; }});
  v.push_back({"r5_asymptotic", BoundKind::asymptotic, "n = 5, beta near 1",
               [](int n, double) { return n == 5; }, [](int, double b) { return r5_asymptotic(b); }});
  v.push_back({"conjectured_cn", BoundKind::conjectured, "2 <= n <= 8",
               [](int n, double) { return conjectured_cn(n).has_value(); },
               [](int n, double b) { return 1.0 - *conjectured_cn(n) * b * (1.0 - b); }});
  v.push_back({"near_one", BoundKind::upper_bound, "n >= 2, beta sufficiently close to 1", always,
               quadratic(0.3)});
  v.push_back({"line_rooted", BoundKind::upper_bound, "all roots on a line", always, quadratic(0.5)});
  v.push_back({"one_critical_point", BoundKind::upper_bound, "one distinct critical point", always,
               quadratic(1.0 / 3.0)});
  v.push_back({"real_quartic", BoundKind::upper_bound, "n = 4, real coefficients",
               [](int n, double) { return n == 4; }, quadratic(1.0 / 3.0)});
  v.push_back({"two_critical_points", BoundKind::conjectured, "at most 2 distinct critical points",
               always, quadratic(0.3)});
  v.push_back({"three_critical_points", BoundKind::conjectured, "at most 3 distinct critical points",
               always, quadratic(4.0 / 15.0)});
  v.push_back({"four_critical_points", BoundKind::conjectured, "at most 4 distinct critical points",
               always, quadratic(0.24483)});
  v.push_back({"general", BoundKind::conjectured, "all polynomials", always, quadratic(0.233)});
  return v;
}

}  // namespace

const std::vector<BoundEntry>& bound_catalog() {
  static const std::vector<BoundEntry> catalog = make_catalog();
  return catalog;
}

const BoundEntry* find_bound(const std::string& name) {
  for (const BoundEntry& e : bound_catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::exact: return "exact";
    case BoundKind::upper_bound: return "upper_bound";
    case BoundKind::conjectured: return "conjectured";
    case BoundKind::asymptotic: return "asymptotic";
  }
  return "unknown";
}

}  // namespace sendov
