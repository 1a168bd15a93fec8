#include "sendov/verify.hpp"

#include <cmath>

#include "sendov/errors.hpp"
#include "sendov/metrics.hpp"

namespace sendov {

namespace {

bool close_relative(double got, const DoubleDouble& expected, double tol) {
  const double e = to_double(expected);
  return std::fabs(got - e) <= tol * std::fabs(e);
}

}  // namespace

VerificationReport verify_tables(const std::vector<ExtremalRecord>& records, const VerifyOptions& options,
                                 const std::function<void(const RecordCheck&)>& on_record) {
  VerificationReport report;
  for (const ExtremalRecord& r : records) {
    if (options.max_n > 0 && r.n > options.max_n) continue;
    RecordCheck check;
    check.table_id = r.table_id;
    check.n = r.n;
    check.warn_only = r.table_id == kCaveatTable;

    const PolySpec spec = r.spec();
    const CValue cv = c_value(spec);
    check.d = cv.d;
    check.c = cv.c;
    check.r_match = close_relative(cv.d, DoubleDouble::parse(r.expected_r), options.tol_r);
    check.c_match = close_relative(cv.c, DoubleDouble::parse(r.expected_c), options.tol_c);
    if (r.derived_constant && r.expected_derived) {
      const double k = to_double(parse_constant(*r.derived_constant));
      check.derived = r.n * (cv.c - k);
      check.derived_match =
          std::fabs(*check.derived - to_double(DoubleDouble::parse(*r.expected_derived))) <= options.tol_derived;
    }

    if (options.membership_cap > 0 && r.n > options.membership_cap) {
      check.skipped = "n above the membership cap of " + std::to_string(options.membership_cap);
      ++report.membership_skipped;
    } else {
      RootOptions ro;
      ro.precision = options.precision;
      try {
        check.membership = check_membership(spec, options.membership_tol, ro);
      } catch (const Error& e) {
        check.error = e.what();
      }
      ++report.membership_checked;
    }

    if (check.passed()) {
      ++report.passed;
    } else if (check.warn_only) {
      ++report.warnings;
    } else {
      ++report.failed;
    }
    if (on_record) on_record(check);
    report.records.push_back(std::move(check));
  }
  return report;
}

}  // namespace sendov
