#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sendov/dataset.hpp"
#include "sendov/roots.hpp"

namespace sendov {

struct VerifyOptions {
  int max_n = 0;             // rows above are not checked; 0 checks every row
  int membership_cap = 401;  // membership runs for n <= cap; 0 for every row
  double tol_r = 1e-9;       // relative
  double tol_c = 1e-6;       // relative
  double tol_derived = 1e-4; // absolute, the derived columns print 6 decimals
  double membership_tol = kDefaultMembershipTol;
  Precision precision = Precision::automatic;
};

struct RecordCheck {
  int table_id = 0;
  int n = 0;
  double d = 0.0;
  double c = 0.0;
  std::optional<double> derived;
  bool r_match = false;
  bool c_match = false;
  bool derived_match = true;
  std::optional<MembershipReport> membership;
  std::string skipped;  // why membership did not run
  std::string error;    // what membership raised
  bool warn_only = false;  // failures are reported but do not fail the run

  bool membership_ok() const { return !membership || membership->is_member; }
  bool passed() const { return r_match && c_match && derived_match && membership_ok() && error.empty(); }
};

struct VerificationReport {
  std::vector<RecordCheck> records;
  int passed = 0;
  int failed = 0;
  int warnings = 0;
  int membership_checked = 0;
  int membership_skipped = 0;

  bool ok() const { return failed == 0; }
};

// The printed digits of this table are not guaranteed, so its mismatches are
// warnings.
inline constexpr int kCaveatTable = 9;

VerificationReport verify_tables(const std::vector<ExtremalRecord>& records, const VerifyOptions& options = {},
                                 const std::function<void(const RecordCheck&)>& on_record = {});

}  // namespace sendov
