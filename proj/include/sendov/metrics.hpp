#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sendov/polyform.hpp"

namespace sendov {

// c = (1 - d) / (beta (1 - beta)).
struct CValue {
  double beta = 0.0;
  double d = 0.0;
  double c = 0.0;
};

// min_i |zeta_i - beta|, independent of multiplicities.
double dist_to_nearest_critical(const PolySpec& spec);
DoubleDouble dist_to_nearest_critical_dd(const PolySpec& spec);

// Throws EndpointUndefined unless 0 < beta < 1.
CValue c_value(double beta, double d);
// Extended-precision variant: pass beta straight from its decimal string so
// that 1 - beta keeps its digits when beta is within 1e-8 of 1.
CValue c_value(const DoubleDouble& beta, const DoubleDouble& d);
// d and c straight from a spec, in double-double.
CValue c_value(const PolySpec& spec);

double schmeisser_bound(int n, double beta);
double lemma2_bound(int n, double beta);
double r2_exact(double beta);
double r3_exact(double beta);
double rn_at_zero(int n);
// Expansion near beta = 1 without the cubic remainder.
double r5_asymptotic(double beta);

// Smallest c_n for n in [2, 8]; nullopt elsewhere.
std::optional<double> conjectured_cn(int n);

// Absolute slack on d <= 1 - c beta (1 - beta). Table values are printed to
// 15 digits, so an extremal row tested against its own c sits on the boundary.
inline constexpr double kRefinedBoundSlack = 1e-12;

bool check_refined_bound(const PolySpec& spec, double c, double slack = kRefinedBoundSlack);

enum class BoundKind { exact, upper_bound, conjectured, asymptotic };

struct BoundEntry {
  std::string name;
  BoundKind kind = BoundKind::exact;
  std::string applicability;
  std::function<bool(int n, double beta)> applies;
  std::function<double(int n, double beta)> value_at;
};

const std::vector<BoundEntry>& bound_catalog();
const BoundEntry* find_bound(const std::string& name);
const char* to_string(BoundKind kind);

}  // namespace sendov
