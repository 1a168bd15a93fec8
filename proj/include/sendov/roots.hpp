#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "sendov/polyform.hpp"

namespace sendov {

struct RootSet {
  // roots[0] is beta; the remaining degree-1 roots come from the iteration.
  std::vector<std::complex<double>> roots;
  // |P(root)| re-evaluated after convergence.
  std::vector<double> residuals;
  double max_modulus = 0.0;
  Precision precision = Precision::binary64;
  int sweeps = 0;
};

enum class MembershipMethod { direct_roots, argument_principle, both };

struct MembershipReport {
  bool is_member = false;
  double max_modulus = 0.0;
  double margin = 0.0;  // 1 + tol - max_modulus
  MembershipMethod method = MembershipMethod::direct_roots;
  std::optional<int> disk_count;
  double tol = 0.0;
  int degree = 0;
  Precision precision = Precision::binary64;
};

struct RootOptions {
  Precision precision = Precision::automatic;
  int max_sweeps = 500;
  // Retry a failed binary64 run in double-double before giving up.
  bool escalate = true;
};

inline constexpr double kDefaultMembershipTol = 1e-9;
inline constexpr int kWindingDegreeCap = 1000;

// All roots of P by Aberth-Ehrlich iteration with beta pinned as a known root.
// Degree <= 64 evaluates through dense coefficients, above that through
// quadrature. Throws NoConvergence after max_sweeps.
RootSet find_roots(const PolySpec& spec, const RootOptions& options = {});

// Number of roots with |z| < radius from the winding number of P along the
// circle. Throws OnCircleAmbiguity when a root sits on the circle (refinement
// below 1e-13 rad).
int count_roots_in_disk(const PolySpec& spec, double radius,
                        Precision precision = Precision::automatic);

// Throws MethodDisagreement when the direct roots and the winding count
// disagree about membership.
MembershipReport check_membership(const PolySpec& spec, double tol = kDefaultMembershipTol,
                                  const RootOptions& options = {});

double max_root_modulus(const PolySpec& spec, const RootOptions& options = {});

// Eigenvalues of the companion matrix; an independent dense-degree route.
std::vector<std::complex<double>> companion_roots(const CoefficientPoly& poly);

const char* to_string(MembershipMethod method);
const char* to_string(Precision precision);

}  // namespace sendov
