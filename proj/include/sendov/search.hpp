#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sendov/polyform.hpp"
#include "sendov/roots.hpp"

namespace sendov {

struct PatternPart {
  int multiplicity = 1;
  bool paired = false;  // a conjugate pair, each point with this multiplicity

  friend bool operator==(const PatternPart&, const PatternPart&) = default;
};

struct MultiplicityPattern {
  std::vector<PatternPart> parts;

  int degree() const;             // 1 + sum m (2m for pairs)
  int distinct_points() const;    // pairs count twice
  std::string to_string() const;  // "[(1,paired),(3,unpaired)]"

  friend bool operator==(const MultiplicityPattern&, const MultiplicityPattern&) = default;
};

enum class BetaMode { free, fixed };
enum class Normalization { rescale_to_unit, penalty_only };

struct SearchProblem {
  int n = 2;
  MultiplicityPattern pattern;
  BetaMode beta_mode = BetaMode::free;
  double beta_lo = 0.01;
  double beta_hi = 0.999;
  double beta_fixed = 0.5;
  // With a fixed beta the configuration is never rescaled (rescaling would
  // move beta), so fixed mode always behaves as penalty_only.
  Normalization normalization = Normalization::rescale_to_unit;
  double penalty_weight = 1e3;

  void validate() const;  // throws InvalidSpec
};

struct SearchOptions {
  int budget = 4000;  // objective evaluations per local search
  double initial_step = 0.05;
  double simplex_tol = 1e-12;
  double spread_tol = 1e-13;
  double membership_tol = kDefaultMembershipTol;
  int threads = 0;  // 0: hardware concurrency
};

struct SearchResult {
  PolySpec spec{DoubleDouble(0.5), {CriticalPoint(std::complex<double>(0.0, 0.0), 1)}};
  double d = 0.0;
  double c = 0.0;
  double objective = 0.0;
  MembershipReport membership;
  bool converged = false;
  int evaluations = 0;
  std::uint64_t seed = 0;
  int start_index = 0;
  std::string pattern;
};

// c + w max(0, max|root| - 1). Throws EndpointUndefined outside 0 < beta < 1.
double objective(const PolySpec& spec, double penalty_weight);

// beta and every critical point divided by the largest root modulus.
PolySpec normalize(const PolySpec& spec);

// Real parameter vector <-> spec for a problem: beta if free, then (re, im)
// per paired part and re per unpaired part.
std::vector<double> encode(const SearchProblem& problem, const PolySpec& spec);
PolySpec decode(const SearchProblem& problem, const std::vector<double>& x);

// Nelder-Mead (1, 2, 0.5, 0.5) from start, re-expanded at the incumbent
// while that still improves. Deterministic.
SearchResult local_search(const SearchProblem& problem, const PolySpec& start,
                          const SearchOptions& options = {});

// Random start i is drawn from a generator seeded with (seed, i). Throws
// NoFeasibleResult when no start ends in a member.
SearchResult multistart(const SearchProblem& problem, int k, std::uint64_t seed,
                        const SearchOptions& options = {});

// Every pattern of n - 1 with at most max_distinct points, each searched with
// a seed derived from (seed, pattern), so that a pattern gets the same result
// whatever max_distinct is. Sorted by c.
std::vector<MultiplicityPattern> enumerate_patterns(int n, int max_distinct);
std::vector<SearchResult> pattern_scan(int n, int max_distinct, int k, std::uint64_t seed,
                                       const SearchOptions& options = {},
                                       const SearchProblem& base = {});

}  // namespace sendov
