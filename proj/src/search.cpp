#include "sendov/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <numbers>
#include <random>
#include <thread>

#include "sendov/errors.hpp"
#include "sendov/metrics.hpp"

namespace sendov {

namespace {

using cd = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRealSlack = 1e-12;
constexpr int kMaxRestarts = 50;

RootOptions dense_options() {
  RootOptions o;
  o.precision = Precision::binary64;
  return o;
}

bool rescales(const SearchProblem& p) {
  return p.beta_mode == BetaMode::free && p.normalization == Normalization::rescale_to_unit;
}

double beta_of(const SearchProblem& p, const std::vector<double>& x) {
  return p.beta_mode == BetaMode::free ? x[0] : p.beta_fixed;
}

// Objective of the configuration x as the search sees it, with the spec that
// is reported for it. Infeasible points (beta out of range, root finding
// failure) score +inf.
struct Evaluation {
  double f = kInf;
  std::optional<PolySpec> spec;
};

Evaluation evaluate(const SearchProblem& p, const std::vector<double>& x) {
  Evaluation out;
  const double beta = beta_of(p, x);
  if (p.beta_mode == BetaMode::free && !(beta >= p.beta_lo && beta <= p.beta_hi)) return out;
  for (double v : x) {
    if (!std::isfinite(v)) return out;
  }
  try {
    PolySpec spec = decode(p, x);
    const RootSet roots = find_roots(spec, dense_options());
    if (rescales(p)) {
      spec = spec.divided_by(DoubleDouble(roots.max_modulus));
      const double b = spec.beta_value();
      if (!(b >= p.beta_lo && b <= p.beta_hi)) return out;
      out.f = c_value(b, dist_to_nearest_critical(spec)).c;
    } else {
      out.f = c_value(beta, dist_to_nearest_critical(spec)).c +
              p.penalty_weight * std::max(0.0, roots.max_modulus - 1.0);
    }
    if (!std::isfinite(out.f)) out.f = kInf;
    out.spec = std::move(spec);
  } catch (const Error&) {
    out.f = kInf;
  }
  return out;
}

struct Vertex {
  std::vector<double> x;
  double f = kInf;
};

class NelderMead {
 public:
  NelderMead(const SearchProblem& p, const SearchOptions& o) : p_(p), o_(o) {}

  // Runs from a fresh simplex around x0. Returns true when a tolerance test
  // (not the budget) stopped it.
  bool run(const std::vector<double>& x0, Vertex& best) {
    const std::size_t dim = x0.size();
    std::vector<Vertex> s;
    s.push_back(make(x0));
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<double> x = x0;
      x[i] += o_.initial_step;
      // Keep the first simplex inside the beta range.
      if (i == 0 && p_.beta_mode == BetaMode::free && x[i] > p_.beta_hi) x[i] = x0[i] - o_.initial_step;
      s.push_back(make(x));
    }
    for (;;) {
      std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      if (s[0].f < best.f) best = s[0];
      if (diameter(s) < o_.simplex_tol) return true;
      if (s.back().f - s[0].f < o_.spread_tol) return true;
      if (evaluations_ >= o_.budget) return false;

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t i = 0; i < dim; ++i) centroid[i] += s[k].x[i] / static_cast<double>(dim);
      }
      Vertex& worst = s.back();
      const Vertex r = make(along(centroid, worst.x, 1.0));
      if (r.f < s[0].f) {
        const Vertex e = make(along(centroid, worst.x, 2.0));
        worst = e.f < r.f ? e : r;
      } else if (r.f < s[dim - 1].f) {
        worst = r;
      } else {
        const bool outside = r.f < worst.f;
        const Vertex c = make(along(centroid, worst.x, outside ? 0.5 : -0.5));
        if (c.f < (outside ? r.f : worst.f)) {
          worst = c;
        } else {
          for (std::size_t k = 1; k <= dim; ++k) {
            std::vector<double> x(dim);
            for (std::size_t i = 0; i < dim; ++i) x[i] = s[0].x[i] + 0.5 * (s[k].x[i] - s[0].x[i]);
            s[k] = make(x);
          }
        }
      }
    }
  }

  int evaluations() const { return evaluations_; }

 private:
  Vertex make(std::vector<double> x) {
    ++evaluations_;
    Vertex v;
    v.f = evaluate(p_, x).f;
    v.x = std::move(x);
    return v;
  }

  // centroid + t (centroid - from)
  static std::vector<double> along(const std::vector<double>& centroid, const std::vector<double>& from, double t) {
    std::vector<double> x(centroid.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = centroid[i] + t * (centroid[i] - from[i]);
    return x;
  }

  static double diameter(const std::vector<Vertex>& s) {
    double out = 0.0;
    for (std::size_t k = 1; k < s.size(); ++k) {
      double sq = 0.0;
      for (std::size_t i = 0; i < s[0].x.size(); ++i) sq += (s[k].x[i] - s[0].x[i]) * (s[k].x[i] - s[0].x[i]);
      out = std::max(out, std::sqrt(sq));
    }
    return out;
  }

  const SearchProblem& p_;
  const SearchOptions& o_;
  int evaluations_ = 0;
};

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

PolySpec random_start(const SearchProblem& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x;
  if (p.beta_mode == BetaMode::free) x.push_back(p.beta_lo + (p.beta_hi - p.beta_lo) * u(rng));
  for (const PatternPart& part : p.pattern.parts) {
    if (part.paired) {
      const cd z = std::polar(std::sqrt(u(rng)), std::numbers::pi * u(rng));
      x.push_back(z.real());
      x.push_back(z.imag());
    } else {
      x.push_back(2.0 * u(rng) - 1.0);
    }
  }
  return decode(p, x);
}

// FNV-1a, stable across platforms.
std::uint64_t pattern_seed(std::uint64_t seed, const std::string& key) {
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

void enumerate(int remaining, int distinct_left, int max_key, std::vector<PatternPart>& parts,
               std::vector<MultiplicityPattern>& out) {
  if (remaining == 0) {
    MultiplicityPattern p{parts};
    std::sort(p.parts.begin(), p.parts.end(), [](const PatternPart& a, const PatternPart& b) {
      if (a.paired != b.paired) return a.paired;
      return a.multiplicity < b.multiplicity;
    });
    out.push_back(std::move(p));
    return;
  }
  // key = 2 m + paired; parts are generated in non-increasing key order so
  // that each multiset appears once.
  for (int key = max_key; key >= 2; --key) {
    const int m = key / 2;
    const bool paired = key % 2 == 1;
    const int cost = paired ? 2 * m : m;
    const int points = paired ? 2 : 1;
    if (cost > remaining || points > distinct_left) continue;
    parts.push_back({m, paired});
    enumerate(remaining - cost, distinct_left - points, key, parts, out);
    parts.pop_back();
  }
}

}  // namespace

int MultiplicityPattern::degree() const {
  int n = 1;
  for (const PatternPart& p : parts) n += p.paired ? 2 * p.multiplicity : p.multiplicity;
  return n;
}

int MultiplicityPattern::distinct_points() const {
  int k = 0;
  for (const PatternPart& p : parts) k += p.paired ? 2 : 1;
  return k;
}

std::string MultiplicityPattern::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += "(" + std::to_string(parts[i].multiplicity) + "," + (parts[i].paired ? "paired" : "unpaired") + ")";
  }
  return s + "]";
}

void SearchProblem::validate() const {
  if (n < 2) throw InvalidSpec("search degree must be >= 2");
  if (pattern.parts.empty()) throw InvalidSpec("empty multiplicity pattern");
  for (const PatternPart& part : pattern.parts) {
    if (part.multiplicity < 1) throw InvalidSpec("pattern multiplicities must be >= 1");
  }
  if (pattern.degree() != n) {
    throw InvalidSpec("pattern " + pattern.to_string() + " has degree " + std::to_string(pattern.degree()) +
                      ", expected " + std::to_string(n));
  }
  if (beta_mode == BetaMode::free && !(0.0 < beta_lo && beta_lo < beta_hi && beta_hi < 1.0)) {
    throw InvalidSpec("beta range must satisfy 0 < lo < hi < 1");
  }
  if (beta_mode == BetaMode::fixed && !(0.0 < beta_fixed && beta_fixed < 1.0)) {
    throw InvalidSpec("fixed beta must lie in (0, 1)");
  }
  if (!(penalty_weight >= 0.0)) throw InvalidSpec("penalty weight must be >= 0");
}

double objective(const PolySpec& spec, double penalty_weight) {
  const double excess = std::max(0.0, max_root_modulus(spec) - 1.0);
  return c_value(spec).c + penalty_weight * excess;
}

PolySpec normalize(const PolySpec& spec) {
  const double s = max_root_modulus(spec);
  if (spec.beta_value() > s * (1.0 + kRealSlack)) throw BetaExceedsOne("beta / s exceeds 1");
  PolySpec out = spec.divided_by(DoubleDouble(s));
  if (to_double(out.beta()) > 1.0) out = PolySpec(DoubleDouble(1.0), out.critical_points());
  return out;
}

std::vector<double> encode(const SearchProblem& problem, const PolySpec& spec) {
  std::vector<double> x;
  if (problem.beta_mode == BetaMode::free) x.push_back(spec.beta_value());
  const auto& crits = spec.critical_points();
  std::vector<bool> used(crits.size(), false);
  auto take = [&](int m, bool paired) -> cd {
    for (std::size_t i = 0; i < crits.size(); ++i) {
      if (used[i] || crits[i].multiplicity != m) continue;
      const cd z = crits[i].value();
      if (!paired) {
        if (std::fabs(z.imag()) > kRealSlack) continue;
        used[i] = true;
        return z;
      }
      if (z.imag() <= 0.0) continue;
      for (std::size_t j = 0; j < crits.size(); ++j) {
        if (j == i || used[j] || crits[j].multiplicity != m) continue;
        if (std::abs(crits[j].value() - std::conj(z)) <= 1e-9 * std::max(1.0, std::abs(z))) {
          used[i] = used[j] = true;
          return z;
        }
      }
    }
    throw InvalidSpec("spec does not match pattern " + problem.pattern.to_string());
  };
  for (const PatternPart& part : problem.pattern.parts) {
    const cd z = take(part.multiplicity, part.paired);
    x.push_back(z.real());
    if (part.paired) x.push_back(z.imag());
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw InvalidSpec("spec has critical points outside pattern " + problem.pattern.to_string());
  }
  return x;
}

PolySpec decode(const SearchProblem& problem, const std::vector<double>& x) {
  std::size_t i = 0;
  const double beta = problem.beta_mode == BetaMode::free ? x[i++] : problem.beta_fixed;
  std::vector<CriticalPoint> crits;
  for (const PatternPart& part : problem.pattern.parts) {
    if (part.paired) {
      const cd z(x[i], x[i + 1]);
      i += 2;
      crits.emplace_back(z, part.multiplicity);
      crits.emplace_back(std::conj(z), part.multiplicity);
    } else {
      crits.emplace_back(cd(x[i++], 0.0), part.multiplicity);
    }
  }
  if (i != x.size()) throw InvalidSpec("parameter vector length does not match the pattern");
  return PolySpec(DoubleDouble(beta), std::move(crits));
}

SearchResult local_search(const SearchProblem& problem, const PolySpec& start, const SearchOptions& options) {
  problem.validate();
  NelderMead nm(problem, options);
  Vertex best;
  best.x = encode(problem, start);
  best.f = evaluate(problem, best.x).f;
  bool converged = nm.run(best.x, best);
  // Re-expand at the incumbent. The objective has kinks where two critical
  // points are equally near beta and the simplex collapses onto them, so keep
  // restarting while a restart still improves.
  for (int restart = 0; restart < kMaxRestarts && converged && std::isfinite(best.f); ++restart) {
    const double before = best.f;
    const std::vector<double> x = best.x;
    converged = nm.run(x, best);
    if (!(best.f < before - options.spread_tol)) break;
  }

  SearchResult out;
  out.converged = converged;
  out.evaluations = nm.evaluations() + 1;
  out.pattern = problem.pattern.to_string();
  out.objective = best.f;
  const Evaluation e = evaluate(problem, best.x);
  out.spec = e.spec ? *e.spec : decode(problem, best.x);
  if (!std::isfinite(best.f)) {
    out.membership.is_member = false;
    return out;
  }
  const CValue cv = c_value(out.spec);
  out.d = cv.d;
  out.c = cv.c;
  try {
    out.membership = check_membership(out.spec, options.membership_tol);
  } catch (const Error&) {
    out.membership.is_member = false;
  }
  return out;
}

SearchResult multistart(const SearchProblem& problem, int k, std::uint64_t seed, const SearchOptions& options) {
  problem.validate();
  if (k < 1) throw InvalidSpec("multistart needs k >= 1");
  std::vector<std::optional<SearchResult>> results(static_cast<std::size_t>(k));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < k; i = next++) {
      std::mt19937_64 rng = seeded(seed, static_cast<std::uint64_t>(i));
      SearchResult r = local_search(problem, random_start(problem, rng), options);
      r.seed = seed;
      r.start_index = i;
      results[static_cast<std::size_t>(i)] = std::move(r);
    }
  };
  int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, k);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  // Strict < keeps the lower start index on ties.
  const SearchResult* best = nullptr;
  for (const auto& r : results) {
    if (!r || !r->membership.is_member) continue;
    if (!best || r->objective < best->objective) best = &*r;
  }
  if (!best) throw NoFeasibleResult("no start ended in a member of the class");
  return *best;
}

std::vector<MultiplicityPattern> enumerate_patterns(int n, int max_distinct) {
  if (n < 2) throw InvalidSpec("pattern degree must be >= 2");
  if (max_distinct < 1 || max_distinct > 6) throw InvalidSpec("max_distinct must lie in [1, 6]");
  std::vector<MultiplicityPattern> out;
  std::vector<PatternPart> parts;
  enumerate(n - 1, max_distinct, 2 * (n - 1) + 1, parts, out);
  return out;
}

std::vector<SearchResult> pattern_scan(int n, int max_distinct, int k, std::uint64_t seed,
                                       const SearchOptions& options, const SearchProblem& base) {
  std::vector<SearchResult> out;
  for (const MultiplicityPattern& pattern : enumerate_patterns(n, max_distinct)) {
    SearchProblem p = base;
    p.n = n;
    p.pattern = pattern;
    try {
      out.push_back(multistart(p, k, pattern_seed(seed, pattern.to_string()), options));
    } catch (const NoFeasibleResult&) {
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SearchResult& a, const SearchResult& b) { return a.c < b.c; });
  return out;
}

}  // namespace sendov
