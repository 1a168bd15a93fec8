#include "sendov/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sendov/errors.hpp"

namespace sendov {

namespace {

constexpr double kStepTol = 1e-13;
// A step below this that no longer halves is rounding noise in P/P'.
constexpr double kNoiseStep = 1e-11;

// P and P' from dense coefficients by a joint Horner pass.
template <class Real>
class DenseRatio {
 public:
  struct State {};

  explicit DenseRatio(const PolySpec& spec) : coeffs_(expand_coefficients_as<Real>(spec)) {}

  Complex<Real> value(const Complex<Real>& z) const {
    Complex<Real> p{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) p = p * z + *it;
    return p;
  }

  State start(const Complex<Real>&) const { return {}; }
  void advance(const Complex<Real>&, const Complex<Real>&, State&) const {}
  State refresh(const Complex<Real>&) const { return {}; }

  // P/P'; returns false when P'(z) = 0.
  bool newton(const Complex<Real>& z, const State&, Complex<Real>& out) const {
    Complex<Real> p{};
    Complex<Real> dp{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      dp = dp * z + p;
      p = p * z + *it;
    }
    if (is_zero(dp)) return false;
    out = p / dp;
    return true;
  }

 private:
  std::vector<Complex<Real>> coeffs_;
};

// P through quadrature. Each iterate carries its current P value, updated
// by integrating P' over the step just taken; refresh() re-integrates from
// beta.
template <class Real>
class QuadratureRatio {
 public:
  struct State {
    Complex<Real> p;
    double mass = 0.0;  // integrand mass carried since the last fresh value
  };

  explicit QuadratureRatio(const PolySpec& spec) : eval_(spec) {}

  Complex<Real> value(const Complex<Real>& z) const { return eval_(z); }

  State start(const Complex<Real>& z) const { return {eval_(z)}; }
  State refresh(const Complex<Real>& z) const { return {eval_(z)}; }
  void advance(const Complex<Real>& from, const Complex<Real>& to, State& state) const {
    const auto step = eval_.integrate_with_mass(from, to);
    state.p += step.value;
    state.mass += step.mass;
    // The error bound scales with the mass walked through; once it is not
    // small against |P| the carried value is no longer worth steering by.
    if (!(state.mass * eval_.rel_tol() * 100.0 <= to_double(abs(state.p)))) state = refresh(to);
  }

  bool newton(const Complex<Real>& z, const State& state, Complex<Real>& out) const {
    const Scaled<Real> dp = eval_.derivative_scaled(z);
    if (is_zero(dp.mant)) return false;
    // p / (mant * 2^e) without forming the possibly overflowing P'.
    const Complex<Real> q = state.p / dp.mant;
    out = dp.exp2 > 3000 ? Complex<Real>{} : ldexp(q, static_cast<int>(-dp.exp2));
    return true;
  }

 private:
  PolyEvaluator<Real> eval_;
};

// 1/w without the overflow guard of operator/; root differences are O(1).
template <class Real>
Complex<Real> reciprocal(const Complex<Real>& w) {
  const Real inv = Real(1.0) / norm(w);
  return {w.re * inv, -(w.im * inv)};
}

template <class Real>
struct AberthResult {
  std::vector<Complex<Real>> roots;
  int sweeps = 0;
};

template <class Real, class Ratio>
AberthResult<Real> aberth(const PolySpec& spec, const Ratio& ratio, int max_sweeps) {
  using State = typename Ratio::State;
  const int n = spec.degree();
  const Complex<Real> beta = Complex<Real>::from(ComplexDD(spec.beta()));
  const Complex<Real> one(Real(1.0));
  const int unknowns = n - 1;

  double radius = 1.0;
  for (const auto& c : spec.critical_points()) radius = std::max(radius, std::abs(c.value()));
  radius *= 1.0 + 1e-3;

  std::vector<Complex<Real>> z(static_cast<std::size_t>(unknowns));
  std::vector<State> state;
  state.reserve(z.size());
  for (int k = 0; k < unknowns; ++k) {
    const double theta = 2.0 * std::numbers::pi * (k + 0.25) / unknowns + 0.1;
    z[static_cast<std::size_t>(k)] =
        Complex<Real>(Real(radius * std::cos(theta)), Real(radius * std::sin(theta)));
    state.push_back(ratio.start(z[static_cast<std::size_t>(k)]));
  }
  std::vector<char> done(z.size(), 0);
  std::vector<double> last_step(z.size(), std::numeric_limits<double>::infinity());
  auto settled = [&](std::size_t i, double step) {
    const double scale = 1.0 + to_double(abs(z[i]));
    const bool noise = step <= kNoiseStep * scale && step >= 0.5 * last_step[i];
    last_step[i] = step;
    return step <= kStepTol * scale || noise;
  };

  // One Gauss-Seidel Aberth correction of root i; returns the step size.
  auto correct = [&](std::size_t i) -> double {
    Complex<Real> newton;
    if (!ratio.newton(z[i], state[i], newton)) {
      // Sitting on a critical point; nudge off it.
      const Complex<Real> moved = z[i] * Complex<Real>(Real(1.0 + 1e-7), Real(1e-7));
      ratio.advance(z[i], moved, state[i]);
      z[i] = moved;
      return std::numeric_limits<double>::infinity();
    }
    if (is_zero(newton)) return 0.0;
    Complex<Real> repulsion = reciprocal(z[i] - beta);
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j != i) repulsion += reciprocal(z[i] - z[j]);
    }
    const Complex<Real> step = newton / (one - newton * repulsion);
    const Complex<Real> moved = z[i] - step;
    if (!isfinite(moved.re) || !isfinite(moved.im)) {
      throw NoConvergence("Aberth iteration produced a non-finite iterate");
    }
    ratio.advance(z[i], moved, state[i]);
    z[i] = moved;
    return to_double(abs(step));
  };

  AberthResult<Real> result;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      if (settled(i, correct(i))) {
        done[i] = 1;
      } else {
        all_done = false;
      }
    }
    result.sweeps = sweep;
    if (!all_done) continue;
    // Carried values may have drifted; polish with freshly evaluated P until
    // every correction is below tolerance again.
    bool polished = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      state[i] = ratio.refresh(z[i]);
      if (!settled(i, correct(i))) {
        done[i] = 0;
        polished = false;
      }
    }
    if (polished) {
      result.roots.reserve(z.size() + 1);
      result.roots.push_back(beta);
      result.roots.insert(result.roots.end(), z.begin(), z.end());
      return result;
    }
  }
  throw NoConvergence("Aberth iteration did not converge in " + std::to_string(max_sweeps) +
                      " sweeps (degree " + std::to_string(n) + ")");
}

template <class Real>
RootSet find_roots_as(const PolySpec& spec, int max_sweeps) {
  RootSet out;
  out.precision = std::is_same_v<Real, double> ? Precision::binary64 : Precision::double_double;
  auto finish = [&](const AberthResult<Real>& r, const auto& ratio) {
    out.sweeps = r.sweeps;
    Real max_mod{};
    for (const auto& root : r.roots) {
      out.roots.push_back(root.to_std());
      out.residuals.push_back(to_double(abs(ratio.value(root))));
      max_mod = std::max(max_mod, abs(root));
    }
    out.max_modulus = to_double(max_mod);
  };
  if (spec.degree() <= kDenseDegreeCap) {
    const DenseRatio<Real> ratio(spec);
    finish(aberth<Real>(spec, ratio, max_sweeps), ratio);
  } else {
    const QuadratureRatio<Real> ratio(spec);
    finish(aberth<Real>(spec, ratio, max_sweeps), ratio);
  }
  return out;
}

// Winding number of P along |z| = radius. P is carried from sample to sample
// by integrating P' along the chords, so only the first point needs the
// long integral from beta. Chords are bisected until P cannot wind around 0
// within one; they get short near roots, so the inscribed polygon and the
// circle enclose the same roots.
template <class Real>
class Winding {
 public:
  Winding(const PolySpec& spec, double radius) : eval_(spec), radius_(radius) {}

  int count(int samples) {
    const Complex<Real> z0 = point(0.0);
    const Complex<Real> p0 = eval_(z0);
    check_nonzero(p0);
    double total = 0.0;
    Complex<Real> za = z0;
    Complex<Real> pa = p0;
    const double step = 2.0 * std::numbers::pi / samples;
    for (int k = 0; k < samples; ++k) {
      const double ta = step * k;
      const double tb = k + 1 == samples ? 2.0 * std::numbers::pi : step * (k + 1);
      const Complex<Real> zb = k + 1 == samples ? z0 : point(tb);
      total += walk(ta, tb, za, pa, zb, pa);
      za = zb;
    }
    const double turns = total / (2.0 * std::numbers::pi);
    const double rounded = std::round(turns);
    if (std::fabs(turns - rounded) > 0.1) {
      throw OnCircleAmbiguity("winding sum " + std::to_string(turns) + " is not near an integer");
    }
    return static_cast<int>(rounded);
  }

 private:
  Complex<Real> point(double theta) const {
    return Complex<Real>(Real(radius_ * std::cos(theta)), Real(radius_ * std::sin(theta)));
  }

  static void check_nonzero(const Complex<Real>& p) {
    if (is_zero(p)) throw OnCircleAmbiguity("P vanishes on the contour");
  }

  // Accumulated argument change from ta to tb; on return pa holds P(zb).
  double walk(double ta, double tb, const Complex<Real>& za, Complex<Real> pa,
              const Complex<Real>& zb, Complex<Real>& pb_out) {
    const auto step = eval_.integrate_with_mass(za, zb);
    const Complex<Real> pb = pa + step.value;
    check_nonzero(pb);
    // With \int |P'| along the chord below |P(za)| or |P(zb)|, P stays in a
    // disk about that endpoint value which excludes 0, so the principal
    // argument of the ratio is the full change. A bare |delta| < pi/2 test
    // misses windings near the contour.
    if (step.mass < 0.9 * std::max(to_double(abs(pa)), to_double(abs(pb)))) {
      pb_out = pb;
      return arg(pb / pa);
    }
    if (tb - ta < 1e-13) {
      throw OnCircleAmbiguity("argument refinement stalled near theta = " + std::to_string(ta));
    }
    const double tm = 0.5 * (ta + tb);
    const Complex<Real> zm = point(tm);
    Complex<Real> pm;
    const double first = walk(ta, tm, za, pa, zm, pm);
    const double second = walk(tm, tb, zm, pm, zb, pb_out);
    return first + second;
  }

  PolyEvaluator<Real> eval_;
  double radius_;
};

}  // namespace

RootSet find_roots(const PolySpec& spec, const RootOptions& options) {
  const Precision p = resolve_precision(options.precision, spec.degree());
  if (p == Precision::double_double) return find_roots_as<DoubleDouble>(spec, options.max_sweeps);
  try {
    return find_roots_as<double>(spec, options.max_sweeps);
  } catch (const NoConvergence&) {
    if (!options.escalate) throw;
    return find_roots_as<DoubleDouble>(spec, options.max_sweeps);
  }
}

double max_root_modulus(const PolySpec& spec, const RootOptions& options) {
  return find_roots(spec, options).max_modulus;
}

int count_roots_in_disk(const PolySpec& spec, double radius, Precision precision) {
  if (!(radius > 0.0)) throw InvalidSpec("radius must be positive");
  const int samples = std::max(64, 8 * spec.degree());
  if (resolve_precision(precision, spec.degree()) == Precision::double_double) {
    return Winding<DoubleDouble>(spec, radius).count(samples);
  }
  return Winding<double>(spec, radius).count(samples);
}

MembershipReport check_membership(const PolySpec& spec, double tol, const RootOptions& options) {
  if (!(tol >= 0.0)) throw InvalidSpec("membership tolerance must be >= 0");
  const RootSet roots = find_roots(spec, options);
  MembershipReport report;
  report.tol = tol;
  report.degree = spec.degree();
  report.precision = roots.precision;
  report.max_modulus = roots.max_modulus;
  report.margin = 1.0 + tol - roots.max_modulus;
  report.is_member = roots.max_modulus <= 1.0 + tol;
  report.method = MembershipMethod::direct_roots;
  if (spec.degree() <= kWindingDegreeCap) {
    const int inside = count_roots_in_disk(spec, 1.0 + tol, roots.precision);
    report.disk_count = inside;
    report.method = MembershipMethod::both;
    if ((inside == spec.degree()) != report.is_member) {
      throw MethodDisagreement("roots give max modulus " + std::to_string(roots.max_modulus) +
                               " but the winding count is " + std::to_string(inside) + " of " +
                               std::to_string(spec.degree()));
    }
  }
  return report;
}

std::vector<std::complex<double>> companion_roots(const CoefficientPoly& poly) {
  const int n = poly.degree();
  if (n < 1) return {};
  const std::complex<double> lead = poly.coeffs.back();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -poly.coeffs[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

const char* to_string(MembershipMethod method) {
  switch (method) {
    case MembershipMethod::direct_roots: return "direct_roots";
    case MembershipMethod::argument_principle: return "argument_principle";
    case MembershipMethod::both: return "both";
  }
  return "unknown";
}

const char* to_string(Precision precision) {
  switch (precision) {
    case Precision::automatic: return "automatic";
    case Precision::binary64: return "double";
    case Precision::double_double: return "dd";
  }
  return "unknown";
}

}  // namespace sendov
