#include "sendov/polyform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sendov/errors.hpp"

namespace sendov {

PolySpec::PolySpec(DoubleDouble beta, std::vector<CriticalPoint> crits)
    : beta_(beta), crits_(std::move(crits)) {
  if (!isfinite(beta_) || beta_ < DoubleDouble(0.0) || beta_ > DoubleDouble(1.0)) {
    throw InvalidSpec("beta must lie in [0, 1], got " + to_string(beta_, 17));
  }
  if (crits_.empty()) throw InvalidSpec("at least one critical point is required");
  std::int64_t n = 1;
  for (const auto& c : crits_) {
    if (c.multiplicity < 1) throw InvalidSpec("critical point multiplicity must be >= 1");
    if (!isfinite(c.zeta.re) || !isfinite(c.zeta.im)) {
      throw InvalidSpec("critical point coordinates must be finite");
    }
    n += c.multiplicity;
    if (n > 1'000'000) throw InvalidSpec("degree exceeds 10^6");
  }
  degree_ = static_cast<int>(n);
}

PolySpec PolySpec::divided_by(const DoubleDouble& s) const {
  std::vector<CriticalPoint> crits;
  crits.reserve(crits_.size());
  for (const auto& c : crits_) {
    crits.emplace_back(ComplexDD{c.zeta.re / s, c.zeta.im / s}, c.multiplicity);
  }
  return PolySpec(beta_ / s, std::move(crits));
}

Precision resolve_precision(Precision requested, int degree) {
  if (requested != Precision::automatic) return requested;
  return degree >= kExtendedPrecisionDegree ? Precision::double_double : Precision::binary64;
}

std::complex<double> CoefficientPoly::operator()(std::complex<double> z) const {
  std::complex<double> acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

CoefficientPoly CoefficientPoly::derivative() const {
  CoefficientPoly d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    d.coeffs.push_back(coeffs[k] * static_cast<double>(k));
  }
  if (d.coeffs.empty()) d.coeffs.emplace_back(0.0);
  return d;
}

namespace {

inline constexpr int kGaussOrder = 16;

template <class Real>
struct GaussRule {
  std::array<Real, kGaussOrder> nodes;
  std::array<Real, kGaussOrder> weights;
};

// Legendre nodes and weights, Newton-refined in double-double.
GaussRule<DoubleDouble> make_gauss_dd() {
  GaussRule<DoubleDouble> rule;
  constexpr int n = kGaussOrder;
  for (int i = 0; i < n / 2; ++i) {
    DoubleDouble x(std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)));
    DoubleDouble dp;
    for (int iter = 0; iter < 8; ++iter) {
      DoubleDouble p0(1.0);
      DoubleDouble p1 = x;
      for (int k = 1; k < n; ++k) {
        DoubleDouble p2 = (DoubleDouble(2 * k + 1) * x * p1 - DoubleDouble(k) * p0) / DoubleDouble(k + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = DoubleDouble(n) * (x * p1 - p0) / (x * x - DoubleDouble(1.0));
      x -= p1 / dp;
    }
    const DoubleDouble w = DoubleDouble(2.0) / ((DoubleDouble(1.0) - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

template <class Real>
const GaussRule<Real>& gauss_rule() {
  static const GaussRule<Real> rule = [] {
    const GaussRule<DoubleDouble> dd = make_gauss_dd();
    GaussRule<Real> r;
    for (int k = 0; k < kGaussOrder; ++k) {
      const auto i = static_cast<std::size_t>(k);
      if constexpr (std::is_same_v<Real, double>) {
        r.nodes[i] = to_double(dd.nodes[i]);
        r.weights[i] = to_double(dd.weights[i]);
      } else {
        r.nodes[i] = dd.nodes[i];
        r.weights[i] = dd.weights[i];
      }
    }
    return r;
  }();
  return rule;
}

template <class Real>
Real l1_norm(const Complex<Real>& z) {
  return abs(z.re) + abs(z.im);
}

// Multiplies by 2^shift, flushing to zero when far below the working range.
template <class Real>
Complex<Real> shift(const Complex<Real>& z, std::int64_t s) {
  if (s < -3000) return {};
  return ldexp(z, static_cast<int>(s));
}

template <class Real>
Real shift(const Real& x, std::int64_t s) {
  if (s < -3000) return Real{};
  return ldexp(x, static_cast<int>(s));
}

}  // namespace

// value and mass are both scaled by 2^exp2.
template <class Real>
struct PolyEvaluator<Real>::Panel {
  Complex<Real> value{};
  Real mass{};
  std::int64_t exp2 = 0;

  void normalize() {
    const int e = std::max({ilogb_hi(value.re), ilogb_hi(value.im), ilogb_hi(mass)});
    if (mass == Real{} && is_zero(value)) {
      exp2 = 0;
      return;
    }
    value = ldexp(value, -e);
    mass = ldexp(mass, -e);
    exp2 += e;
  }

  friend Panel operator+(const Panel& a, const Panel& b) {
    if (a.mass == Real{} && is_zero(a.value)) return b;
    if (b.mass == Real{} && is_zero(b.value)) return a;
    const std::int64_t e = std::max(a.exp2, b.exp2);
    Panel r;
    r.exp2 = e;
    r.value = shift(a.value, a.exp2 - e) + shift(b.value, b.exp2 - e);
    r.mass = shift(a.mass, a.exp2 - e) + shift(b.mass, b.exp2 - e);
    r.normalize();
    return r;
  }
};

template <class Real>
PolyEvaluator<Real>::PolyEvaluator(const PolySpec& spec, QuadratureOptions options)
    : beta_(Complex<Real>::from(ComplexDD(spec.beta()))),
      degree_(spec.degree()),
      options_(options) {
  if (options_.rel_tol <= 0.0) {
    options_.rel_tol = std::is_same_v<Real, double> ? 1e-12 : 1e-26;
  }
  for (const auto& c : spec.critical_points()) {
    zeta_.push_back(Complex<Real>::from(c.zeta));
    mult_.push_back(c.multiplicity);
  }
}

template <class Real>
Scaled<Real> PolyEvaluator<Real>::derivative_scaled(const Complex<Real>& z) const {
  Scaled<Real> acc{Complex<Real>(Real(1.0)), 0};
  for (std::size_t i = 0; i < zeta_.size(); ++i) {
    acc *= scaled_pow(z - zeta_[i], mult_[i]);
    if (is_zero(acc.mant)) return acc;
  }
  return acc;
}

template <class Real>
typename PolyEvaluator<Real>::Panel PolyEvaluator<Real>::gauss_panel(const Complex<Real>& a,
                                                                     const Complex<Real>& h,
                                                                     const Real& t0,
                                                                     const Real& t1) const {
  const auto& rule = gauss_rule<Real>();
  const Real half = (t1 - t0) * Real(0.5);
  const Real mid = (t0 + t1) * Real(0.5);

  std::array<Scaled<Real>, kGaussOrder> f;
  std::int64_t emax = INT64_MIN;
  for (int k = 0; k < kGaussOrder; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const Real t = mid + half * rule.nodes[i];
    f[i] = derivative_scaled(a + h * t);
    if (!is_zero(f[i].mant)) emax = std::max(emax, f[i].exp2);
  }
  Panel p;
  if (emax == INT64_MIN) return p;
  for (int k = 0; k < kGaussOrder; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (is_zero(f[i].mant)) continue;
    const Complex<Real> v = shift(f[i].mant, f[i].exp2 - emax);
    p.value += v * rule.weights[i];
    p.mass += l1_norm(v) * rule.weights[i];
  }
  p.value = p.value * h * half;
  p.mass = p.mass * l1_norm(h) * half;
  p.exp2 = emax;
  p.normalize();
  return p;
}

template <class Real>
typename PolyEvaluator<Real>::Panel PolyEvaluator<Real>::adapt(const Complex<Real>& a,
                                                               const Complex<Real>& h,
                                                               const Real& t0, const Real& t1,
                                                               const Panel& whole,
                                                               const Panel& scale,
                                                               int depth) const {
  const Real mid = (t0 + t1) * Real(0.5);
  const Panel left = gauss_panel(a, h, t0, mid);
  const Panel right = gauss_panel(a, h, mid, t1);
  const Panel sum = left + right;

  // The tolerance is relative to the mass of the whole segment. A panel-local
  // relative test never settles next to a high-order zero of P', where the
  // integrand looks the same at every scale.
  const Complex<Real> diff = shift(whole.value, whole.exp2 - sum.exp2) - sum.value;
  const std::int64_t gap = scale.exp2 - sum.exp2;
  const bool negligible = gap > 1000;
  const bool tiny = sum.exp2 < -1000 ||
                    to_double(shift(sum.mass, sum.exp2)) <= options_.abs_tol;
  if (negligible || tiny || l1_norm(diff) <= shift(scale.mass * Real(options_.rel_tol), gap)) {
    return sum;
  }
  if (depth >= options_.max_depth) {
    throw QuadratureNoConvergence("adaptive quadrature exceeded depth " +
                                  std::to_string(options_.max_depth));
  }
  return adapt(a, h, t0, mid, left, scale, depth + 1) +
         adapt(a, h, mid, t1, right, scale, depth + 1);
}

template <class Real>
typename PolyEvaluator<Real>::Integral PolyEvaluator<Real>::integrate_with_mass(
    const Complex<Real>& from, const Complex<Real>& to) const {
  const Complex<Real> h = to - from;
  if (is_zero(h)) return {};
  // Start from enough panels that a single Gauss panel sees a low-degree
  // piece of P'; adaptivity takes over from there.
  const double len = to_double(abs(h));
  const int panels =
      static_cast<int>(std::clamp(std::ceil(len * (degree_ - 1) / 32.0), 1.0, 1e6));
  std::vector<Panel> wholes(static_cast<std::size_t>(panels));
  Panel scale;
  for (int p = 0; p < panels; ++p) {
    const Real t0 = Real(static_cast<double>(p)) / Real(static_cast<double>(panels));
    const Real t1 = Real(static_cast<double>(p + 1)) / Real(static_cast<double>(panels));
    wholes[static_cast<std::size_t>(p)] = gauss_panel(from, h, t0, t1);
    scale = scale + wholes[static_cast<std::size_t>(p)];
  }
  Panel total;
  for (int p = 0; p < panels; ++p) {
    const Real t0 = Real(static_cast<double>(p)) / Real(static_cast<double>(panels));
    const Real t1 = Real(static_cast<double>(p + 1)) / Real(static_cast<double>(panels));
    total = total + adapt(from, h, t0, t1, wholes[static_cast<std::size_t>(p)], scale, 0);
  }
  const double mass = total.exp2 > 4000 ? std::numeric_limits<double>::infinity()
                                         : to_double(shift(total.mass, total.exp2));
  if (total.exp2 > 4000) return {ldexp(total.value, 4000), mass};
  return {shift(total.value, total.exp2), mass};
}

template class PolyEvaluator<double>;
template class PolyEvaluator<DoubleDouble>;

std::complex<double> eval_derivative(const PolySpec& spec, std::complex<double> z) {
  if (resolve_precision(Precision::automatic, spec.degree()) == Precision::double_double) {
    return PolyEvaluator<DoubleDouble>(spec).derivative(ComplexDD(z)).to_std();
  }
  return PolyEvaluator<double>(spec).derivative(Complex<double>(z)).to_std();
}

std::complex<double> eval(const PolySpec& spec, std::complex<double> z, Precision precision) {
  if (resolve_precision(precision, spec.degree()) == Precision::double_double) {
    return PolyEvaluator<DoubleDouble>(spec)(ComplexDD(z)).to_std();
  }
  return PolyEvaluator<double>(spec)(Complex<double>(z)).to_std();
}

template <class Real>
std::vector<Complex<Real>> expand_coefficients_as(const PolySpec& spec) {
  // P' = prod (z - zeta)^m, ascending coefficients.
  std::vector<Complex<Real>> dp{Complex<Real>(Real(1.0))};
  for (const auto& c : spec.critical_points()) {
    const Complex<Real> zeta = Complex<Real>::from(c.zeta);
    for (int k = 0; k < c.multiplicity; ++k) {
      std::vector<Complex<Real>> next(dp.size() + 1);
      for (std::size_t i = 0; i < dp.size(); ++i) {
        next[i + 1] += dp[i];
        next[i] -= zeta * dp[i];
      }
      dp = std::move(next);
    }
  }
  std::vector<Complex<Real>> p(dp.size() + 1);
  for (std::size_t i = 0; i < dp.size(); ++i) {
    p[i + 1] = dp[i] / Complex<Real>(Real(static_cast<double>(i + 1)));
  }
  const Complex<Real> beta = Complex<Real>::from(ComplexDD(spec.beta()));
  Complex<Real> at_beta{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) at_beta = at_beta * beta + *it;
  p[0] = -at_beta;
  return p;
}

template std::vector<Complex<double>> expand_coefficients_as<double>(const PolySpec&);
template std::vector<Complex<DoubleDouble>> expand_coefficients_as<DoubleDouble>(const PolySpec&);

CoefficientPoly expand_coefficients(const PolySpec& spec, int cap) {
  if (spec.degree() > cap) {
    throw DegreeTooLarge("dense expansion requested for degree " + std::to_string(spec.degree()) +
                         " above cap " + std::to_string(cap));
  }
  // Accumulate in double-double; the rounded result is what callers see.
  const auto dd = expand_coefficients_as<DoubleDouble>(spec);
  CoefficientPoly out;
  out.coeffs.reserve(dd.size());
  for (const auto& c : dd) out.coeffs.push_back(c.to_std());
  return out;
}

}  // namespace sendov
