#include "sendov/families.hpp"

#include <cmath>
#include <numbers>

#include "sendov/errors.hpp"
#include "sendov/metrics.hpp"
#include "sendov/roots.hpp"

namespace sendov {

namespace {

using cd = std::complex<double>;

constexpr double kDiskSlack = 1e-12;

void require_degree(int n) {
  if (n < 2) throw InvalidSpec("family degree must be >= 2, got " + std::to_string(n));
}

// Monic coefficients of prod (z - r), ascending.
std::vector<cd> monic_from_roots(const std::vector<cd>& roots) {
  std::vector<cd> c{1.0};
  for (const cd& r : roots) {
    std::vector<cd> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

// Companion roots of the derivative, polished by Newton on
// P'/P = sum 1/(z - r_k). Eigenvalues alone lose digits when roots cluster.
std::vector<CriticalPoint> critical_points_of(const std::vector<cd>& roots) {
  auto log_derivative = [&](cd z, cd& slope) {
    cd f{};
    slope = {};
    for (const cd& r : roots) {
      const cd inv = 1.0 / (z - r);
      f += inv;
      slope -= inv * inv;
    }
    return f;
  };
  std::vector<CriticalPoint> crits;
  for (cd z : companion_roots(CoefficientPoly{monic_from_roots(roots)}.derivative())) {
    for (int it = 0; it < 8; ++it) {
      cd slope;
      const cd f = log_derivative(z, slope);
      if (!std::isfinite(std::abs(f)) || slope == cd{}) break;
      const cd next = z - f / slope;
      cd unused;
      if (!(std::abs(log_derivative(next, unused)) < std::abs(f))) break;
      z = next;
    }
    crits.emplace_back(z, 1);
  }
  return crits;
}

}  // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::brs_star: return "brs_star";
    case Family::circle_one_crit: return "circle_one_crit";
    case Family::line_rooted: return "line_rooted";
    case Family::real_quartic: return "real_quartic";
    case Family::phelps_rodriguez: return "phelps_rodriguez";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  for (Family f : {Family::brs_star, Family::circle_one_crit, Family::line_rooted, Family::real_quartic,
                   Family::phelps_rodriguez}) {
    if (name == to_string(f)) return f;
  }
  throw InvalidSpec("unknown family '" + name + "'");
}

PolySpec brs_star(int n) {
  require_degree(n);
  const double radius = rn_at_zero(n);
  std::vector<CriticalPoint> crits;
  for (int k = 0; k < n - 1; ++k) {
    crits.emplace_back(std::polar(radius, 2.0 * std::numbers::pi * k / (n - 1)), 1);
  }
  return PolySpec(0.0, std::move(crits));
}

PolySpec circle_one_crit(int n, double beta, cd zeta) {
  require_degree(n);
  return PolySpec(beta, {CriticalPoint(zeta, n - 1)});
}

double extremal_radius(int n, double beta) {
  require_degree(n);
  if (n % 2 == 0) return (1.0 + beta) / 2.0;
  const double k = 1.0 + std::cos(std::numbers::pi / n);
  return (beta + std::sqrt(beta * beta + 2.0 * (1.0 - beta * beta) / k)) / 2.0;
}

PolySpec extremal_one_crit(int n, double beta) {
  return circle_one_crit(n, beta, cd(beta - extremal_radius(n, beta), 0.0));
}

PolySpec spec_from_roots(const std::vector<cd>& roots) {
  if (roots.size() < 2) throw InvalidSpec("need at least two roots");
  if (roots.size() > static_cast<std::size_t>(kDenseDegreeCap)) {
    throw DegreeTooLarge("degree " + std::to_string(roots.size()) + " exceeds the dense cap");
  }
  return PolySpec(roots[0].real(), critical_points_of(roots));
}

PolySpec line_rooted(double beta, const std::vector<double>& offsets, double angle) {
  if (offsets.empty()) throw InvalidSpec("line_rooted needs at least one offset");
  std::vector<cd> roots{cd(beta, 0.0)};
  const cd dir = std::polar(1.0, angle);
  for (double t : offsets) {
    const cd z = beta + t * dir;
    if (std::abs(z) > 1.0 + kDiskSlack) {
      throw RootOutsideDisk("root " + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
                            std::to_string(z.imag()) + "i lies outside the unit disk");
    }
    roots.push_back(z);
  }
  return spec_from_roots(roots);
}

Lemma4Result lemma4_check(double beta, const std::array<cd, 3>& z) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidSpec("beta must lie in [0, 1]");
  for (const cd& w : z) {
    if (std::abs(w) > 1.0 + kDiskSlack) throw RootOutsideDisk("quartic root outside the unit disk");
  }
  // Closed under conjugation: all real, or one real and a conjugate pair.
  auto is_real = [](cd w) { return std::fabs(w.imag()) <= kDiskSlack; };
  int real_count = 0;
  for (const cd& w : z) real_count += is_real(w) ? 1 : 0;
  bool closed = real_count == 3;
  if (real_count == 1) {
    std::array<cd, 2> pair;
    int k = 0;
    for (const cd& w : z) {
      if (!is_real(w)) pair[static_cast<std::size_t>(k++)] = w;
    }
    closed = std::abs(pair[0] - std::conj(pair[1])) <= kDiskSlack;
  }
  if (!closed) throw NotRealPolynomial("the quartic's roots are not closed under conjugation");

  const std::vector<cd> roots{cd(beta, 0.0), z[0], z[1], z[2]};
  Lemma4Result out;
  out.d = dist_to_nearest_critical(PolySpec(beta, critical_points_of(roots)));
  out.dpb_modulus = std::abs((beta - z[0]) * (beta - z[1]) * (beta - z[2]));
  out.bound_applicable = out.d > (1.0 + beta) / 2.0;
  out.holds = !out.bound_applicable || out.dpb_modulus <= (1.0 + beta) * (1.0 + beta) * (1.0 + 1e-12);
  return out;
}

PolySpec phelps_rodriguez(int n, double /*t*/) {
  require_degree(n);
  return PolySpec(1.0, {CriticalPoint(cd(0.0, 0.0), n - 1)});
}

FamilyDescriptor describe_brs_star(int n) {
  return {Family::brs_star, {{"n", n}}, brs_star(n)};
}

FamilyDescriptor describe_circle_one_crit(int n, double beta, cd zeta) {
  return {Family::circle_one_crit,
          {{"n", n}, {"beta", beta}, {"zeta_re", zeta.real()}, {"zeta_im", zeta.imag()}},
          circle_one_crit(n, beta, zeta)};
}

FamilyDescriptor describe_line_rooted(double beta, const std::vector<double>& offsets, double angle) {
  FamilyDescriptor d{Family::line_rooted, {{"beta", beta}, {"angle", angle}},
                     line_rooted(beta, offsets, angle)};
  for (std::size_t k = 0; k < offsets.size(); ++k) d.params.emplace_back("t" + std::to_string(k), offsets[k]);
  return d;
}

FamilyDescriptor describe_real_quartic(double beta, const std::array<cd, 3>& z) {
  lemma4_check(beta, z);
  FamilyDescriptor d{Family::real_quartic, {{"beta", beta}},
                     spec_from_roots({cd(beta, 0.0), z[0], z[1], z[2]})};
  for (std::size_t k = 0; k < 3; ++k) {
    d.params.emplace_back("z" + std::to_string(k) + "_re", z[k].real());
    d.params.emplace_back("z" + std::to_string(k) + "_im", z[k].imag());
  }
  return d;
}

FamilyDescriptor describe_phelps_rodriguez(int n, double t) {
  return {Family::phelps_rodriguez, {{"n", n}, {"t", t}}, phelps_rodriguez(n, t)};
}

RealQuartic sample_real_quartic(std::mt19937_64& rng, double min_modulus) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double floor2 = min_modulus * min_modulus;
  auto radius = [&] { return std::sqrt(floor2 + (1.0 - floor2) * u(rng)); };
  RealQuartic q;
  q.beta = u(rng);
  auto real_root = [&] { return cd(u(rng) < 0.5 ? -radius() : radius(), 0.0); };
  if (u(rng) < 0.5) {
    q.others[0] = real_root();
    const cd w = std::polar(radius(), std::numbers::pi * u(rng));
    q.others[1] = w;
    q.others[2] = std::conj(w);
  } else {
    for (cd& w : q.others) w = real_root();
  }
  return q;
}

LineSample sample_line_rooted(std::mt19937_64& rng, int max_degree) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LineSample s;
  s.beta = u(rng);
  s.angle = std::numbers::pi * u(rng);
  const int n = std::uniform_int_distribution<int>(2, max_degree)(rng);
  // The line beta + t e^{i angle} meets the unit circle at t = -b cos +- sqrt(1 - b^2 sin^2).
  const double c = std::cos(s.angle);
  const double sn = std::sin(s.angle);
  const double half = std::sqrt(1.0 - s.beta * s.beta * sn * sn);
  const double lo = -s.beta * c - half;
  const double hi = -s.beta * c + half;
  for (int k = 1; k < n; ++k) s.offsets.push_back(lo + (hi - lo) * u(rng));
  return s;
}

}  // namespace sendov
