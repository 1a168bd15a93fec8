#pragma once

#include <array>
#include <complex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sendov/polyform.hpp"

namespace sendov {

enum class Family { brs_star, circle_one_crit, line_rooted, real_quartic, phelps_rodriguez };

const char* to_string(Family family);
Family family_from_string(const std::string& name);  // throws InvalidSpec

// A generated spec together with the parameters that produced it. Every
// family is emitted with beta real in [0, 1].
struct FamilyDescriptor {
  Family family;
  std::vector<std::pair<std::string, double>> params;
  PolySpec spec;
};

// P = (z^n - z) / n, beta = 0.
PolySpec brs_star(int n);

// P = ((z - zeta)^n - (beta - zeta)^n) / n: one critical point of
// multiplicity n - 1, every root on the circle |z - zeta| = |beta - zeta|.
PolySpec circle_one_crit(int n, double beta, std::complex<double> zeta);

// Largest d over polynomials with a single distinct critical point.
// Even n: (1 + beta) / 2. Odd n: root of 2 (1 + cos(pi/n)) (r^2 - beta r) = 1 - beta^2.
double extremal_radius(int n, double beta);

// circle_one_crit with zeta = beta - extremal_radius(n, beta).
PolySpec extremal_one_crit(int n, double beta);

// Roots beta and beta + t_k e^{i angle}; critical points by rooting the
// derivative of the dense expansion. Throws RootOutsideDisk when a root has
// modulus above 1 + 1e-12, DegreeTooLarge past the dense cap.
PolySpec line_rooted(double beta, const std::vector<double>& offsets, double angle);

struct Lemma4Result {
  double d = 0.0;
  double dpb_modulus = 0.0;  // |P'(beta)| for monic P
  bool bound_applicable = false;  // d > (1 + beta) / 2
  bool holds = true;              // |P'(beta)| <= (1 + beta)^2 when applicable
};

// P = (z - beta) prod (z - z_i). Throws NotRealPolynomial unless the z_i are
// closed under conjugation, RootOutsideDisk if some |z_i| > 1 + 1e-12.
Lemma4Result lemma4_check(double beta, const std::array<std::complex<double>, 3>& other_roots);

// z^n - e^{it}, rotated so that beta = 1: P = (z^n - 1) / n.
PolySpec phelps_rodriguez(int n, double t = 0.0);

FamilyDescriptor describe_brs_star(int n);
FamilyDescriptor describe_circle_one_crit(int n, double beta, std::complex<double> zeta);
FamilyDescriptor describe_line_rooted(double beta, const std::vector<double>& offsets, double angle);
FamilyDescriptor describe_real_quartic(double beta, const std::array<std::complex<double>, 3>& other_roots);
FamilyDescriptor describe_phelps_rodriguez(int n, double t);

// Random members for property tests. Roots are uniform in the annulus
// min_modulus <= |z| <= 1 (the disk by default); real quartics take one real
// root and a conjugate pair or three real roots with equal probability.
struct RealQuartic {
  double beta = 0.0;
  std::array<std::complex<double>, 3> others;
};
RealQuartic sample_real_quartic(std::mt19937_64& rng, double min_modulus = 0.0);

struct LineSample {
  double beta = 0.0;
  double angle = 0.0;
  std::vector<double> offsets;
};
// Degree in [2, max_degree]; every root lies in the closed unit disk.
LineSample sample_line_rooted(std::mt19937_64& rng, int max_degree);

// Dense roots -> critical points of prod (z - root), as a spec with beta = roots[0].
PolySpec spec_from_roots(const std::vector<std::complex<double>>& roots);

}  // namespace sendov
