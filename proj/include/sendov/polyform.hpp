#pragma once

// Polynomials in integral form
//
//   P(z) = \int_beta^z prod_i (w - zeta_i)^{m_i} dw,
//
// i.e. P' is the monic product over the critical points and P(beta) = 0.
// Degree n = 1 + sum m_i.

#include <complex>
#include <cstdint>
#include <vector>

#include "sendov/complex.hpp"
#include "sendov/double_double.hpp"

namespace sendov {

enum class Precision {
  automatic,      // binary64 below kExtendedPrecisionDegree, double-double above
  binary64,
  double_double,
};

inline constexpr int kExtendedPrecisionDegree = 300;
inline constexpr int kDenseDegreeCap = 64;

struct CriticalPoint {
  ComplexDD zeta;
  int multiplicity = 1;

  CriticalPoint(ComplexDD z, int m) : zeta(z), multiplicity(m) {}
  CriticalPoint(std::complex<double> z, int m) : zeta(z), multiplicity(m) {}

  std::complex<double> value() const { return zeta.to_std(); }
};

class PolySpec {
 public:
  // Throws InvalidSpec unless beta in [0, 1], crits nonempty and every m >= 1.
  PolySpec(DoubleDouble beta, std::vector<CriticalPoint> crits);

  const DoubleDouble& beta() const { return beta_; }
  double beta_value() const { return to_double(beta_); }
  const std::vector<CriticalPoint>& critical_points() const { return crits_; }
  int degree() const { return degree_; }

  // Same polynomial shape with beta and every critical point divided by s.
  // The roots of the result are the roots of this polynomial divided by s.
  PolySpec divided_by(const DoubleDouble& s) const;

 private:
  DoubleDouble beta_;
  std::vector<CriticalPoint> crits_;
  int degree_ = 0;
};

inline int degree(const PolySpec& spec) { return spec.degree(); }

Precision resolve_precision(Precision requested, int degree);

// Dense coefficients, ascending degree order.
struct CoefficientPoly {
  std::vector<std::complex<double>> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::complex<double> operator()(std::complex<double> z) const;
  CoefficientPoly derivative() const;
};

// prod_i (z - zeta_i)^{m_i}, accumulated with a separate binary exponent so it
// is safe at multiplicities in the thousands.
std::complex<double> eval_derivative(const PolySpec& spec, std::complex<double> z);

// P(z) by adaptive Gauss-Legendre quadrature of P' along the segment [beta, z].
// Throws QuadratureNoConvergence if bisection exceeds its depth cap.
std::complex<double> eval(const PolySpec& spec, std::complex<double> z,
                          Precision precision = Precision::automatic);

// Throws DegreeTooLarge when degree(spec) > cap.
CoefficientPoly expand_coefficients(const PolySpec& spec, int cap = kDenseDegreeCap);

struct QuadratureOptions {
  double rel_tol = 0.0;  // 0 selects 1e-12 (binary64) or 1e-26 (double-double)
  double abs_tol = 1e-300;
  int max_depth = 40;
};

// Evaluation kernel over a fixed real field. Holds the critical points
// converted once, so repeated evaluation in root finders is cheap.
template <class Real>
class PolyEvaluator {
 public:
  explicit PolyEvaluator(const PolySpec& spec, QuadratureOptions options = {});

  const Complex<Real>& beta() const { return beta_; }
  int degree() const { return degree_; }
  double rel_tol() const { return options_.rel_tol; }

  Scaled<Real> derivative_scaled(const Complex<Real>& z) const;
  Complex<Real> derivative(const Complex<Real>& z) const { return derivative_scaled(z).value(); }

  struct Integral {
    Complex<Real> value;
    double mass = 0.0;  // \int |P'| |dw|, the scale of the absolute error
  };

  // \int_from^to P'(w) dw along the straight segment.
  Integral integrate_with_mass(const Complex<Real>& from, const Complex<Real>& to) const;
  Complex<Real> integrate(const Complex<Real>& from, const Complex<Real>& to) const {
    return integrate_with_mass(from, to).value;
  }

  Complex<Real> operator()(const Complex<Real>& z) const { return integrate(beta_, z); }

 private:
  struct Panel;
  Panel gauss_panel(const Complex<Real>& a, const Complex<Real>& h, const Real& t0,
                    const Real& t1) const;
  Panel adapt(const Complex<Real>& a, const Complex<Real>& h, const Real& t0, const Real& t1,
              const Panel& whole, const Panel& scale, int depth) const;

  std::vector<Complex<Real>> zeta_;
  std::vector<int> mult_;
  Complex<Real> beta_;
  int degree_ = 0;
  QuadratureOptions options_;
};

extern template class PolyEvaluator<double>;
extern template class PolyEvaluator<DoubleDouble>;

// Dense coefficients over Real (ascending), normalised so that P(beta) = 0.
template <class Real>
std::vector<Complex<Real>> expand_coefficients_as(const PolySpec& spec);

extern template std::vector<Complex<double>> expand_coefficients_as<double>(const PolySpec&);
extern template std::vector<Complex<DoubleDouble>> expand_coefficients_as<DoubleDouble>(
    const PolySpec&);

}  // namespace sendov
