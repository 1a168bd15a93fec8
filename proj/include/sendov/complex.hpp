#pragma once

// Minimal complex number over an arbitrary real field (double or DoubleDouble).
// std::complex is only specified for the built-in floating types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "sendov/double_double.hpp"

namespace sendov {

template <class Real>
struct Complex {
  Real re{};
  Real im{};

  constexpr Complex() = default;
  constexpr Complex(Real r, Real i = Real{}) : re(r), im(i) {}  // NOLINT(google-explicit-constructor)
  explicit Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  template <class Other>
  static Complex from(const Complex<Other>& z) {
    if constexpr (std::is_same_v<Real, double>) {
      return {to_double(z.re), to_double(z.im)};
    } else {
      return {Real(z.re), Real(z.im)};
    }
  }

  std::complex<double> to_std() const { return {to_double(re), to_double(im)}; }

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  Complex& operator-=(const Complex& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  Complex& operator*=(const Complex& b) {
    const Real r = re * b.re - im * b.im;
    im = re * b.im + im * b.re;
    re = r;
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
  Complex& operator/=(const Complex& b) {
    // Scale the divisor to unit magnitude first so the norm cannot overflow.
    const int e = std::max(ilogb_hi(b.re), ilogb_hi(b.im));
    const Complex bs{ldexp(b.re, -e), ldexp(b.im, -e)};
    const Real den = bs.re * bs.re + bs.im * bs.im;
    const Real r = (re * bs.re + im * bs.im) / den;
    im = (im * bs.re - re * bs.im) / den;
    re = r;
    re = ldexp(re, -e);
    im = ldexp(im, -e);
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const Real& s) { return a *= s; }
  friend Complex operator*(const Real& s, Complex a) { return a *= s; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  friend Complex conj(const Complex& z) { return {z.re, -z.im}; }
  friend Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
  friend Real abs(const Complex& z) {
    const int e = std::max(ilogb_hi(z.re), ilogb_hi(z.im));
    const Real a = ldexp(z.re, -e);
    const Real b = ldexp(z.im, -e);
    return ldexp(sqrt(a * a + b * b), e);
  }
  // Argument in binary64; only used for phase bookkeeping.
  friend double arg(const Complex& z) { return std::atan2(to_double(z.im), to_double(z.re)); }
  friend Complex ldexp(const Complex& z, int e) { return {ldexp(z.re, e), ldexp(z.im, e)}; }
  friend bool is_zero(const Complex& z) { return z.re == Real{} && z.im == Real{}; }
};

using ComplexDD = Complex<DoubleDouble>;

// A complex value m * 2^exp2 with |m| kept near 1, so that products of
// thousands of factors neither overflow nor underflow.
template <class Real>
struct Scaled {
  Complex<Real> mant{};
  std::int64_t exp2 = 0;

  static Scaled from(const Complex<Real>& z) {
    Scaled s{z, 0};
    s.normalize();
    return s;
  }

  void normalize() {
    if (is_zero(mant)) {
      exp2 = 0;
      return;
    }
    const int e = std::max(ilogb_hi(mant.re), ilogb_hi(mant.im));
    mant = ldexp(mant, -e);
    exp2 += e;
  }

  Scaled& operator*=(const Scaled& b) {
    mant *= b.mant;
    exp2 += b.exp2;
    normalize();
    return *this;
  }
  friend Scaled operator*(Scaled a, const Scaled& b) { return a *= b; }

  // Converts to a plain value; overflows to inf and underflows to 0.
  Complex<Real> value() const {
    if (is_zero(mant)) return {};
    if (exp2 > 4000) return ldexp(mant, 4000);
    if (exp2 < -4000) return {};
    return ldexp(mant, static_cast<int>(exp2));
  }
};

template <class Real>
Scaled<Real> scaled_pow(const Complex<Real>& base, int m) {
  Scaled<Real> result{Complex<Real>(Real(1.0)), 0};
  Scaled<Real> b = Scaled<Real>::from(base);
  if (is_zero(b.mant)) return m == 0 ? result : Scaled<Real>{};
  while (m > 0) {
    if (m & 1) result *= b;
    m >>= 1;
    if (m > 0) b *= b;
  }
  return result;
}

}  // namespace sendov
