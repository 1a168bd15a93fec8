#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo of two binary64 values
// with |lo| <= ulp(hi)/2, giving about 31 significant decimal digits.

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sendov {

class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi_(x) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(int x) : hi_(static_cast<double>(x)) {}  // NOLINT

  // Assumes |lo| <= ulp(hi)/2 already holds.
  static constexpr DoubleDouble from_parts(double hi, double lo) {
    DoubleDouble r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }

  // Parses a decimal literal ("0.788188270312241", "-4.07186589509001E-7").
  // Throws std::invalid_argument on malformed input.
  static DoubleDouble parse(std::string_view text);

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  explicit constexpr operator double() const { return hi_ + lo_; }

  DoubleDouble operator-() const { return from_parts(-hi_, -lo_); }

  DoubleDouble& operator+=(const DoubleDouble& b);
  DoubleDouble& operator-=(const DoubleDouble& b) { return *this += -b; }
  DoubleDouble& operator*=(const DoubleDouble& b);
  DoubleDouble& operator/=(const DoubleDouble& b);

  friend DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) { return a += b; }
  friend DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) { return a -= b; }
  friend DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b) { return a *= b; }
  friend DoubleDouble operator/(DoubleDouble a, const DoubleDouble& b) { return a /= b; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return DoubleDouble::from_parts(s, (a - (s - bb)) + (b - bb));
}

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return DoubleDouble::from_parts(s, b - (s - a));
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return DoubleDouble::from_parts(p, std::fma(a, b, -p));
}

}  // namespace dd_detail

inline DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& b) {
  DoubleDouble s = dd_detail::two_sum(hi_, b.hi_);
  const DoubleDouble t = dd_detail::two_sum(lo_, b.lo_);
  double lo = s.lo() + t.hi();
  s = dd_detail::quick_two_sum(s.hi(), lo);
  lo = s.lo() + t.lo();
  *this = dd_detail::quick_two_sum(s.hi(), lo);
  return *this;
}

inline DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& b) {
  const DoubleDouble p = dd_detail::two_prod(hi_, b.hi_);
  const double lo = p.lo() + (hi_ * b.lo_ + lo_ * b.hi_);
  *this = dd_detail::quick_two_sum(p.hi(), lo);
  return *this;
}

inline DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& b) {
  const double q1 = hi_ / b.hi_;
  DoubleDouble r = *this - DoubleDouble(q1) * b;
  const double q2 = r.hi_ / b.hi_;
  r -= DoubleDouble(q2) * b;
  const double q3 = r.hi_ / b.hi_;
  *this = dd_detail::quick_two_sum(q1, q2) + DoubleDouble(q3);
  return *this;
}

// Binary64 overloads so generic code can call these unqualified for either field.
inline double to_double(double x) { return x; }
inline double abs(double x) { return std::fabs(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double ldexp(double x, int e) { return std::ldexp(x, e); }
inline bool isfinite(double x) { return std::isfinite(x); }

inline double to_double(const DoubleDouble& x) { return x.hi() + x.lo(); }

inline DoubleDouble abs(const DoubleDouble& x) { return x.hi() < 0.0 ? -x : x; }

inline DoubleDouble sqrt(const DoubleDouble& a) {
  if (a.hi() <= 0.0) return DoubleDouble(a.hi() == 0.0 ? 0.0 : std::nan(""));
  const double x = 1.0 / std::sqrt(a.hi());
  const double ax = a.hi() * x;
  const DoubleDouble ax_dd(ax);
  const double corr = (a - ax_dd * ax_dd).hi() * (x * 0.5);
  return dd_detail::two_sum(ax, corr);
}

inline DoubleDouble ldexp(const DoubleDouble& x, int e) {
  return DoubleDouble::from_parts(std::ldexp(x.hi(), e), std::ldexp(x.lo(), e));
}

inline bool isfinite(const DoubleDouble& x) { return std::isfinite(x.hi()); }

// Binary exponent of the leading part (very negative for zero); used for scaling only.
inline int ilogb_hi(double x) { return x == 0.0 ? -(1 << 20) : std::ilogb(x); }
inline int ilogb_hi(const DoubleDouble& x) { return ilogb_hi(x.hi()); }

// Scientific notation with `digits` significant digits, e.g. "7.88188270312241e-01".
std::string to_string(const DoubleDouble& x, int digits = 32);

// Fewest significant digits that parse back to exactly x. Plain notation for
// decimal exponents in [-7, 20], otherwise "1.5E-9" style.
std::string to_decimal(const DoubleDouble& x);

}  // namespace sendov
