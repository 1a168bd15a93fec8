#include "sendov/double_double.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

namespace sendov {

namespace {

DoubleDouble pow10(int k) {
  DoubleDouble result(1.0);
  DoubleDouble base(10.0);
  int e = k < 0 ? -k : k;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return k < 0 ? DoubleDouble(1.0) / result : result;
}

DoubleDouble floor_dd(const DoubleDouble& x) {
  double hi = std::floor(x.hi());
  double lo = 0.0;
  if (hi == x.hi()) lo = std::floor(x.lo());
  return dd_detail::quick_two_sum(hi, lo);
}

}  // namespace

DoubleDouble DoubleDouble::parse(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }

  DoubleDouble mantissa(0.0);
  int significant = 0;
  int exponent10 = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.') {
      if (seen_point) throw std::invalid_argument("malformed decimal: " + std::string(text));
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) break;
    seen_digit = true;
    const int digit = ch - '0';
    if (significant == 0 && digit == 0) {
      if (seen_point) --exponent10;
      continue;
    }
    // Digits beyond 36 cannot affect a double-double value.
    if (significant < 36) {
      mantissa = mantissa * DoubleDouble(10.0) + DoubleDouble(digit);
      ++significant;
      if (seen_point) --exponent10;
    } else if (!seen_point) {
      ++exponent10;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal: " + std::string(text));

  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    int e = 0;
    const char* first = text.data() + i;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, e);
    if (ec != std::errc() || ptr == first) {
      throw std::invalid_argument("malformed exponent: " + std::string(text));
    }
    i = static_cast<std::size_t>(ptr - text.data());
    exponent10 += e;
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) throw std::invalid_argument("trailing characters: " + std::string(text));

  DoubleDouble value = mantissa;
  if (exponent10 > 0) {
    value *= pow10(exponent10);
  } else if (exponent10 < 0) {
    value /= pow10(-exponent10);
  }
  return negative ? -value : value;
}

std::string to_string(const DoubleDouble& x, int digits) {
  if (!std::isfinite(x.hi())) return std::isnan(x.hi()) ? "nan" : (x.hi() > 0 ? "inf" : "-inf");
  if (digits < 1) digits = 1;
  if (digits > 34) digits = 34;
  std::string out;
  DoubleDouble r = x;
  if (r.hi() < 0.0) {
    out.push_back('-');
    r = -r;
  }
  if (r.hi() == 0.0) {
    out += "0." + std::string(static_cast<std::size_t>(digits - 1), '0') + "e+00";
    return out;
  }

  int e = static_cast<int>(std::floor(std::log10(r.hi())));
  r = e >= 0 ? r / pow10(e) : r * pow10(-e);
  if (r.hi() >= 10.0) {
    r /= DoubleDouble(10.0);
    ++e;
  } else if (r.hi() < 1.0) {
    r *= DoubleDouble(10.0);
    --e;
  }

  std::string ds;
  for (int k = 0; k <= digits; ++k) {
    DoubleDouble f = floor_dd(r);
    int d = static_cast<int>(f.hi());
    if (d < 0) d = 0;
    if (d > 9) d = 9;
    ds.push_back(static_cast<char>('0' + d));
    r = (r - DoubleDouble(d)) * DoubleDouble(10.0);
  }
  // Round on the extra digit.
  const bool round_up = ds.back() >= '5';
  ds.pop_back();
  if (round_up) {
    int k = static_cast<int>(ds.size()) - 1;
    while (k >= 0 && ds[static_cast<std::size_t>(k)] == '9') {
      ds[static_cast<std::size_t>(k)] = '0';
      --k;
    }
    if (k >= 0) {
      ++ds[static_cast<std::size_t>(k)];
    } else {
      ds.insert(ds.begin(), '1');
      ds.pop_back();
      ++e;
    }
  }

  out.push_back(ds[0]);
  if (digits > 1) {
    out.push_back('.');
    out.append(ds, 1, std::string::npos);
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "e%c%02d", e < 0 ? '-' : '+', e < 0 ? -e : e);
  out += buf;
  return out;
}

std::string to_decimal(const DoubleDouble& x) {
  if (!std::isfinite(x.hi())) return to_string(x);
  if (x.hi() == 0.0) return "0";
  std::string s;
  for (int digits = 1; digits <= 34; ++digits) {
    s = to_string(x, digits);
    if (DoubleDouble::parse(s) == x) break;
  }
  const auto epos = s.find('e');
  std::string mant = s.substr(0, epos);
  const int e = std::stoi(s.substr(epos + 1));
  std::string sign;
  if (mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string digits;
  for (char c : mant) {
    if (c != '.') digits.push_back(c);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  const int len = static_cast<int>(digits.size());
  if (e < -7 || e > 20) {
    std::string out = sign + digits.substr(0, 1);
    if (len > 1) out += "." + digits.substr(1);
    return out + "E" + std::to_string(e);
  }
  if (e < 0) return sign + "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
  if (len <= e + 1) return sign + digits + std::string(static_cast<std::size_t>(e + 1 - len), '0');
  return sign + digits.substr(0, static_cast<std::size_t>(e + 1)) + "." +
         digits.substr(static_cast<std::size_t>(e + 1));
}

}  // namespace sendov
