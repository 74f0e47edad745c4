// Copyright 2026 The ksbias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact integer and rational arithmetic shared by the counting code, plus a
// correctly rounded decimal renderer for exact rationals.

#ifndef KSBIAS_EXACT_HPP_
#define KSBIAS_EXACT_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ksbias/errors.hpp"

namespace ksbias {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& numerator, const BigInt& denominator) {
  return Rational(numerator, denominator);
}

inline BigInt factorial(unsigned k) {
  BigInt result = 1;
  for (unsigned i = 2; i <= k; ++i) result *= i;
  return result;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

// B(a+1, b+1) = a! b! / (a+b+1)!, the integral of x^a (1-x)^b over [0,1].
inline Rational beta_integral(unsigned a, unsigned b) {
  return make_rational(factorial(a) * factorial(b), factorial(a + b + 1));
}

// Integral of x^a (1-x)^b over [0, 1/2]. Uses the identity
// I_{1/2}(a+1, b+1) = P(Binomial(a+b+1, 1/2) >= a+1).
inline Rational lower_half_beta_integral(unsigned a, unsigned b) {
  const unsigned trials = a + b + 1;
  BigInt upper = 0;
  for (unsigned k = a + 1; k <= trials; ++k) upper += binomial(trials, k);
  return beta_integral(a, b) * make_rational(upper, BigInt(1) << trials);
}

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

// Exact rational value of a finite double.
inline Rational rational_from_double(double value) {
  require(std::isfinite(value), "non-finite value has no exact rational form");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // 53 bits of mantissa as an integer.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational result(scaled);
  if (exponent > 0) {
    result *= BigInt(1) << exponent;
  } else if (exponent < 0) {
    result /= BigInt(1) << (-exponent);
  }
  return result;
}

// Parses "p/q", an integer, or a plain decimal literal ("0.26", "1e-5") into an
// exact rational. Decimal literals are read as the decimal they spell, not as
// the nearest double.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw DomainError("malformed number '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) fail();
    return num / den;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  BigInt digits = 0;
  int scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (seen_point) --scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') fail();
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
      exp_negative = text[pos++] == '-';
    if (pos == text.size()) fail();
    int exp = 0;
    for (; pos < text.size(); ++pos) {
      if (text[pos] < '0' || text[pos] > '9' || exp > 100000) fail();
      exp = exp * 10 + (text[pos] - '0');
    }
    scale += exp_negative ? -exp : exp;
  }
  Rational result(digits);
  if (scale > 0) result *= boost::multiprecision::pow(BigInt(10), scale);
  if (scale < 0) result /= boost::multiprecision::pow(BigInt(10), -scale);
  return negative ? -result : result;
}

inline std::string to_fraction_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Renders an exact rational with `digits` significant digits, rounding half
// away from zero on the exact value. Layout follows printf's %g: scientific
// notation when the decimal exponent is below -4 or at least `digits`,
// trailing zeros stripped.
inline std::string to_decimal_string(const Rational& value, int digits = 6) {
  require(digits >= 1 && digits <= 100, "digits must be in [1, 100]");
  if (value == 0) return "0";
  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;
  const BigInt num = boost::multiprecision::numerator(magnitude);
  const BigInt den = boost::multiprecision::denominator(magnitude);

  // Decimal exponent: 10^e <= magnitude < 10^(e+1).
  int e = static_cast<int>(num.str().size()) - static_cast<int>(den.str().size());
  auto pow10 = [](int k) -> BigInt { return boost::multiprecision::pow(BigInt(10), k); };
  auto at_least_pow10 = [&](int k) {
    return k >= 0 ? num >= den * pow10(k) : num * pow10(-k) >= den;
  };
  while (!at_least_pow10(e)) --e;
  while (at_least_pow10(e + 1)) ++e;

  auto rounded_mantissa = [&](int exponent) -> BigInt {
    const int shift = digits - 1 - exponent;
    BigInt scaled_num = num;
    BigInt scaled_den = den;
    if (shift >= 0) {
      scaled_num *= pow10(shift);
    } else {
      scaled_den *= pow10(-shift);
    }
    BigInt q = scaled_num / scaled_den;
    const BigInt r = scaled_num - q * scaled_den;
    if (2 * r >= scaled_den) ++q;
    return q;
  };
  BigInt mantissa = rounded_mantissa(e);
  if (mantissa >= pow10(digits)) {
    ++e;
    mantissa = rounded_mantissa(e);
  }
  std::string mantissa_digits = mantissa.str();

  std::string out = negative ? "-" : "";
  if (e < -4 || e >= digits) {
    std::string frac = mantissa_digits.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out += mantissa_digits.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    const int abs_e = e < 0 ? -e : e;
    out += e < 0 ? "e-" : "e+";
    if (abs_e < 10) out += "0";
    out += std::to_string(abs_e);
    return out;
  }
  if (e >= 0) {
    std::string int_part = mantissa_digits.substr(0, e + 1);
    std::string frac = mantissa_digits.substr(e + 1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out += int_part;
    if (!frac.empty()) out += "." + frac;
    return out;
  }
  std::string frac = std::string(-e - 1, '0') + mantissa_digits;
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  return out + "0." + frac;
}

}  // namespace ksbias

#endif  // KSBIAS_EXACT_HPP_
