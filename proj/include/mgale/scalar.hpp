#ifndef MGALE_SCALAR_HPP
#define MGALE_SCALAR_HPP

// Arithmetic substrate. Every algorithm in the library is a template over a
// scalar type S which is either `Rational` (exact, no rounding) or `double`.
// The two modes never mix: there are no implicit conversions between them.

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace mgale {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "exact";

  static Rational tolerance() { return Rational(0); }
  static Rational from_ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(Integer(num), Integer(den));
  }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }

  /// "p/q", or "p" when the denominator is one.
  static std::string format(const Rational& x) {
    const auto num = boost::multiprecision::numerator(x);
    const auto den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

  /// Accepts "p/q", integers, and finite decimals ("-0.25", "1e-3").
  static Rational parse(std::string_view text);
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";

  static double tolerance() { return 1e-9; }
  static double from_ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double(double x) { return x; }

  /// Shortest round-trip representation; stable across runs.
  static std::string format(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  }

  static double parse(std::string_view text);
};

template <typename S>
concept Scalar = requires { scalar_traits<S>::exact; };

template <Scalar S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <Scalar S>
S ratio(std::int64_t num, std::int64_t den = 1) {
  return scalar_traits<S>::from_ratio(num, den);
}

template <Scalar S>
double to_double(const S& x) {
  return scalar_traits<S>::to_double(x);
}

template <Scalar S>
std::string format_scalar(const S& x) {
  return scalar_traits<S>::format(x);
}

template <Scalar S>
S parse_scalar(std::string_view text) {
  return scalar_traits<S>::parse(text);
}

template <Scalar S>
S abs_value(const S& x) {
  return x < S(0) ? S(-x) : x;
}

template <Scalar S>
S positive_part(const S& x) {
  return x > S(0) ? x : S(0);
}

template <Scalar S>
S pow_uint(const S& base, unsigned exponent) {
  S result(1);
  S b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

// Comparisons used for "almost everywhere" statements: exact in rational mode,
// absolute tolerance 1e-9 in float mode.
template <Scalar S>
bool approx_eq(const S& a, const S& b) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return std::abs(a - b) <= scalar_traits<S>::tolerance();
  }
}

template <Scalar S>
bool approx_le(const S& a, const S& b) {
  if constexpr (is_exact_v<S>) {
    return a <= b;
  } else {
    return a <= b + scalar_traits<S>::tolerance();
  }
}

// ---------------------------------------------------------------------------

inline Rational scalar_traits<Rational>::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return fail();

  // Decimal integer text; leading zeros are dropped so GMP never reads octal.
  auto integer = [&](std::string_view t, bool allow_sign) -> Integer {
    bool neg = false;
    if (allow_sign && !t.empty() && (t.front() == '-' || t.front() == '+')) {
      neg = t.front() == '-';
      t.remove_prefix(1);
    }
    if (t.empty()) fail();
    for (char c : t)
      if (c < '0' || c > '9') fail();
    while (t.size() > 1 && t.front() == '0') t.remove_prefix(1);
    Integer v(std::string{t});
    return neg ? Integer(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = integer(text.substr(0, slash), true);
    Integer den = integer(text.substr(slash + 1), false);
    if (den == 0) return fail();
    return Rational(num, den);
  }

  // Decimal with optional exponent, converted without going through binary floating point.
  std::string_view mantissa = text;
  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    auto exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) return fail();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) --exponent;
    } else {
      return fail();
    }
  }
  if (digits.empty()) return fail();
  Rational value{integer(digits, false)};
  Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    value /= Rational(ten_pow);
  } else {
    value *= Rational(ten_pow);
  }
  return negative ? Rational(-value) : value;
}

inline double scalar_traits<double>::parse(std::string_view text) {
  if (text.find('/') != std::string_view::npos) {
    const Rational r = scalar_traits<Rational>::parse(text);
    return r.convert_to<double>();
  }
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace mgale

#endif  // MGALE_SCALAR_HPP
