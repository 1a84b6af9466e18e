#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace superweil {

/// Exact scalar used for algebra structure, morphisms and polynomial evaluation.
using Rational = mpq_class;

/// Customisation point for the coefficient field of algebra elements.
///
/// Two modes ship with the library: `Rational` (exact, used for every axiom
/// check) and `double` (used when analytic coefficient functions force
/// floating-point evaluation). `Expr` provides a third, symbolic, mode in
/// expr.hpp.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_rational(const Rational& r) { return r.get_d(); }
  static bool is_zero(double v) { return v == 0.0; }
  static double magnitude(double v) { return std::abs(v); }
  static double to_double(double v) { return v; }

  /// Shortest representation that round-trips.
  static std::string to_string(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static double magnitude(const Rational& v) { return std::abs(v.get_d()); }
  static double to_double(const Rational& v) { return v.get_d(); }
  static std::string to_string(const Rational& v) { return v.get_str(); }
};

/// Exact conversion; every finite double is a dyadic rational.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value has no rational representation");
  Rational r(v);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "3", "-3/4", "+2", "1.25", "-0.5". Returns false on malformed input.
inline bool parse_rational(std::string_view text, Rational& out) {
  if (text.empty()) return false;
  std::string s(text);
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  if (body.empty()) return false;
  auto all_digits = [](std::string_view v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return false;
    mpz_class d(den, 10);
    if (d == 0) return false;
    value = Rational(mpz_class(num, 10), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp))) return false;
    mpz_class den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    value = Rational(mpz_class(ip + fp, 10), den);
  } else {
    if (!all_digits(body)) return false;
    value = Rational(mpz_class(body, 10));
  }
  value.canonicalize();
  out = negative ? Rational(-value) : value;
  return true;
}

/// |a - b| <= tol * max(1, |a|, |b|). Used for all float-mode comparisons.
inline bool approx_equal(double a, double b, double tol = 1e-9) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace superweil
