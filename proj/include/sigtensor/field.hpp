// Coefficient fields for tensor sequences: exact rationals (GMP-backed) and
// IEEE double precision. Everything generic over the coefficient type goes
// through field_traits so the two kinds stay interchangeable.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sigtensor {

// Arbitrary-precision rational. Arithmetic is exact; values stay in lowest
// terms with a positive denominator as long as they are built through the
// helpers below or through mpq_class arithmetic on canonical operands.
using Rational = mpq_class;

enum class FieldKind { Rational, Float64 };

inline const char* to_string(FieldKind kind) {
  return kind == FieldKind::Rational ? "rational" : "float64";
}

template <typename T>
struct field_traits;

template <>
struct field_traits<Rational> {
  static constexpr FieldKind kind = FieldKind::Rational;
  static constexpr bool exact = true;
  static Rational ratio(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
};

template <>
struct field_traits<double> {
  static constexpr FieldKind kind = FieldKind::Float64;
  static constexpr bool exact = false;
  static double ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

template <typename T>
inline constexpr FieldKind field_kind_of = field_traits<T>::kind;

// Float comparisons always go through this: |a-b| <= abs_tol + rel_tol*max(|a|,|b|).
inline bool approx_equal_scalar(double a, double b, double rel_tol, double abs_tol) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= abs_tol + rel_tol * scale;
}

// Wire form of a rational: "p/q" in lowest terms with q > 0, or plain "p"
// when the value is an integer.
inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

// Accepts exactly the wire form: optional leading '-', digits, optional
// "/digits" (the denominator may also carry a sign). Rejects everything else.
inline Rational rational_from_string(const std::string& text) {
  const auto bad = [&]() -> std::invalid_argument {
    return std::invalid_argument("invalid rational literal: '" + text + "'");
  };
  if (text.empty()) throw bad();
  std::size_t pos = 0;
  const auto scan_integer = [&]() {
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t digits_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_begin) throw bad();
  };
  scan_integer();
  if (pos < text.size()) {
    if (text[pos] != '/') throw bad();
    ++pos;
    scan_integer();
    if (pos != text.size()) throw bad();
  }
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0) throw bad();
  if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
    throw std::invalid_argument("rational with zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace detail

}  // namespace sigtensor
