#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "baf/error.hpp"

namespace baf {

/// Exact arbitrary-precision rational. All durations, capacities and ratios
/// in the library use it; there is no floating-point path.
using Rational = mpq_class;

/// A non-negative amount of time. Non-negativity is checked where values
/// enter the model (Instance, FJob), not on every arithmetic result.
using Duration = Rational;

class RationalParseError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

inline mpz_class parse_integer(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

}  // namespace detail

/// Parses "7", "-3", "9/10" or "0.125" exactly. Exponent notation and
/// anything that looks like a binary float literal is rejected.
inline Rational parse_rational(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) {
      throw RationalParseError("malformed fraction '" + original + "'");
    }
    mpz_class d = detail::parse_integer(den);
    if (d == 0) throw RationalParseError("zero denominator in '" + original + "'");
    value = Rational(detail::parse_integer(num), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !detail::all_digits(whole)) || !detail::all_digits(frac)) {
      throw RationalParseError("malformed decimal '" + original + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : detail::parse_integer(whole);
    value = Rational(w * scale + detail::parse_integer(frac), scale);
  } else {
    if (!detail::all_digits(text)) {
      throw RationalParseError("malformed number '" + original + "'");
    }
    value = Rational(detail::parse_integer(text));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

/// num / den in canonical form; mpq_class's two-argument constructor does not
/// reduce, and GMP comparisons require reduced operands.
inline Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den) {
  return make_rational(mpz_class(num), mpz_class(den));
}

/// Canonical text: "3" for integers, "9/10" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Always "num/den", including "3/1".
inline std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Lossy conversion for display only.
inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

/// Smallest integer >= r.
inline mpz_class ceil(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

}  // namespace baf
