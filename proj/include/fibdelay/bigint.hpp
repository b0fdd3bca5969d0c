#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibdelay {

// Exact integers and rationals. mpq_class arithmetic keeps values canonical
// (lowest terms, positive denominator) after every operation.
using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& value) { return value.get_str(10); }

/// "p" for integral values, "p/q" otherwise.
inline std::string to_string(const Rational& value) { return value.get_str(10); }

inline bool is_integral(const Rational& value) { return value.get_den() == 1; }

/// Parses "p", "-p", "p/q" or a finite decimal such as "0.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    if (s.find('/') != std::string::npos) {
      throw std::invalid_argument("malformed rational: " + s);
    }
    const std::string fraction = s.substr(dot + 1);
    std::string digits = s.substr(0, dot) + fraction;
    Integer numerator;
    if (digits.empty() || digits == "-" || numerator.set_str(digits, 10) != 0) {
      throw std::invalid_argument("malformed rational: " + s);
    }
    Integer denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, fraction.size());
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
  }
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw std::invalid_argument("malformed rational: " + s);
  }
  r.canonicalize();
  return r;
}

}  // namespace fibdelay
