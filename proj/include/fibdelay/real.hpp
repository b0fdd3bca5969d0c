#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "fibdelay/bigint.hpp"

namespace fibdelay {

/// Arbitrary-precision real backed by an MPFR value that owns its precision.
///
/// There is no process-wide default precision: every value is created with
/// an explicit bit count, and binary operations round to the larger of the
/// two operand precisions. This keeps concurrent computations at different
/// precisions independent of each other.
class Real {
 public:
  Real() {
    mpfr_init2(value_, 64);
    mpfr_set_zero(value_, 1);
  }

  Real(long v, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, v, MPFR_RNDN);
  }

  Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }

  Real& operator=(const Real& other) {
    if (this != &other) {
      if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      }
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }

  ~Real() { mpfr_clear(value_); }

  static Real with_precision(mpfr_prec_t bits) {
    Real r;
    mpfr_set_prec(r.value_, bits);
    mpfr_set_zero(r.value_, 1);
    return r;
  }

  static Real from_integer(const Integer& v, mpfr_prec_t bits) {
    Real r = with_precision(bits);
    mpfr_set_z(r.value_, v.get_mpz_t(), MPFR_RNDN);
    return r;
  }

  static Real from_rational(const Rational& v, mpfr_prec_t bits) {
    Real r = with_precision(bits);
    mpfr_set_q(r.value_, v.get_mpq_t(), MPFR_RNDN);
    return r;
  }

  /// Decimal literal such as "0.72212441830311284114" or "-1.5e-3".
  static Real parse(std::string_view text, mpfr_prec_t bits) {
    Real r = with_precision(bits);
    const std::string s(text);
    if (s.empty() || mpfr_set_str(r.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
      throw std::invalid_argument("malformed real literal: " + s);
    }
    return r;
  }

  /// 10^exponent at the given precision.
  static Real power_of_ten(long exponent, mpfr_prec_t bits) {
    Real r = with_precision(bits);
    mpfr_ui_pow_ui(r.value_, 10, static_cast<unsigned long>(std::labs(exponent)), MPFR_RNDN);
    if (exponent < 0) mpfr_ui_div(r.value_, 1, r.value_, MPFR_RNDN);
    return r;
  }

  static Real pi(mpfr_prec_t bits) {
    Real r = with_precision(bits);
    mpfr_const_pi(r.value_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  int sign() const noexcept { return mpfr_sgn(value_); }
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }

  Real operator-() const {
    Real r = with_precision(precision());
    mpfr_neg(r.value_, value_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { return *this = *this + o; }
  Real& operator-=(const Real& o) { return *this = *this - o; }
  Real& operator*=(const Real& o) { return *this = *this * o; }
  Real& operator/=(const Real& o) { return *this = *this / o; }

#define FIBDELAY_REAL_BINARY(op, fn, fn_si, si_fn)                             \
  friend Real operator op(const Real& a, const Real& b) {                      \
    Real r = with_precision(std::max(a.precision(), b.precision()));           \
    fn(r.value_, a.value_, b.value_, MPFR_RNDN);                               \
    return r;                                                                  \
  }                                                                            \
  friend Real operator op(const Real& a, long b) {                             \
    Real r = with_precision(a.precision());                                    \
    fn_si(r.value_, a.value_, b, MPFR_RNDN);                                   \
    return r;                                                                  \
  }                                                                            \
  friend Real operator op(long a, const Real& b) {                             \
    Real r = with_precision(b.precision());                                    \
    si_fn(r.value_, a, b.value_, MPFR_RNDN);                                   \
    return r;                                                                  \
  }

  FIBDELAY_REAL_BINARY(+, mpfr_add, mpfr_add_si, si_add)
  FIBDELAY_REAL_BINARY(-, mpfr_sub, mpfr_sub_si, mpfr_si_sub)
  FIBDELAY_REAL_BINARY(*, mpfr_mul, mpfr_mul_si, si_mul)
  FIBDELAY_REAL_BINARY(/, mpfr_div, mpfr_div_si, mpfr_si_div)
#undef FIBDELAY_REAL_BINARY

  friend int compare(const Real& a, const Real& b) noexcept { return mpfr_cmp(a.value_, b.value_); }
  friend bool operator==(const Real& a, const Real& b) noexcept { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const Real& a, const Real& b) noexcept { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) noexcept { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) noexcept { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) noexcept { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }

 private:
  // mpfr lacks the commutative si-first forms; route them through the other order.
  static int si_add(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t rnd) { return mpfr_add_si(r, b, a, rnd); }
  static int si_mul(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t rnd) { return mpfr_mul_si(r, b, a, rnd); }

  mpfr_t value_;
};

namespace detail {

template <class Fn>
Real apply_unary(const Real& x, Fn fn) {
  Real r = Real::with_precision(x.precision());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace detail

inline Real sqrt(const Real& x) { return detail::apply_unary(x, mpfr_sqrt); }
inline Real cbrt(const Real& x) { return detail::apply_unary(x, mpfr_cbrt); }
inline Real log(const Real& x) { return detail::apply_unary(x, mpfr_log); }
inline Real exp(const Real& x) { return detail::apply_unary(x, mpfr_exp); }
inline Real sin(const Real& x) { return detail::apply_unary(x, mpfr_sin); }
inline Real cos(const Real& x) { return detail::apply_unary(x, mpfr_cos); }
inline Real abs(const Real& x) { return detail::apply_unary(x, mpfr_abs); }
inline Real log10(const Real& x) { return detail::apply_unary(x, mpfr_log10); }

inline Real pow(const Real& x, unsigned long n) {
  Real r = Real::with_precision(x.precision());
  mpfr_pow_ui(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

inline Real hypot(const Real& x, const Real& y) {
  Real r = Real::with_precision(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

inline Real atan2(const Real& y, const Real& x) {
  Real r = Real::with_precision(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

/// Nearest integer, ties rounded away from zero.
inline Integer round_half_away(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_round(r.get(), x.get());
  Integer z;
  mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
  return z;
}

inline Integer floor_to_integer(const Real& x) {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDD);
  return z;
}

/// Decimal rendering with `digits` significant digits, correctly rounded.
/// Fixed notation for moderate magnitudes, otherwise d.ddd...e<exp>.
inline std::string to_string(const Real& x, int digits) {
  if (mpfr_nan_p(x.get())) return "nan";
  if (mpfr_inf_p(x.get())) return x.sign() < 0 ? "-inf" : "inf";
  if (x.is_zero()) return "0";
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(digits), x.get(), MPFR_RNDN);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // value = 0.mantissa * 10^exponent
  const long e = static_cast<long>(exponent);
  const long n = static_cast<long>(mantissa.size());
  if (e > 0 && e <= n) {
    std::string out = mantissa.substr(0, static_cast<size_t>(e));
    if (e < n) out += "." + mantissa.substr(static_cast<size_t>(e));
    return sign + out;
  }
  if (e <= 0 && e > -6) {
    return sign + "0." + std::string(static_cast<size_t>(-e), '0') + mantissa;
  }
  std::string out = mantissa.substr(0, 1);
  if (n > 1) out += "." + mantissa.substr(1);
  return sign + out + "e" + std::to_string(e - 1);
}

inline std::ostream& operator<<(std::ostream& os, const Real& x) { return os << to_string(x, 20); }

/// Complex value as a pair of Reals.
struct Complex {
  Real re;
  Real im;

  Complex conj() const { return {re, -im}; }
  Real modulus() const { return hypot(re, im); }
  Real argument() const { return atan2(im, re); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Real& s, const Complex& z) { return {s * z.re, s * z.im}; }
  friend Complex operator*(const Complex& z, const Real& s) { return s * z; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const Real denom = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / denom, (a.im * b.re - a.re * b.im) / denom};
  }
  friend Complex operator+(const Complex& a, const Real& s) { return {a.re + s, a.im}; }
  friend Complex operator-(const Complex& a, const Real& s) { return {a.re - s, a.im}; }
};

inline Complex pow(Complex base, unsigned long n) {
  Complex result{Real(1, base.re.precision()), Real(0, base.re.precision())};
  while (n != 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return result;
}

/// Requested decimal precision for a computation.
///
/// Internals carry kGuardDigits extra digits; the delivered accuracy of
/// every derived value is tolerance() = 10^(5 - digits).
class PrecisionContext {
 public:
  static constexpr int kMinDigits = 20;
  static constexpr int kGuardDigits = 10;

  explicit PrecisionContext(int digits) : digits_(digits) {
    if (digits < kMinDigits) {
      throw std::invalid_argument("precision must be at least " + std::to_string(kMinDigits) +
                                  " digits, got " + std::to_string(digits));
    }
  }

  int digits() const noexcept { return digits_; }
  int working_digits() const noexcept { return digits_ + kGuardDigits; }

  mpfr_prec_t bits() const noexcept {
    return static_cast<mpfr_prec_t>(std::ceil(working_digits() * 3.321928094887362)) + 8;
  }

  Real real(long v) const { return Real(v, bits()); }
  Real ratio(long numerator, long denominator) const { return real(numerator) / denominator; }
  Real parse(std::string_view text) const { return Real::parse(text, bits()); }
  Real from(const Integer& v) const { return Real::from_integer(v, bits()); }
  Real from(const Rational& v) const { return Real::from_rational(v, bits()); }
  Real tolerance() const { return Real::power_of_ten(5 - digits_, bits()); }

  std::string format(const Real& x) const { return to_string(x, digits_); }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int digits_;
};

}  // namespace fibdelay
