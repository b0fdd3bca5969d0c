#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fibdelay/bigint.hpp"

namespace fibdelay {

/// The two families the intertwining analysis compares.
enum class Family { F, G };

inline const char* family_name(Family family) { return family == Family::F ? "F" : "G"; }

/// Two-term delayed recurrence a(n) = a(n-p) + a(n-q) with q > p >= 1 and
/// initial values a(0..q-1).
///
/// Index convention throughout the library is the shifted one with
/// F(0) = F(1) = 1, so F(n) here is the usual Fib(n+1).
struct RecurrenceSpec {
  unsigned p = 1;
  unsigned q = 2;
  std::vector<Rational> initial;

  void validate() const {
    if (p < 1) throw std::invalid_argument("recurrence offset p must be >= 1");
    if (q <= p) throw std::invalid_argument("recurrence offsets need q > p");
    if (initial.size() != q) {
      throw std::invalid_argument("recurrence needs exactly q = " + std::to_string(q) +
                                  " initial values, got " + std::to_string(initial.size()));
    }
  }

  bool is_integral() const {
    for (const auto& v : initial) {
      if (!fibdelay::is_integral(v)) return false;
    }
    return true;
  }

  /// F(n) = F(n-1) + F(n-2), F(0) = F(1) = 1.
  static RecurrenceSpec fibonacci() { return {1, 2, {1, 1}}; }

  /// G(n) = G(n-2) + G(n-3), G(0) = G(1) = G(2) = 1.
  static RecurrenceSpec gibonacci() { return {2, 3, {1, 1, 1}}; }

  /// F^(ell)(n) = F^(ell)(n-1) + F^(ell)(n-ell-1) with ell+1 leading ones.
  static RecurrenceSpec higher_fibonacci(unsigned ell) {
    if (ell < 1) throw std::invalid_argument("higher Fibonacci order must be >= 1");
    return {1, ell + 1, std::vector<Rational>(ell + 1, Rational(1))};
  }

  /// H(n) = H(n-3) + H(n-4). No canonical initialization exists; defaults to ones.
  static RecurrenceSpec double_delay(std::vector<Rational> initial = {1, 1, 1, 1}) {
    RecurrenceSpec spec{3, 4, std::move(initial)};
    spec.validate();
    return spec;
  }

  /// G(a): G(0) = G(2) = 1, G(1) = a.
  static RecurrenceSpec parametrized_gibonacci(const Rational& a) { return {2, 3, {1, a, 1}}; }

  static RecurrenceSpec of(Family family) { return family == Family::F ? fibonacci() : gibonacci(); }
};

/// Rolling O(q) window over a recurrence, positioned at one index and
/// advanced forward one step at a time. Negative indices are reached by
/// the exact rearrangement a(n-q) = a(n) - a(n-p).
///
/// Value is Integer for integral specs or Rational in general.
template <class Value>
class RecurrenceStream {
  static_assert(std::is_same_v<Value, Integer> || std::is_same_v<Value, Rational>);

 public:
  RecurrenceStream(const RecurrenceSpec& spec, std::int64_t start) : p_(spec.p), q_(spec.q) {
    spec.validate();
    for (const auto& v : spec.initial) window_.push_back(convert(v));
    if constexpr (std::is_same_v<Value, Rational>) integral_ = spec.is_integral();
    while (low_ > start) step_back();
    while (low_ + static_cast<std::int64_t>(q_) - 1 < start) step_forward();
    index_ = start;
  }

  std::int64_t index() const noexcept { return index_; }
  const Value& value() const { return window_[static_cast<std::size_t>(index_ - low_)]; }

  void advance() {
    if (index_ == low_ + static_cast<std::int64_t>(q_) - 1) step_forward();
    ++index_;
  }

 private:
  static Value convert(const Rational& v) {
    if constexpr (std::is_same_v<Value, Integer>) {
      if (!is_integral(v)) {
        throw std::invalid_argument("integer stream needs integral initial values, got " + to_string(v));
      }
      return Integer(v.get_num());
    } else {
      return v;
    }
  }

  void check(const Value& v) const {
    if constexpr (std::is_same_v<Value, Rational>) {
      assert(!integral_ || v.get_den() == 1);
    }
    (void)v;
  }

  void step_forward() {
    Value next = window_[q_ - p_] + window_[0];
    check(next);
    window_.pop_front();
    window_.push_back(std::move(next));
    ++low_;
  }

  void step_back() {
    Value prev = window_[q_ - 1] - window_[q_ - 1 - p_];
    check(prev);
    window_.pop_back();
    window_.push_front(std::move(prev));
    --low_;
  }

  unsigned p_;
  unsigned q_;
  std::deque<Value> window_;
  std::int64_t low_ = 0;  // index of window_.front()
  std::int64_t index_ = 0;
  bool integral_ = false;
};

/// Exact value of the recurrence at any integer index.
inline Rational term(const RecurrenceSpec& spec, std::int64_t n) {
  return RecurrenceStream<Rational>(spec, n).value();
}

/// term() for integral specs, without rational overhead.
inline Integer term_integer(const RecurrenceSpec& spec, std::int64_t n) {
  return RecurrenceStream<Integer>(spec, n).value();
}

/// Terms from..to inclusive, in one pass.
template <class Value = Rational>
std::vector<Value> stream(const RecurrenceSpec& spec, std::int64_t from, std::int64_t to) {
  if (from > to) {
    throw std::invalid_argument("stream range is empty: from " + std::to_string(from) + " > to " +
                                std::to_string(to));
  }
  RecurrenceStream<Value> s(spec, from);
  std::vector<Value> out;
  out.reserve(static_cast<std::size_t>(to - from + 1));
  for (;;) {
    out.push_back(s.value());
    if (s.index() == to) break;
    s.advance();
  }
  return out;
}

/// G(n) for the initialization G(0) = G(2) = 1, G(1) = a.
inline Rational param_gibonacci(const Rational& a, std::int64_t n) {
  return term(RecurrenceSpec::parametrized_gibonacci(a), n);
}

}  // namespace fibdelay
