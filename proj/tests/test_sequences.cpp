#include <gtest/gtest.h>

#include <vector>

#include "fibdelay/sequences.hpp"

using namespace fibdelay;

namespace {

// Plain forward iteration, independent of the rolling-window stream.
std::vector<Integer> naive_forward(unsigned p, unsigned q, std::vector<Integer> values, std::size_t count) {
  while (values.size() < count) {
    const std::size_t n = values.size();
    values.push_back(values[n - p] + values[n - q]);
  }
  values.resize(count);
  return values;
}

}  // namespace

TEST(Sequences, TabulatedTerms) {
  EXPECT_EQ(term(RecurrenceSpec::fibonacci(), 6), 13);
  EXPECT_EQ(term(RecurrenceSpec::gibonacci(), 23), 465);
  EXPECT_EQ(term(RecurrenceSpec::gibonacci(), -1), 0);
  EXPECT_EQ(term(RecurrenceSpec::double_delay(), 10), 5);
}

TEST(Sequences, StreamExamples) {
  const auto g = stream(RecurrenceSpec::gibonacci(), 3, 8);
  EXPECT_EQ(g, (std::vector<Rational>{2, 2, 3, 4, 5, 7}));
  EXPECT_EQ(stream(RecurrenceSpec::fibonacci(), 0, 1), (std::vector<Rational>{1, 1}));
  EXPECT_EQ(stream(RecurrenceSpec::gibonacci(), -1, 2), (std::vector<Rational>{0, 1, 1, 1}));
  EXPECT_EQ(stream(RecurrenceSpec::fibonacci(), 0, 0), (std::vector<Rational>{1}));
}

TEST(Sequences, StreamRejectsEmptyRange) {
  EXPECT_THROW(stream(RecurrenceSpec::fibonacci(), 5, 4), std::invalid_argument);
}

TEST(Sequences, InvalidSpecs) {
  EXPECT_THROW(term(RecurrenceSpec{2, 2, {1, 1}}, 3), std::invalid_argument);
  EXPECT_THROW(term(RecurrenceSpec{0, 2, {1, 1}}, 3), std::invalid_argument);
  EXPECT_THROW(term(RecurrenceSpec{1, 3, {1, 1}}, 3), std::invalid_argument);
  EXPECT_THROW(RecurrenceSpec::higher_fibonacci(0), std::invalid_argument);
  EXPECT_THROW(RecurrenceSpec::double_delay({1, 2}), std::invalid_argument);
  EXPECT_THROW(term_integer(RecurrenceSpec::parametrized_gibonacci(Rational(1, 2)), 4), std::invalid_argument);
}

TEST(Sequences, StreamMatchesNaiveIteration) {
  const auto fib = naive_forward(1, 2, {1, 1}, 301);
  const auto gib = naive_forward(2, 3, {1, 1, 1}, 301);
  const auto s_fib = stream<Integer>(RecurrenceSpec::fibonacci(), 0, 300);
  const auto s_gib = stream<Integer>(RecurrenceSpec::gibonacci(), 0, 300);
  EXPECT_EQ(s_fib, fib);
  EXPECT_EQ(s_gib, gib);
  EXPECT_EQ(term_integer(RecurrenceSpec::gibonacci(), 300), gib[300]);
}

TEST(Sequences, RecurrenceClosureIncludingNegativeIndices) {
  for (const auto& spec : {RecurrenceSpec::fibonacci(), RecurrenceSpec::gibonacci(), RecurrenceSpec::double_delay(),
                           RecurrenceSpec::higher_fibonacci(3)}) {
    const auto v = stream(spec, -60, 200);
    for (std::size_t i = spec.q; i < v.size(); ++i) {
      ASSERT_EQ(v[i], v[i - spec.p] + v[i - spec.q]) << "at offset " << i;
    }
  }
}

TEST(Sequences, BackwardThenForwardRestoresInitials) {
  const auto spec = RecurrenceSpec::double_delay({3, -1, 4, Rational(5, 9)});
  RecurrenceStream<Rational> s(spec, -40);
  while (s.index() < 0) s.advance();
  for (std::size_t i = 0; i < spec.q; ++i, s.advance()) EXPECT_EQ(s.value(), spec.initial[i]);
}

TEST(Sequences, ParametrizedFamily) {
  EXPECT_EQ(param_gibonacci(2, 8), 10);   // 4 + 3a
  EXPECT_EQ(param_gibonacci(0, 6), 2);    // 2 + 2a
  EXPECT_EQ(param_gibonacci(Rational(1, 3), 7), Rational(11, 3));  // 3 + 2a
  for (int n = -10; n <= 60; ++n) {
    EXPECT_EQ(param_gibonacci(1, n), term(RecurrenceSpec::gibonacci(), n));
  }
}

TEST(Sequences, HigherOrderOneIsFibonacci) {
  EXPECT_EQ(stream(RecurrenceSpec::higher_fibonacci(1), 0, 200), stream(RecurrenceSpec::fibonacci(), 0, 200));
}

TEST(Sequences, GibonacciMonotone) {
  RecurrenceStream<Integer> s(RecurrenceSpec::gibonacci(), 0);
  Integer previous = s.value();
  for (s.advance(); s.index() <= 10'000; s.advance()) {
    if (s.index() >= 5) {
      ASSERT_GT(s.value(), previous) << s.index();
    } else {
      ASSERT_GE(s.value(), previous) << s.index();
    }
    previous = s.value();
  }
}

TEST(Sequences, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), -4);
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}
