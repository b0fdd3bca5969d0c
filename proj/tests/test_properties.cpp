#include <gtest/gtest.h>

#include <random>

#include "fibdelay/fibdelay.hpp"

using namespace fibdelay;

namespace {

constexpr std::uint32_t kSeed = 20240611;

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 97);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Properties, LinearityInTheMiddleInitial) {
  std::mt19937 rng(kSeed);
  const auto g = stream(RecurrenceSpec::gibonacci(), 0, 200);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational a = random_rational(rng);
    const auto ga = stream(RecurrenceSpec::parametrized_gibonacci(a), 0, 200);
    for (std::size_t n = 3; n <= 200; ++n) {
      ASSERT_EQ(ga[n], g[n - 2] + a * g[n - 3]) << "a=" << to_string(a) << " n=" << n;
    }
    ASSERT_EQ(param_gibonacci(a, 200), ga[200]);
  }
}

TEST(Properties, AlignmentGapDecays) {
  const PrecisionContext ctx(30);
  const Real ratio = log_ratio(ctx).ratio;
  RecurrenceStream<Integer> g(RecurrenceSpec::gibonacci(), 1);
  RecurrenceStream<Integer> f(RecurrenceSpec::fibonacci(), 0);
  for (std::int64_t M = 1; M <= 5000; ++M, g.advance()) {
    const std::int64_t N = floor_to_integer(ratio * ctx.from(Integer(static_cast<long>(M)))).get_si();
    while (f.index() < N) f.advance();
    if (M < 100) continue;
    const Real ln_g = log(ctx.from(g.value()));
    const Real relative = abs(ln_g - log(ctx.from(f.value()))) / ln_g;
    ASSERT_LT(relative, ctx.ratio(5, 100)) << M;
    if (M >= 1000) {
      ASSERT_LT(relative, ctx.ratio(1, 100)) << M;
    }
  }
  for (std::int64_t M : {1000, 2000, 5000}) {
    const auto s = growth_alignment(M, ctx);
    EXPECT_LT(s.log_gap / log(ctx.from(s.g_m)), ctx.ratio(1, 100)) << M;
    EXPECT_EQ(s.g_m, term_integer(RecurrenceSpec::gibonacci(), M));
  }
}

TEST(Properties, DominantTermError) {
  // The F bound at n = 500 sits about 2 * 500 * log10(eta_a) digits below F(500).
  const PrecisionContext ctx(260);
  const auto cubic = plastic_roots(ctx);
  const auto gib = gib_coefficients(ctx, CoefficientMethod::closed_form);
  const auto quad = golden_roots(ctx);
  const auto fib = fib_coefficients(ctx);
  const Real slack = 1 + ctx.parse("1e-30");
  const Real c_g = 2 * gib.B().modulus() * slack;
  const Real c_f = abs(fib.b) * slack;
  const Real abs_rho_b = cubic.rho_b.modulus();
  const Real abs_eta_b = abs(quad.eta_b);
  RecurrenceStream<Integer> g(RecurrenceSpec::gibonacci(), 10);
  RecurrenceStream<Integer> f(RecurrenceSpec::fibonacci(), 10);
  for (unsigned long n = 10; n <= 500; ++n, g.advance(), f.advance()) {
    const Real g_err = abs(ctx.from(g.value()) - gib.A * pow(cubic.rho_a, n));
    const Real f_err = abs(ctx.from(f.value()) - fib.a * pow(quad.eta_a, n));
    ASSERT_LT(g_err, c_g * pow(abs_rho_b, n)) << n;
    ASSERT_LT(f_err, c_f * pow(abs_eta_b, n)) << n;
  }
}

TEST(Properties, RootInvariantsAcrossPrecisions) {
  std::mt19937 rng(kSeed + 1);
  std::uniform_int_distribution<int> pick(20, 200);
  const detail::Polynomial quartic{{1, 0, 0, -1, -1}};
  for (int trial = 0; trial < 12; ++trial) {
    const PrecisionContext ctx(pick(rng));
    const Real tol = ctx.tolerance();
    const auto q = golden_roots(ctx);
    ASSERT_LE(abs(q.eta_a + q.eta_b - 1), tol);
    ASSERT_LE(abs(q.eta_a * q.eta_b + 1), tol);

    const auto c = plastic_roots(ctx);
    const Complex a{c.rho_a, ctx.real(0)};
    ASSERT_LE((a + c.rho_b + c.rho_c).modulus(), tol);
    ASSERT_LE((a * c.rho_b * c.rho_c - ctx.real(1)).modulus(), tol);
    for (const Complex& z : {a, c.rho_b, c.rho_c}) ASSERT_LE((pow(z, 3) - z - ctx.real(1)).modulus(), tol);

    const auto t = quartic_roots(ctx);
    for (const auto& x : t.real_roots) ASSERT_LE(detail::residual(quartic, x), tol);
    ASSERT_LE(detail::residual(quartic, t.tau_plus), tol);
    ASSERT_LE(abs(t.real_roots[0] + t.real_roots[1] + 2 * t.tau_plus.re), tol);

    const auto closed = gib_coefficients(ctx, CoefficientMethod::closed_form);
    const auto solved = gib_coefficients(ctx, CoefficientMethod::linear_solve);
    ASSERT_LE(abs(closed.K - solved.K), Real::power_of_ten(3 - ctx.digits(), ctx.bits())) << ctx.digits();
  }
}

TEST(Properties, BinetAtRandomIndices) {
  std::mt19937 rng(kSeed + 2);
  std::uniform_int_distribution<std::uint64_t> pick(0, 1000);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t n = pick(rng);
    for (Family fam : {Family::F, Family::G}) {
      const int need = required_binet_digits(fam, n);
      const auto b = binet_eval(fam, n, PrecisionContext(std::max(need, PrecisionContext::kMinDigits)));
      ASSERT_EQ(b.value, term_integer(RecurrenceSpec::of(fam), static_cast<std::int64_t>(n))) << n;
      if (need > PrecisionContext::kMinDigits) {
        ASSERT_THROW(binet_eval(fam, n, PrecisionContext(need - 1)), InsufficientPrecision);
      }
    }
  }
}

TEST(Properties, StageLengthsGrowPerRow) {
  for (int row = 0; row < kRows; ++row) {
    const auto records = scan_breakpoints(row, 200);
    ASSERT_GE(records.size(), 2u);
    EXPECT_GE(records[1].k_end - records[1].k_start, records[0].k_end - records[0].k_start) << row;
    for (std::size_t s = 1; s < records.size(); ++s) EXPECT_EQ(records[s].offset, records[s - 1].offset - 1);
  }
}
