#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibdelay/characteristic.hpp"
#include "fibdelay/errors.hpp"
#include "fibdelay/real.hpp"
#include "fibdelay/sequences.hpp"

namespace fibdelay {

inline constexpr int kMinAsymptoticDigits = 25;

/// ln(rho_A) / ln(eta_a) with the partial sums of its short decimal expansion
/// 7/12 + 3/10^3 (7/12)^2 + 3/10^6 - 9/10^9 and their signed residuals
/// (ratio - partial).
struct RatioReport {
  Real ratio;
  std::vector<Real> expansion_partials;
  std::vector<Real> residuals;
};

/// ln(eta_a / rho_A), its five-term rational approximation, and how far
/// eta_a^5 is from e rho_A^5 in relative terms.
struct MysteryReport {
  Real log_quotient;
  Real approx_value;
  Real rho5_relative_error;
};

struct AlignmentSample {
  std::int64_t M = 0;
  std::int64_t N = 0;
  Integer g_m;
  Integer f_n;
  Real log_gap;  // |ln G(M) - ln F(N)|
};

namespace detail {

inline void require_asymptotic_digits(const PrecisionContext& ctx, const char* what) {
  if (ctx.digits() < kMinAsymptoticDigits) {
    throw InsufficientPrecision(std::string(what) + " needs at least " + std::to_string(kMinAsymptoticDigits) +
                                    " digits",
                                kMinAsymptoticDigits);
  }
}

inline Real growth_ratio(const PrecisionContext& ctx) {
  return log(plastic_roots(ctx).rho_a) / log(golden_roots(ctx).eta_a);
}

}  // namespace detail

inline RatioReport log_ratio(const PrecisionContext& ctx) {
  detail::require_asymptotic_digits(ctx, "log_ratio");
  RatioReport out;
  out.ratio = detail::growth_ratio(ctx);
  const Real seven_twelfths = ctx.ratio(7, 12);
  const std::array<Real, 4> terms{
      seven_twelfths,
      3 * seven_twelfths * seven_twelfths / 1000,
      ctx.ratio(3, 1'000'000),
      -ctx.ratio(9, 1'000'000'000),
  };
  Real partial = ctx.real(0);
  for (const auto& t : terms) {
    partial += t;
    out.expansion_partials.push_back(partial);
    out.residuals.push_back(out.ratio - partial);
  }
  return out;
}

inline MysteryReport mystery_quotient(const PrecisionContext& ctx) {
  detail::require_asymptotic_digits(ctx, "mystery_quotient");
  const Real rho_a = plastic_roots(ctx).rho_a;
  const Real eta_a = golden_roots(ctx).eta_a;
  MysteryReport out;
  out.log_quotient = log(eta_a / rho_a);
  out.approx_value = ctx.ratio(1, 5) + ctx.ratio(1, 80'000) - ctx.ratio(1, 4'000'000) +
                     ctx.ratio(2, 2'700'000'000) - ctx.real(41) / Real::power_of_ten(13, ctx.bits());
  out.rho5_relative_error = pow(eta_a, 5) / (exp(ctx.real(1)) * pow(rho_a, 5)) - 1;
  return out;
}

/// Samples G(M) against F(N) with N = floor(ratio * M) at full precision.
inline AlignmentSample growth_alignment(std::int64_t M, const PrecisionContext& ctx) {
  if (M < 1) throw std::invalid_argument("growth_alignment needs M >= 1");
  AlignmentSample out;
  out.M = M;
  const Integer n = floor_to_integer(detail::growth_ratio(ctx) * ctx.from(Integer(static_cast<long>(M))));
  out.N = n.get_si();
  out.g_m = term_integer(RecurrenceSpec::gibonacci(), M);
  out.f_n = term_integer(RecurrenceSpec::fibonacci(), out.N);
  out.log_gap = abs(log(ctx.from(out.g_m)) - log(ctx.from(out.f_n)));
  return out;
}

}  // namespace fibdelay
