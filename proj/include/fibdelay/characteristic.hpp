#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fibdelay/errors.hpp"
#include "fibdelay/real.hpp"
#include "fibdelay/sequences.hpp"

namespace fibdelay {

/// Roots of eta^2 = eta + 1.
struct QuadraticRoots {
  Real eta_a;  // golden mean, dominant
  Real eta_b;
};

/// Roots of rho^3 = rho + 1 in the Cardano form built from
/// x0 = sqrt(23/27) and D+- = ((1 +- x0) / 2)^(1/3).
struct CubicRoots {
  Real x0;
  Real d_plus;
  Real d_minus;
  Real rho_a;  // D+ + D-, the only real root
  Real rho_d;  // D+ - D-
  Complex rho_b;
  Complex rho_c;
  Real phi;  // 2 pi / 3
};

/// Roots of tau^4 = tau + 1: real pair ascending, then the complex pair with
/// the positive imaginary part first.
struct QuarticRoots {
  std::array<Real, 2> real_roots;
  Complex tau_plus;
  Complex tau_minus;
};

/// F(n) = a eta_a^n + b eta_b^n.
struct FibCoefficients {
  Real a;
  Real b;
};

/// G(n) = A rho_A^n + B rho_B^n + C rho_C^n with B = K - iL = conj(C).
struct GibCoefficients {
  Real A;
  Real K;
  Real L;
  Real sigma;
  Real delta;

  Complex B() const { return {K, -L}; }
  Complex C() const { return {K, L}; }
};

enum class CoefficientMethod { closed_form, linear_solve };

inline const char* method_name(CoefficientMethod method) {
  return method == CoefficientMethod::closed_form ? "closed_form" : "linear_solve";
}

struct BinetValue {
  Integer value;
  Real residual;  // |ansatz - value| before rounding
};

inline QuadraticRoots golden_roots(const PrecisionContext& ctx) {
  const Real root5 = sqrt(ctx.real(5));
  return {(1 + root5) / 2, (1 - root5) / 2};
}

inline CubicRoots plastic_roots(const PrecisionContext& ctx) {
  CubicRoots r;
  r.x0 = sqrt(ctx.ratio(23, 27));
  r.d_plus = cbrt((1 + r.x0) / 2);
  r.d_minus = cbrt((1 - r.x0) / 2);
  r.rho_a = r.d_plus + r.d_minus;
  r.rho_d = r.d_plus - r.d_minus;
  r.phi = Real::pi(ctx.bits()) * 2 / 3;
  const Complex rotation{cos(r.phi), sin(r.phi)};
  r.rho_b = r.d_plus * rotation + r.d_minus * rotation.conj();
  r.rho_c = r.rho_b.conj();
  return r;
}

namespace detail {

// Real-coefficient polynomial, coefficients from the highest degree down.
struct Polynomial {
  std::vector<long> coefficients;

  std::size_t degree() const { return coefficients.size() - 1; }

  double eval(double x) const {
    double acc = 0;
    for (long c : coefficients) acc = acc * x + static_cast<double>(c);
    return acc;
  }

  // Horner for p(z) and p'(z) together.
  template <class T>
  std::pair<T, T> eval_with_derivative(const T& z, const T& zero) const {
    T value = zero;
    T slope = zero;
    for (long c : coefficients) {
      slope = slope * z + value;
      value = value * z + lift(c, zero);
    }
    return {value, slope};
  }

  // Cauchy bound on root moduli.
  double root_bound() const {
    double worst = 0;
    for (std::size_t i = 1; i < coefficients.size(); ++i) {
      worst = std::max(worst, std::fabs(static_cast<double>(coefficients[i])));
    }
    return 1 + worst / std::fabs(static_cast<double>(coefficients.front()));
  }

 private:
  static Real lift(long c, const Real& like) { return Real(c, like.precision()); }
  static Complex lift(long c, const Complex& like) {
    return {Real(c, like.re.precision()), Real(0, like.re.precision())};
  }
};

inline Real residual(const Polynomial& poly, const Real& x) {
  return abs(poly.eval_with_derivative(x, Real(0, x.precision())).first);
}

inline Real residual(const Polynomial& poly, const Complex& z) {
  const Complex zero{Real(0, z.re.precision()), Real(0, z.re.precision())};
  return poly.eval_with_derivative(z, zero).first.modulus();
}

constexpr int kMaxNewtonSteps = 200;

// Sign-change isolation on a uniform grid inside the Cauchy bound, then
// bisection in double precision down to a narrow bracket.
inline std::vector<std::pair<double, double>> isolate_real_roots(const Polynomial& poly) {
  const double bound = poly.root_bound();
  constexpr int kCells = 4096;
  const double h = 2 * bound / kCells;
  std::vector<std::pair<double, double>> brackets;
  for (int i = 0; i < kCells; ++i) {
    double lo = -bound + i * h;
    double hi = lo + h;
    double flo = poly.eval(lo);
    const double fhi = poly.eval(hi);
    if (flo == 0) {
      brackets.emplace_back(lo, lo);
      continue;
    }
    if ((flo < 0) == (fhi < 0) || fhi == 0) continue;
    for (int k = 0; k < 40; ++k) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = poly.eval(mid);
      if ((fmid < 0) == (flo < 0)) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
      }
    }
    brackets.emplace_back(lo, hi);
  }
  return brackets;
}

// Newton from the bracket midpoint; falls back to bisection whenever a
// step would leave the bracket.
inline Real refine_real_root(const Polynomial& poly, double lo_d, double hi_d, const PrecisionContext& ctx) {
  Real lo = Real::with_precision(ctx.bits());
  Real hi = Real::with_precision(ctx.bits());
  mpfr_set_d(lo.get(), lo_d, MPFR_RNDN);
  mpfr_set_d(hi.get(), hi_d, MPFR_RNDN);
  const bool rising = poly.eval(hi_d) > poly.eval(lo_d);
  Real x = (lo + hi) / 2;
  const Real step_floor = Real::power_of_ten(-ctx.working_digits(), ctx.bits());
  for (int i = 0; i < kMaxNewtonSteps; ++i) {
    auto [value, slope] = poly.eval_with_derivative(x, ctx.real(0));
    if (value.is_zero()) return x;
    if ((value.sign() > 0) == rising) {
      hi = x;
    } else {
      lo = x;
    }
    Real next = slope.is_zero() ? (lo + hi) / 2 : x - value / slope;
    if (next <= lo || next >= hi) next = (lo + hi) / 2;
    const Real step = abs(next - x);
    x = std::move(next);
    if (step < step_floor) return x;
  }
  return x;
}

inline Complex refine_complex_root(const Polynomial& poly, Complex z, const PrecisionContext& ctx) {
  const Complex zero{ctx.real(0), ctx.real(0)};
  const Real step_floor = Real::power_of_ten(-ctx.working_digits(), ctx.bits());
  for (int i = 0; i < kMaxNewtonSteps; ++i) {
    auto [value, slope] = poly.eval_with_derivative(z, zero);
    if (value.re.is_zero() && value.im.is_zero()) return z;
    const Complex step = value / slope;
    z = z - step;
    if (step.modulus() < step_floor) return z;
  }
  return z;
}

// Synthetic division of the coefficient list by (x - root).
inline std::vector<Real> deflate(const std::vector<Real>& coefficients, const Real& root) {
  std::vector<Real> quotient;
  Real carry = coefficients.front();
  quotient.push_back(carry);
  for (std::size_t i = 1; i + 1 < coefficients.size(); ++i) {
    carry = coefficients[i] + carry * root;
    quotient.push_back(carry);
  }
  return quotient;
}

}  // namespace detail

inline QuarticRoots quartic_roots(const PrecisionContext& ctx) {
  const detail::Polynomial poly{{1, 0, 0, -1, -1}};  // tau^4 - tau - 1
  const auto brackets = detail::isolate_real_roots(poly);
  if (brackets.size() != 2) {
    throw RefinementFailure("expected two isolated real roots of tau^4 = tau + 1, found " +
                            std::to_string(brackets.size()));
  }
  QuarticRoots out;
  for (std::size_t i = 0; i < 2; ++i) {
    out.real_roots[i] = detail::refine_real_root(poly, brackets[i].first, brackets[i].second, ctx);
  }
  std::vector<Real> reduced;
  for (long c : poly.coefficients) reduced.push_back(ctx.real(c));
  for (const auto& r : out.real_roots) reduced = detail::deflate(reduced, r);
  // reduced = a z^2 + b z + c with negative discriminant
  const Real& a = reduced[0];
  const Real& b = reduced[1];
  const Real& c = reduced[2];
  const Real disc = b * b - 4 * a * c;
  if (disc.sign() >= 0) throw RefinementFailure("deflated quartic factor has no complex pair");
  Complex guess{-b / (2 * a), sqrt(-disc) / (2 * a)};
  out.tau_plus = detail::refine_complex_root(poly, guess, ctx);
  if (out.tau_plus.im.sign() < 0) out.tau_plus = out.tau_plus.conj();
  out.tau_minus = out.tau_plus.conj();

  const Real tol = ctx.tolerance();
  for (const auto& r : out.real_roots) {
    if (detail::residual(poly, r) > tol) throw RefinementFailure("real quartic root failed residual check");
  }
  if (detail::residual(poly, out.tau_plus) > tol) {
    throw RefinementFailure("complex quartic root failed residual check");
  }
  return out;
}

inline FibCoefficients fib_coefficients(const PrecisionContext& ctx) {
  const auto roots = golden_roots(ctx);
  const Real root5 = sqrt(ctx.real(5));
  return {roots.eta_a / root5, -roots.eta_b / root5};
}

namespace detail {

// Gaussian elimination with partial pivoting on modulus.
inline std::vector<Complex> solve_linear(std::vector<std::vector<Complex>> m, std::vector<Complex> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col].modulus() > m[pivot][col].modulus()) pivot = row;
    }
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const Complex factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] = m[row][k] - factor * m[col][k];
      rhs[row] = rhs[row] - factor * rhs[col];
    }
  }
  std::vector<Complex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) acc = acc - m[i][k] * x[k];
    x[i] = acc / m[i][i];
  }
  return x;
}

}  // namespace detail

inline GibCoefficients gib_coefficients(const PrecisionContext& ctx, CoefficientMethod method) {
  const auto roots = plastic_roots(ctx);
  const Real& dp = roots.d_plus;
  const Real& dm = roots.d_minus;
  GibCoefficients out;
  if (method == CoefficientMethod::closed_form) {
    const Real three_x0 = 3 * roots.x0;
    out.sigma = (3 * dp * dp - dm) / three_x0;
    out.delta = (-3 * dm * dm + dp) / three_x0;
    out.K = (2 - (dp - dm) * (3 * dp + 3 * dm + 1) / three_x0) / 6;
    out.L = (3 * dp * dp + 3 * dm * dm - dp - dm) / three_x0 / (2 * sqrt(ctx.real(3)));
    out.A = 1 - 2 * out.K;
    return out;
  }
  const Complex one{ctx.real(1), ctx.real(0)};
  const Complex rho_a{roots.rho_a, ctx.real(0)};
  std::vector<std::vector<Complex>> m{
      {one, one, one},
      {rho_a, roots.rho_b, roots.rho_c},
      {rho_a * rho_a, roots.rho_b * roots.rho_b, roots.rho_c * roots.rho_c},
  };
  const auto x = detail::solve_linear(std::move(m), {one, one, one});
  out.A = x[0].re;
  out.K = x[1].re;
  out.L = -x[1].im;
  // Sigma/Delta from their defining abbreviations with cos(phi) = -1/2.
  const Real two_l_sin = 2 * out.L * sin(roots.phi);
  const Real base = 1 + 2 * out.K * (cos(roots.phi) - 1);
  out.sigma = base + two_l_sin;
  out.delta = base - two_l_sin;
  return out;
}

/// log10 of the dominant root, in double: enough to size precision.
inline double dominant_log10(Family family) {
  return family == Family::F ? 0.20898764024997873 : 0.12212342344200567;
}

inline int required_binet_digits(Family family, std::uint64_t n) {
  return static_cast<int>(std::ceil(static_cast<double>(n) * dominant_log10(family) + 10));
}

/// Evaluates the full closed-form ansatz (all roots) at n, rounds it to the
/// nearest integer and reports the pre-rounding residual.
inline BinetValue binet_eval(Family family, std::uint64_t n, const PrecisionContext& ctx) {
  const int needed = required_binet_digits(family, n);
  if (needed > ctx.digits()) {
    throw InsufficientPrecision(std::string("binet_eval(") + family_name(family) + ", " + std::to_string(n) +
                                    ") needs at least " + std::to_string(needed) + " digits, context has " +
                                    std::to_string(ctx.digits()),
                                needed);
  }
  Real sum;
  if (family == Family::F) {
    const auto roots = golden_roots(ctx);
    const auto coeffs = fib_coefficients(ctx);
    sum = coeffs.a * pow(roots.eta_a, n) + coeffs.b * pow(roots.eta_b, n);
  } else {
    const auto roots = plastic_roots(ctx);
    const auto coeffs = gib_coefficients(ctx, CoefficientMethod::closed_form);
    const Complex tail = coeffs.B() * pow(roots.rho_b, n) + coeffs.C() * pow(roots.rho_c, n);
    sum = coeffs.A * pow(roots.rho_a, n) + tail.re;
  }
  BinetValue out{round_half_away(sum), Real()};
  out.residual = abs(sum - ctx.from(out.value));
  return out;
}

}  // namespace fibdelay
