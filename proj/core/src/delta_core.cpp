#include "besseldelta/delta_core.hpp"

#include <cmath>
#include <sstream>

#include "besseldelta/arith.hpp"
#include "besseldelta/errors.hpp"
#include "besseldelta/quadrature.hpp"

namespace bdelta {

namespace {

void check_params(const DeltaParams& params) {
  if (!(params.X > 0.0) || !std::isfinite(params.X)) throw ParameterError("X must be positive");
  if (params.J < 0) throw ParameterError("truncation order J must be >= 0");
  if (!(params.tolerance_scale > 0.0)) throw ParameterError("tolerance_scale must be positive");
}

// sum_{a mod c} e(a h / c), grouped by gcd(a, c) into Ramanujan sums.
std::int64_t additive_character_sum(std::int64_t c, std::int64_t h) {
  std::int64_t s = 0;
  for (std::int64_t d : divisors(c)) s += ramanujan_sum_exact(d, h);
  return s;
}

DeltaEvaluation evaluate_delta(const DeltaParams& params, std::int64_t modulus, std::int64_t r, std::int64_t n) {
  DeltaEvaluation ev;
  ev.expected = (n == r) ? 1.0 : 0.0;
  const std::int64_t s = additive_character_sum(modulus, n - r);
  ev.character_sum = s / modulus;
  if (s == 0) {
    ev.arithmetic_zero = true;
    ev.value = 0.0;
    ev.deviation = 0.0;
    ev.tolerance = 0.0;
    ev.pass = true;
    return ev;
  }
  const double c = static_cast<double>(modulus);
  const double a = std::sqrt(static_cast<double>(r)) / c;
  const double b = std::sqrt(static_cast<double>(n)) / c;
  ev.i_g = i_g(params, a, b);
  ev.c_u = c_u(params, a);
  ev.value = static_cast<double>(ev.character_sum) * ev.i_g / ev.c_u;
  ev.deviation = std::abs(ev.value - ev.expected);
  if (n == r) {
    ev.tolerance = 10.0 / std::sqrt(static_cast<double>(std::min(r, n)) * params.X / (c * c));
  } else {
    ev.tolerance = kOffDiagonalCap;
  }
  ev.pass = ev.deviation <= ev.tolerance;
  return ev;
}

}  // namespace

BesselIntegral i_g_eval(const DeltaParams& params, double a, double b) {
  check_params(params);
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("I_g needs a, b > 0");
  const double X = params.X;
  const double sx = std::sqrt(X);
  const double u_lo = std::sqrt(params.window.lo());
  const double u_hi = std::sqrt(params.window.hi());
  const double k = 4.0 * kPi * b * sx;  // J_g argument per unit u
  const double tol = params.tolerance_scale * X * std::pow(b * b * X, -0.25);
  // x = X u^2: I = 2X int u U(u^2) e(2a sqrt(X) u) J_g(k u) du
  const SmoothBump& window = params.window;
  auto weight = [window](double u) { return u * window.eval(u * u, 0); };

  OscillatorySpec spec;
  spec.lo = u_lo;
  spec.hi = u_hi;
  if (k * u_lo >= kBesselCrossover) {
    const KernelSplit split(params.kernel);
    if (split.at(k * u_lo).rel_error <= kSplitEnvelopeTol) {
      spec.tolerance = 0.25 * tol / X;
      spec.amplitude = [&](double u) { return weight(u) * split.at(k * u).plus; };
      spec.phase = PhaseFunction::polynomial({0.0, kTwoPi * (2.0 * a + 2.0 * b) * sx});
      const QuadratureResult plus = integrate_oscillatory(spec);
      spec.amplitude = [&](double u) { return weight(u) * split.at(k * u).minus; };
      spec.phase = PhaseFunction::polynomial({0.0, kTwoPi * (2.0 * a - 2.0 * b) * sx});
      const QuadratureResult minus = integrate_oscillatory(spec);
      return {2.0 * X * (plus.value + minus.value), 2.0 * X * (plus.error_estimate + minus.error_estimate), true};
    }
  }
  spec.tolerance = 0.5 * tol / X;
  const BesselKernel kernel = params.kernel;
  spec.amplitude = [&](double u) {
    const double w = weight(u);
    return w == 0.0 ? cplx(0.0) : w * kernel_j_g(kernel, k * u);
  };
  spec.phase = PhaseFunction::polynomial({0.0, kTwoPi * 2.0 * a * sx});
  const QuadratureResult r = integrate_oscillatory(spec);
  return {2.0 * X * r.value, 2.0 * X * r.error_estimate, false};
}

cplx i_g(const DeltaParams& params, double a, double b) { return i_g_eval(params, a, b).value; }

cplx c_u(const DeltaParams& params, double b) {
  check_params(params);
  if (!(b > 0.0)) throw DomainError("C_U needs b > 0");
  const AsymptoticCoefficients coeffs = asymptotic_kernel_expansion(params.kernel, params.J);
  const double k = 4.0 * kPi * b * std::sqrt(params.X);
  CompensatedComplexSum s;
  for (int j = 0; j <= params.J; ++j) {
    const cplx mellin = params.window.mellin(0.75 - 0.5 * j);
    s += coeffs.d[j] * mellin / std::pow(k, j + 0.5);
  }
  return params.X * s.value();
}

void check_delta_preconditions(double X, std::int64_t modulus, std::int64_t r, std::int64_t n) {
  if (r < 1 || n < 1) throw ParameterError("r and n must be positive integers");
  const double lo = static_cast<double>(std::max(r, n)) / 2.0;
  const double hi = static_cast<double>(std::min(r, n));
  if (lo > hi) throw ParameterError("r and n must lie in a common range [N, 2N]");
  const double xe = std::pow(X, kDeltaXExponent);
  const double c2 = static_cast<double>(modulus) * static_cast<double>(modulus);
  // need N in [lo, hi] with c^2/xe < N < xe
  const double n_lo = std::max(lo, std::nextafter(c2 / xe, INFINITY));
  const double n_hi = std::min(hi, std::nextafter(xe, 0.0));
  if (n_lo > n_hi) {
    std::ostringstream os;
    os << "X^0.9 > max{N, c^2/N} fails for every N with r, n in [N, 2N] (X = " << X << ", c = " << modulus
       << ", r = " << r << ", n = " << n << ")";
    throw ParameterError(os.str());
  }
  if (static_cast<double>(std::min(r, n)) * X / c2 < kMinB2X) {
    throw ParameterError("b^2 X >= 10 fails: min(r, n) X / c^2 is too small");
  }
}

DeltaEvaluation delta_single_modulus(const DeltaParams& params, std::int64_t p, std::int64_t r, std::int64_t n) {
  check_params(params);
  if (!is_prime(p)) throw ParameterError("p must be prime");
  check_delta_preconditions(params.X, p, r, n);
  return evaluate_delta(params, p, r, n);
}

DeltaEvaluation delta_two_moduli(const DeltaParams& params, std::int64_t p, std::int64_t q, std::int64_t m,
                                 std::int64_t n) {
  check_params(params);
  if (!is_prime(p) || !is_prime(q) || p == q) throw ParameterError("p and q must be distinct primes");
  check_delta_preconditions(params.X, p * q, m, n);
  return evaluate_delta(params, p * q, m, n);
}

}  // namespace bdelta
