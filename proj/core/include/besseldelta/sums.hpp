#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "besseldelta/arith.hpp"
#include "besseldelta/forms.hpp"
#include "besseldelta/numeric.hpp"
#include "besseldelta/windows.hpp"

namespace bdelta {

/// Ramanujan-exponent placeholder; 0 for holomorphic forms. Documentation only.
inline constexpr double kRamanujanTheta = 0.0;
inline constexpr double kMaxTwist = 1e4;

/// f(x) = T phi(x/N) + gamma x with |phi''| >= 1 on [1/2, 5/2].
struct PhaseSpec {
  double T = 0.0;
  /// phi(x, order), order 0 and 2 at least.
  std::function<double(double, int)> phi;
  double gamma = 0.0;
  double N = 1.0;

  /// phi(x) = x^2.
  static PhaseSpec square(double T, double N, double gamma = 0.0);
  /// Throws ParameterError unless |phi''| >= 0.99 on a 1024-point grid of [1/2, 5/2].
  void validate() const;
};

/// sum_n lambda(n) e(f(n)) V(n/N).
cplx smooth_exp_sum(const CoefficientProvider& coeffs, const PhaseSpec& phase, const SmoothBump& window);

/// sum_{n <= N} lambda(n) e(alpha n^beta + gamma n).
cplx sharp_exp_sum(const CoefficientProvider& coeffs, double alpha, double beta, double gamma, i64 N);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t used = 0;
};

/// Least squares of log|S| against log N. Zero or non-finite samples are
/// dropped; fewer than 4 remaining throws InsufficientDataError.
ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& samples);

/// sum_{n <= N} of independent signs drawn from a seeded Mersenne twister.
double random_sign_sum(i64 N, std::uint64_t seed);

/// sum_n lambda(n) chi(n) n^{-it} V(n/N).
cplx twisted_sum(const CoefficientProvider& coeffs, const DirichletCharacter& chi, double t, const SmoothBump& window,
                 double N);

struct AmplificationSplit {
  cplx S;
  cplx S1;
  cplx S2;
  double residual = 0.0;
  /// sum_l |lambda(l)|^2.
  double L_star = 0.0;
};

/// S = S1 + S2 from lambda(l) lambda(r) = lambda(lr) + lambda(r/l) 1_{l | r}, with
/// S1 = (1/L*) sum_l lambda(l) sum_r chi(r) r^{-it} V(r/N) lambda(rl) and
/// S2 = (1/L*) sum_l lambda(l) chi(l) l^{-it} sum_n lambda(n) chi(n) n^{-it} V(ln/N).
AmplificationSplit amplification_split(const CoefficientProvider& coeffs, const DirichletCharacter& chi, double t,
                                       const SmoothBump& window, double N, const std::vector<i64>& primes_L);

}  // namespace bdelta
