#include "besseldelta/sums.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "besseldelta/errors.hpp"

namespace bdelta {

namespace {

// Integers n with window(n/N) possibly nonzero.
std::pair<i64, i64> support_range(const SmoothBump& window, double N) {
  return {std::max<i64>(1, static_cast<i64>(std::floor(window.lo() * N))),
          static_cast<i64>(std::ceil(window.hi() * N))};
}

void require_table(const CoefficientProvider& coeffs, i64 n) {
  if (n > coeffs.size()) {
    std::ostringstream os;
    os << "coefficient table exhausted: need n = " << n << ", have " << coeffs.size();
    throw ResourceError(os.str(), static_cast<double>(n));
  }
}

// n^{-it}, with t log n reduced in extended precision.
cplx twist(double t, i64 n) { return expi(-static_cast<long double>(t) * std::log(static_cast<long double>(n))); }

void check_twist(double t) {
  if (!(std::abs(t) <= kMaxTwist)) throw ParameterError("|t| must be at most 1e4");
}

}  // namespace

PhaseSpec PhaseSpec::square(double T, double N, double gamma) {
  PhaseSpec p;
  p.T = T;
  p.N = N;
  p.gamma = gamma;
  p.phi = [](double x, int order) {
    switch (order) {
      case 0: return x * x;
      case 1: return 2.0 * x;
      case 2: return 2.0;
      default: return 0.0;
    }
  };
  return p;
}

void PhaseSpec::validate() const {
  if (!phi) throw ParameterError("phase needs phi");
  if (!(T >= 0.0) || !(N > 0.0)) throw ParameterError("phase needs T >= 0 and N > 0");
  for (int k = 0; k < 1024; ++k) {
    const double x = 0.5 + 2.0 * k / 1023.0;
    if (!(std::abs(phi(x, 2)) >= 0.99)) {
      std::ostringstream os;
      os << "|phi''| >= 1 fails at x = " << x;
      throw ParameterError(os.str());
    }
  }
}

cplx smooth_exp_sum(const CoefficientProvider& coeffs, const PhaseSpec& phase, const SmoothBump& window) {
  phase.validate();
  const auto [lo, hi] = support_range(window, phase.N);
  require_table(coeffs, hi);
  CompensatedComplexSum s;
  for (i64 n = lo; n <= hi; ++n) {
    const double v = window(static_cast<double>(n) / phase.N);
    if (v == 0.0) continue;
    // e(gamma n) reduced mod 1 before adding the smooth part
    const long double g = std::fmod(static_cast<long double>(phase.gamma) * n, 1.0L);
    const long double f = static_cast<long double>(phase.T) * phase.phi(static_cast<double>(n) / phase.N, 0) + g;
    s += (coeffs.lambda(n) * v) * unit_phase(f);
  }
  return s.value();
}

cplx sharp_exp_sum(const CoefficientProvider& coeffs, double alpha, double beta, double gamma, i64 N) {
  if (alpha == 0.0) throw ParameterError("alpha must be nonzero");
  if (beta == 1.0) throw ParameterError("beta must differ from 1");
  if (N < 1) throw ParameterError("N must be >= 1");
  require_table(coeffs, N);
  CompensatedComplexSum s;
  for (i64 n = 1; n <= N; ++n) {
    const long double f = static_cast<long double>(alpha) * std::pow(static_cast<long double>(n), beta) +
                          std::fmod(static_cast<long double>(gamma) * n, 1.0L);
    s += coeffs.lambda(n) * unit_phase(f);
  }
  return s.value();
}

ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& samples) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [N, S] : samples) {
    if (N > 0.0 && S > 0.0 && std::isfinite(N) && std::isfinite(S)) pts.emplace_back(std::log(N), std::log(S));
  }
  if (pts.size() < 4) throw InsufficientDataError("exponent fit needs at least 4 usable samples");
  const double m = static_cast<double>(pts.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("exponent fit needs distinct N");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.used = pts.size();
  return fit;
}

double random_sign_sum(i64 N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  i64 s = 0;
  for (i64 n = 1; n <= N; ++n) s += (rng() >> 63) ? 1 : -1;
  return static_cast<double>(s);
}

cplx twisted_sum(const CoefficientProvider& coeffs, const DirichletCharacter& chi, double t, const SmoothBump& window,
                 double N) {
  check_twist(t);
  const auto [lo, hi] = support_range(window, N);
  require_table(coeffs, hi);
  CompensatedComplexSum s;
  for (i64 n = lo; n <= hi; ++n) {
    const double v = window(static_cast<double>(n) / N);
    if (v == 0.0) continue;
    const cplx c = chi(n);
    if (c == 0.0) continue;
    s += (coeffs.lambda(n) * v) * c * twist(t, n);
  }
  return s.value();
}

AmplificationSplit amplification_split(const CoefficientProvider& coeffs, const DirichletCharacter& chi, double t,
                                       const SmoothBump& window, double N, const std::vector<i64>& primes_L) {
  check_twist(t);
  if (primes_L.empty()) throw ParameterError("amplifier needs at least one prime");
  for (i64 l : primes_L) {
    if (!is_prime(l)) throw ParameterError("amplifier entries must be prime");
    if (l % chi.modulus() == 0) throw ParameterError("amplifier primes must be coprime to q");
  }
  const auto [lo, hi] = support_range(window, N);
  i64 l_max = 0;
  for (i64 l : primes_L) l_max = std::max(l_max, l);
  require_table(coeffs, hi * l_max);

  CompensatedSum l_star;
  for (i64 l : primes_L) l_star += coeffs.lambda(l) * coeffs.lambda(l);
  AmplificationSplit out;
  out.L_star = l_star.value();
  if (out.L_star == 0.0) throw DegenerateInputError("L* = 0: every amplifier coefficient vanishes");

  out.S = twisted_sum(coeffs, chi, t, window, N);

  CompensatedComplexSum s1, s2;
  for (i64 l : primes_L) {
    const double ll = coeffs.lambda(l);  // real, so conj(lambda(l)) = lambda(l)
    if (ll == 0.0) continue;
    CompensatedComplexSum inner1;
    for (i64 r = lo; r <= hi; ++r) {
      const double v = window(static_cast<double>(r) / N);
      if (v == 0.0) continue;
      const cplx c = chi(r);
      if (c == 0.0) continue;
      inner1 += (v * coeffs.lambda(r * l)) * c * twist(t, r);  // sum_n lambda(n) delta(n - rl)
    }
    s1 += ll * inner1.value();
    // V(ln/N) needs ln in the support
    CompensatedComplexSum inner2;
    const i64 n_lo = std::max<i64>(1, lo / l);
    const i64 n_hi = hi / l + 1;
    for (i64 n = n_lo; n <= n_hi; ++n) {
      const double v = window(static_cast<double>(l * n) / N);
      if (v == 0.0) continue;
      const cplx c = chi(n);
      if (c == 0.0) continue;
      inner2 += (v * coeffs.lambda(n)) * c * twist(t, n);
    }
    s2 += ll * chi(l) * twist(t, l) * inner2.value();
  }
  out.S1 = s1.value() / out.L_star;
  out.S2 = s2.value() / out.L_star;
  out.residual = std::abs(out.S - out.S1 - out.S2);
  return out;
}

}  // namespace bdelta
