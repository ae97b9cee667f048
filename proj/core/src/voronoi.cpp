#include <algorithm>
#include <cmath>
#include <sstream>

#include "besseldelta/errors.hpp"
#include "besseldelta/forms.hpp"
#include "besseldelta/quadrature.hpp"
#include "besseldelta/windows.hpp"

namespace bdelta {

namespace {

constexpr i64 kTailBlock = 64;

PhaseFunction sqrt_phase(double k) {
  return PhaseFunction([k](double x, int order) {
    const double r = std::sqrt(x);
    switch (order) {
      case 0: return k * r;
      case 1: return 0.5 * k / r;
      case 2: return -0.25 * k / (x * r);
      case 3: return 0.375 * k / (x * x * r);
      case 4: return -0.9375 * k / (x * x * x * r);
      default: throw UnsupportedOrderError("phase derivative order above 4");
    }
  });
}

}  // namespace

VoronoiVerifier::VoronoiVerifier(std::shared_ptr<const CoefficientProvider> coeffs, double rel_tol, double abs_tol)
    : coeffs_(std::move(coeffs)), rel_tol_(rel_tol), abs_tol_(abs_tol), kernel_(BesselKernel::holomorphic(12)) {
  if (!coeffs_) throw ParameterError("Voronoi verifier needs a coefficient provider");
  if (coeffs_->weight() != 12) throw ParameterError("Voronoi verifier supports the weight-12 level-1 form only");
  if (!(rel_tol > 0.0) || !(abs_tol >= 0.0)) throw ParameterError("tolerances must be positive");
}

void VoronoiVerifier::check_arguments(i64 a, i64 c, double N) const {
  if (c < 1 || c > kVoronoiMaxModulus) throw ParameterError("Voronoi check needs 1 <= c <= 5");
  if (gcd(a, c) != 1) throw ParameterError("Voronoi check needs gcd(a, c) = 1");
  if (!(N >= 1.0) || N > kVoronoiMaxN) throw ParameterError("Voronoi check needs 1 <= N <= 200");
}

cplx VoronoiVerifier::lhs(i64 a, i64 c, double N) const {
  check_arguments(a, c, N);
  const SmoothBump F = SmoothBump::plateau(N, 2.0 * N, kVoronoiDelta / N);
  CompensatedComplexSum s;
  for (i64 n = static_cast<i64>(std::ceil(N)); n <= static_cast<i64>(std::floor(2.0 * N)); ++n) {
    const double f = F(static_cast<double>(n));
    if (f == 0.0) continue;
    const long double frac = static_cast<long double>(mod(a * n, c)) / static_cast<long double>(c);
    s += (coeffs_->lambda(n) * f) * unit_phase(frac);
  }
  return s.value();
}

cplx VoronoiVerifier::dual(i64 a, i64 c, double N, i64* terms) const {
  check_arguments(a, c, N);
  const i64 abar = c == 1 ? 0 : mod_inverse(a, c);
  const SmoothBump F = SmoothBump::plateau(N, 2.0 * N, kVoronoiDelta / N);
  const KernelSplit split(kernel_);
  const BesselKernel kernel = kernel_;
  const double tol = 1e-6 * rel_tol_ * N;

  auto transform = [&](i64 n) -> cplx {
    const double k = 4.0 * kPi * std::sqrt(static_cast<double>(n)) / static_cast<double>(c);
    OscillatorySpec spec;
    spec.lo = N;
    spec.hi = 2.0 * N;
    const double y_lo = k * std::sqrt(N);
    if (y_lo >= kBesselCrossover && split.at(y_lo).rel_error <= 1e-14) {
      // J_g(y) e^{-iy} = P(y) + M(y) e^{-2iy}; one pass against the phase y serves both halves
      spec.tolerance = tol;
      spec.amplitude = [&](double x) {
        const double f = F(x);
        if (f == 0.0) return cplx(0.0);
        const double y = k * std::sqrt(x);
        const KernelEnvelope env = split.at(y);
        return f * (env.plus + env.minus * expi(-2.0L * y));
      };
      spec.phase = sqrt_phase(k);
      return integrate_oscillatory(spec).value;
    }
    spec.tolerance = tol;
    spec.amplitude = [&](double x) {
      const double f = F(x);
      return f == 0.0 ? cplx(0.0) : f * kernel_j_g(kernel, k * std::sqrt(x));
    };
    spec.phase = PhaseFunction::zero();
    return integrate_oscillatory(spec).value;
  };

  CompensatedComplexSum s;
  double largest = 0.0;
  double block_max = 0.0;
  i64 n = 1;
  for (;; ++n) {
    if (n > kVoronoiMaxDualTerms || n > coeffs_->size()) {
      std::ostringstream os;
      os << "dual Voronoi sum did not reach its tail tolerance within " << (n - 1) << " terms";
      throw ResourceError(os.str(), static_cast<double>(n));
    }
    const long double frac = static_cast<long double>(mod(-abar * n, c)) / static_cast<long double>(c);
    const cplx term = coeffs_->lambda(n) * unit_phase(frac) * transform(n);
    s += term;
    const double mag = std::abs(term);
    largest = std::max(largest, mag);
    block_max = std::max(block_max, mag);
    if (n % kTailBlock == 0) {
      // a whole block below 1e-3 of the requested accuracy ends the sum
      if (block_max < 1e-3 * (rel_tol_ * largest + abs_tol_)) break;
      block_max = 0.0;
    }
  }
  if (terms != nullptr) *terms = n;
  return s.value() / static_cast<double>(c);
}

cplx VoronoiVerifier::determine_eta() {
  const cplx l = lhs(1, 2, 50.0);
  i64 terms = 0;
  const cplx d = dual(1, 2, 50.0, &terms);
  reference_dual_ = d;
  reference_terms_ = terms;
  const cplx eta = l / d;
  const double off = std::abs(std::abs(eta) - 1.0);
  if (off > 1e-6) {
    std::ostringstream os;
    os << "eta has modulus " << std::abs(eta) << ", not 1";
    throw PrecisionLossError(os.str(), off);
  }
  eta_ = eta;
  return eta;
}

cplx VoronoiVerifier::eta() const {
  if (!eta_) throw ParameterError("eta has not been determined yet");
  return *eta_;
}

VoronoiReport VoronoiVerifier::check(i64 a, i64 c, double N) {
  check_arguments(a, c, N);
  if (!eta_) determine_eta();
  VoronoiReport r;
  r.a = a;
  r.c = c;
  r.N = N;
  r.eta = *eta_;
  r.lhs = lhs(a, c, N);
  if (a == 1 && c == 2 && N == 50.0 && reference_dual_) {
    r.rhs = *eta_ * *reference_dual_;
    r.dual_terms = reference_terms_;
  } else {
    r.rhs = *eta_ * dual(a, c, N, &r.dual_terms);
  }
  r.diff = std::abs(r.lhs - r.rhs);
  r.tolerance = rel_tol_ * std::max(std::abs(r.lhs), std::abs(r.rhs)) + abs_tol_;
  r.pass = r.diff <= r.tolerance;
  return r;
}

}  // namespace bdelta
