#include <gtest/gtest.h>

#include <besseldelta/errors.hpp>
#include <besseldelta/quadrature.hpp>
#include <cmath>

using namespace bdelta;

namespace {

OscillatorySpec canonical_with(PhaseFunction phase, double tol = 1e-12) {
  return OscillatorySpec::windowed(SmoothBump::canonical(), std::move(phase), tol);
}

}  // namespace

TEST(Oscillatory, ZeroPhaseGivesWindowMass) {
  const auto r = integrate_oscillatory(canonical_with(PhaseFunction::zero()));
  EXPECT_NEAR(r.value.real(), SmoothBump::canonical().mellin(1.0).real(), 1e-13);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-15);
}

TEST(Oscillatory, LinearPhaseMatchesOracle) {
  // tests/oracles/integrals_oracle.py, osc100
  const auto r = integrate_oscillatory(canonical_with(PhaseFunction::polynomial({0.0, 100.0})));
  EXPECT_NEAR(std::abs(r.value), 0.000033307529431230897272, 1e-10);
  EXPECT_NEAR(r.value.real(), -0.000023290316816590420258, 1e-12);
  EXPECT_NEAR(r.value.imag(), 0.000023810767719566664395, 1e-12);
}

TEST(Oscillatory, QuadraticPhaseRespectsVanDerCorputCap) {
  const double T = 1e3;
  const auto r = integrate_oscillatory(canonical_with(PhaseFunction::polynomial({0.0, 0.0, kTwoPi * T})));
  EXPECT_LE(std::abs(r.value), 4.0 * SmoothBump::canonical().total_variation() / std::sqrt(kPi * 2.0 * T));
}

TEST(Oscillatory, Errors) {
  OscillatorySpec s = canonical_with(PhaseFunction::polynomial({0.0, 2e7}));
  EXPECT_THROW(integrate_oscillatory(s), ResourceError);
  s = canonical_with(PhaseFunction::polynomial({0.0, 100.0}), 1e-30);
  EXPECT_THROW(integrate_oscillatory(s), PrecisionLossError);
  s = canonical_with(PhaseFunction::zero());
  s.hi = s.lo;
  EXPECT_THROW(integrate_oscillatory(s), ParameterError);
}

TEST(OscillatoryProperty, RefinementStability) {
  for (double k : {0.0, 30.0, 400.0, 5000.0}) {
    OscillatorySpec s = canonical_with(PhaseFunction::polynomial({0.0, k, 0.3 * k}), 1e-9);
    const auto coarse = integrate_oscillatory(s);
    s.tolerance = 1e-12;
    const auto fine = integrate_oscillatory(s);
    EXPECT_LE(std::abs(coarse.value - fine.value), std::max(coarse.error_estimate, 1e-15)) << "k = " << k;
  }
}

TEST(OscillatoryProperty, Linearity) {
  const PhaseFunction rho = PhaseFunction::polynomial({0.0, 250.0, 40.0});
  const SmoothBump w1 = SmoothBump::canonical();
  const SmoothBump w2 = SmoothBump::bump(1.2, 1.9, 2.0);
  const double tol = 1e-11;
  OscillatorySpec sum = canonical_with(rho, tol);
  sum.amplitude = [&](double y) { return cplx(w1(y) + w2(y), 0.0); };
  const cplx a = integrate_oscillatory(canonical_with(rho, tol)).value;
  const cplx b = integrate_oscillatory(OscillatorySpec::windowed(w2, rho, tol)).value;
  EXPECT_LE(std::abs(integrate_oscillatory(sum).value - a - b), 2.0 * tol);
}

TEST(OscillatoryProperty, ConstantShiftKeepsModulus) {
  const PhaseFunction rho = PhaseFunction::polynomial({0.0, 300.0, -20.0});
  const double tol = 1e-12;
  const double m0 = std::abs(integrate_oscillatory(canonical_with(rho, tol)).value);
  for (double c : {0.7, 3.0, 1e4}) {
    EXPECT_NEAR(std::abs(integrate_oscillatory(canonical_with(rho.shifted(c), tol)).value), m0, 2.0 * tol) << c;
  }
}

TEST(CertifyA1, LinearPhaseDecays) {
  const SmoothBump U = SmoothBump::canonical();
  A1Params p;
  p.R = kTwoPi * 1000.0;
  p.Y = 1e-6;
  p.Q = 1.0;
  p.Z = U.max_value();
  p.U = 0.01;  // bump derivatives stay below Z / U^j up to j = 4
  p.A = 2.0;
  const auto c = certify_A1(canonical_with(PhaseFunction::polynomial({0.0, kTwoPi * 1000.0})), p);
  EXPECT_FALSE(c.violated);
  EXPECT_LE(std::abs(c.integral_value), 1e-4);
  EXPECT_EQ(c.slack, kA1Slack);
}

TEST(CertifyA1, RejectsStationaryPhase) {
  A1Params p;
  p.R = 0.0;
  p.Y = 1.0;
  EXPECT_THROW(certify_A1(canonical_with(PhaseFunction::zero()), p), HypothesisError);
  p.R = 1.0;
  try {
    certify_A1(canonical_with(PhaseFunction::zero()), p);
    FAIL() << "zero phase passed |rho'| >= 1";
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.derivative_order(), 1);
  }
}

TEST(CertifyA2, ExplicitConstantHolds) {
  const double T = 500.0;
  const auto c = certify_A2(canonical_with(PhaseFunction::polynomial({0.0, 0.0, kTwoPi * T})), 2.0 * T);
  EXPECT_FALSE(c.violated);
  EXPECT_LE(c.ratio, 1.0);
  EXPECT_EQ(c.slack, 1.0);
  EXPECT_THROW(certify_A2(canonical_with(PhaseFunction::polynomial({0.0, 0.0, kTwoPi * T})), 2.5 * T),
               HypothesisError);
  EXPECT_THROW(certify_A2(canonical_with(PhaseFunction::zero()), 0.0), ParameterError);
}

TEST(CertifyA2, StationaryPointSaturatesAtSqrtLambda) {
  // f = T (x - 1.5)^2: |I| ~ U(1.5) / sqrt(2T)
  double prev = 0.0;
  for (double T : {1e3, 4e3}) {
    const auto f = PhaseFunction::polynomial({2.25 * T, -3.0 * T, T}).scaled(kTwoPi);
    const auto c = certify_A2(canonical_with(f), 2.0 * T);
    EXPECT_FALSE(c.violated);
    const double scaled = std::abs(c.integral_value) * std::sqrt(2.0 * T);
    EXPECT_NEAR(scaled, std::exp(-1.0), 0.01);
    if (prev > 0.0) EXPECT_NEAR(scaled / prev, 1.0, 0.02);
    prev = scaled;
  }
}

namespace {

Phase2D quadratic(double T, double sign) {
  Phase2D h;
  h.h = [=](double x, double y) { return T * (x * x + sign * y * y); };
  h.h_x = [=](double x, double) { return 2 * T * x; };
  h.h_y = [=](double, double y) { return 2 * sign * T * y; };
  h.h_xx = [=](double, double) { return 2 * T; };
  h.h_yy = [=](double, double) { return 2 * sign * T; };
  h.h_xy = [](double, double) { return 0.0; };
  return h;
}

}  // namespace

TEST(CertifyA3, QuadraticPhases) {
  const SmoothBump w = SmoothBump::canonical();
  for (double sign : {1.0, -1.0}) {
    OscillatorySpec2D s{Window2D::product(w, w), quadratic(20.0, sign), 1e-7};
    const auto c = certify_A3(s, 40.0, 40.0);
    EXPECT_FALSE(c.violated) << sign;
    EXPECT_LE(c.ratio, kA3Slack);
  }
  OscillatorySpec2D s{Window2D::product(w, w), quadratic(20.0, 1.0), 1e-7};
  EXPECT_THROW(certify_A3(s, 50.0, 40.0), HypothesisError);
}

TEST(CertifyA3, SeparableCaseFactorizes) {
  const SmoothBump w = SmoothBump::canonical();
  const double T = 20.0;
  OscillatorySpec2D s{Window2D::product(w, w), quadratic(T, -1.0), 1e-7};
  const cplx I = integrate_oscillatory_2d(s).value;
  const cplx Ix = integrate_oscillatory(canonical_with(PhaseFunction::polynomial({0.0, 0.0, kTwoPi * T}))).value;
  const cplx Iy = integrate_oscillatory(canonical_with(PhaseFunction::polynomial({0.0, 0.0, -kTwoPi * T}))).value;
  EXPECT_NEAR(std::abs(I - Ix * Iy), 0.0, 2e-7);
  // product of the two 1-D bounds against the 2-D one: V_2D = V_x V_y for a product window
  const double Vx = w.total_variation();
  EXPECT_NEAR(mixed_variation(s.window), Vx * Vx, 1e-6);
  EXPECT_LE(std::abs(Ix * Iy), 16.0 * Vx * Vx / (kPi * 2.0 * T));
}
