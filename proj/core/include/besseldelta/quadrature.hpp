#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "besseldelta/numeric.hpp"
#include "besseldelta/windows.hpp"

namespace bdelta {

inline constexpr double kPhaseBudgetRadians = 1e7;
inline constexpr int kHypothesisGridPoints = 1024;
inline constexpr int kMaxPhaseDerivative = 4;

/// Real phase rho with derivatives of order 0..4.
class PhaseFunction {
 public:
  using Fn = std::function<double(double y, int order)>;

  PhaseFunction() = default;
  explicit PhaseFunction(Fn fn) : fn_(std::move(fn)) {}

  /// rho(y) = sum_k coeffs[k] y^k.
  static PhaseFunction polynomial(std::vector<double> coeffs);
  static PhaseFunction zero() { return polynomial({0.0}); }
  /// scale * rho.
  PhaseFunction scaled(double scale) const;
  PhaseFunction shifted(double constant) const;

  double operator()(double y, int order = 0) const { return fn_(y, order); }
  bool valid() const noexcept { return static_cast<bool>(fn_); }

 private:
  Fn fn_;
};

/// int_lo^hi w(y) e^{i rho(y)} dy with absolute tolerance.
struct OscillatorySpec {
  double lo = 0.0;
  double hi = 0.0;
  /// Full (possibly complex) weight, window times amplitude.
  std::function<cplx(double)> amplitude;
  /// Derivatives of a real weight, needed only by the certificates. May be empty.
  std::function<double(double, int)> weight_derivative;
  PhaseFunction phase;
  double tolerance = 1e-10;

  static OscillatorySpec windowed(const SmoothBump& window, PhaseFunction phase, double tolerance);
};

struct QuadratureResult {
  cplx value;
  double error_estimate;
  std::size_t panels;
};

/// Wavelength-capped panels with 10-point Gauss-Legendre rules and recursive
/// halving. Throws ResourceError if the phase variation exceeds the budget and
/// PrecisionLossError if the error estimate stays above tolerance.
QuadratureResult integrate_oscillatory(const OscillatorySpec& spec);

namespace detail {
/// Panel edges on [lo, hi] no wider than a quarter of the local wavelength
/// 2 pi / |dphase| and no wider than max_width.
std::vector<double> wavelength_panels(double lo, double hi, const std::function<double(double)>& dphase,
                                      double max_width);
/// Adaptive panel quadrature of an arbitrary integrand over the given edges.
/// A panel is accepted once its halving difference is below its share of the
/// tolerance or below rel_noise times its absolute mass.
QuadratureResult adaptive_panels(const std::function<cplx(double)>& f, const std::vector<double>& edges,
                                 double tolerance, double rel_noise = 64.0 * 2.220446049250313e-16);
/// int |rho'| over [lo, hi] by trapezoid on the hypothesis grid.
double phase_variation(const PhaseFunction& phase, double lo, double hi);
}  // namespace detail

enum class DerivativeLemma { A1, A2, A3 };
std::string to_string(DerivativeLemma lemma);

struct DerivativeTestCertificate {
  DerivativeLemma lemma;
  std::map<std::string, double> parameters;
  double bound_value = 0.0;
  cplx integral_value;
  double integral_error = 0.0;
  double slack = 1.0;
  /// |integral| / bound.
  double ratio = 0.0;
  bool violated = false;
};

/// First-derivative test parameters: rho^{(i)} << Y/Q^i (i >= 2), w^{(j)} << Z/U^j, |rho'| >= R.
struct A1Params {
  double Q = 1.0;
  double U = 1.0;
  double Y = 0.0;
  double Z = 1.0;
  double R = 0.0;
  double A = 1.0;
};

inline constexpr double kA1Slack = 5.0;
inline constexpr double kA2Slack = 1.0;
inline constexpr double kA3Slack = 5.0;

/// Grid-checks |rho'| >= R, |rho^{(i)}| <= C Y/Q^i for i = 2..4 and
/// |w^{(j)}| <= C Z/U^j for j = 0..4 (C = hypothesis_constant), then compares
/// |I| with (b-a) Z (Y/(R^2Q^2) + 1/(RQ) + 1/(RU))^A.
DerivativeTestCertificate certify_A1(const OscillatorySpec& spec, const A1Params& params,
                                     double slack = kA1Slack, double hypothesis_constant = 1.0);

/// The phase of `spec` is 2 pi f. Grid-checks f'' >= lambda and compares
/// |int e(f) w| with 4 Var(w) / sqrt(pi lambda). The weight must be real.
DerivativeTestCertificate certify_A2(const OscillatorySpec& spec, double lambda, double slack = kA2Slack);

/// Real weight on a rectangle, with its mixed partial derivative.
struct Window2D {
  double x_lo, x_hi, y_lo, y_hi;
  std::function<double(double, double)> w;
  std::function<double(double, double)> w_xy;

  static Window2D product(const SmoothBump& wx, const SmoothBump& wy);
};

/// h(x, y) and its second partials; the integrand is e(h) = e^{2 pi i h}.
struct Phase2D {
  std::function<double(double, double)> h;
  std::function<double(double, double)> h_x;
  std::function<double(double, double)> h_y;
  std::function<double(double, double)> h_xx;
  std::function<double(double, double)> h_yy;
  std::function<double(double, double)> h_xy;
};

struct OscillatorySpec2D {
  Window2D window;
  Phase2D phase;
  double tolerance = 1e-9;
};

/// Iterated panel quadrature of int int w e(h).
QuadratureResult integrate_oscillatory_2d(const OscillatorySpec2D& spec);
/// V = int int |w_xy|.
double mixed_variation(const Window2D& window);

/// Grid-checks |h_xx| >= C lambda, |h_yy| >= C rho, |det h''| >= C lambda rho
/// and compares |I| with V / sqrt(lambda rho).
DerivativeTestCertificate certify_A3(const OscillatorySpec2D& spec, double lambda, double rho,
                                     double slack = kA3Slack, double hypothesis_constant = 1.0);

}  // namespace bdelta
