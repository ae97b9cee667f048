#pragma once

#include <vector>

#include "besseldelta/numeric.hpp"

namespace bdelta {

inline constexpr int kMaxWindowDerivative = 8;

enum class WindowProfile { bump, plateau };

/// Compactly supported smooth weight on (lo, hi).
///
/// bump:    exp(-c / (1 - t^2)) with t = (2x - lo - hi) / (hi - lo); c = 1 is the
///          canonical U.
/// plateau: identically 1 on [lo + 1/delta, hi - 1/delta], joined to 0 by the
///          ramp B(u) / (B(u) + B(1 - u)), B(u) = exp(-1/u), over width 1/delta.
class SmoothBump {
 public:
  static SmoothBump bump(double lo, double hi, double sharpness = 1.0);
  /// exp(-1/(1-t^2)) on (1, 2).
  static SmoothBump canonical() { return bump(1.0, 2.0); }
  static SmoothBump plateau(double lo, double hi, double delta);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  WindowProfile profile() const noexcept { return profile_; }
  /// Derivative scale: delta for plateau windows, 1 for bumps.
  double delta() const noexcept { return delta_; }
  double sharpness() const noexcept { return sharpness_; }

  /// j-th derivative at x, 0 <= j <= kMaxWindowDerivative.
  double eval(double x, int deriv_order = 0) const;
  double operator()(double x) const { return eval(x, 0); }

  /// int w(x) x^{s-1} dx.
  cplx mellin(cplx s) const;
  /// int |w'(x)| dx, exact for both recipes.
  double total_variation() const;
  double max_value() const;

 private:
  SmoothBump(WindowProfile p, double lo, double hi, double delta, double sharpness);

  double eval_bump(double x, int j) const;
  double eval_plateau(double x, int j) const;

  WindowProfile profile_;
  double lo_;
  double hi_;
  double delta_;
  double sharpness_;
  // Numerators of the bump derivatives, f^{(n)}(t) = P_n(t) f(t) / (1-t^2)^{2n}.
  std::vector<std::vector<double>> bump_polys_;
};

/// V-type window with V = 1 on [lo + 1/delta, hi - 1/delta]; requires delta >= 4/(hi-lo).
SmoothBump plateau_window(double lo, double hi, double delta);

}  // namespace bdelta
