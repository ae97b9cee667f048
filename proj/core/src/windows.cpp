#include "besseldelta/windows.hpp"

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "besseldelta/errors.hpp"

namespace bdelta {

namespace {

using Poly = std::vector<double>;

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<double>(k);
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

double poly_eval(const Poly& p, double t) {
  double r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * t + *it;
  return r;
}

// Truncated Taylor series in one variable, enough orders for the window
// derivatives plus one for finite-difference checks.
constexpr int kJetOrder = kMaxWindowDerivative + 2;
using Jet = std::array<double, kJetOrder>;

Jet jet_variable(double x0) {
  Jet j{};
  j[0] = x0;
  j[1] = 1.0;
  return j;
}

Jet jet_recip(const Jet& a) {
  Jet r{};
  r[0] = 1.0 / a[0];
  for (int k = 1; k < kJetOrder; ++k) {
    double s = 0.0;
    for (int m = 1; m <= k; ++m) s += a[m] * r[k - m];
    r[k] = -s * r[0];
  }
  return r;
}

Jet jet_exp(const Jet& a) {
  Jet r{};
  r[0] = std::exp(a[0]);
  for (int k = 1; k < kJetOrder; ++k) {
    double s = 0.0;
    for (int m = 1; m <= k; ++m) s += m * a[m] * r[k - m];
    r[k] = s / k;
  }
  return r;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet r{};
  for (int i = 0; i < kJetOrder; ++i)
    for (int j = 0; i + j < kJetOrder; ++j) r[i + j] += a[i] * b[j];
  return r;
}

Jet jet_affine(const Jet& a, double scale, double shift) {
  Jet r{};
  for (int k = 0; k < kJetOrder; ++k) r[k] = a[k] * scale;
  r[0] += shift;
  return r;
}

// Taylor coefficients of ramp(u) = 1 / (1 + exp(1/u - 1/(1-u))) at u0 in (0,1).
Jet ramp_jet(double u0) {
  const Jet u = jet_variable(u0);
  const Jet inv_u = jet_recip(u);
  const Jet inv_1mu = jet_recip(jet_affine(u, -1.0, 1.0));
  Jet h{};
  for (int k = 0; k < kJetOrder; ++k) h[k] = inv_u[k] - inv_1mu[k];
  if (h[0] > 0.0) {
    const Jet e = jet_exp(jet_affine(h, -1.0, 0.0));
    return jet_mul(e, jet_recip(jet_affine(e, 1.0, 1.0)));
  }
  return jet_recip(jet_affine(jet_exp(h), 1.0, 1.0));
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void check_order(int j) {
  if (j < 0 || j > kMaxWindowDerivative) {
    throw UnsupportedOrderError("window derivative order must be in [0, 8], got " + std::to_string(j));
  }
}

}  // namespace

SmoothBump::SmoothBump(WindowProfile p, double lo, double hi, double delta, double sharpness)
    : profile_(p), lo_(lo), hi_(hi), delta_(delta), sharpness_(sharpness) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw ParameterError("window support must satisfy 0 < lo < hi");
  }
  if (p == WindowProfile::bump) {
    if (!(sharpness > 0.0)) throw ParameterError("bump sharpness must be positive");
    const Poly one_minus_t2_sq = {1.0, 0.0, -2.0, 0.0, 1.0};
    bump_polys_.push_back({1.0});
    for (int n = 0; n < kJetOrder; ++n) {
      const Poly& pn = bump_polys_.back();
      const Poly mix = {0.0, 4.0 * n - 2.0 * sharpness, 0.0, -4.0 * n};
      bump_polys_.push_back(poly_add(poly_mul(poly_derivative(pn), one_minus_t2_sq), poly_mul(mix, pn)));
    }
  }
}

SmoothBump SmoothBump::bump(double lo, double hi, double sharpness) {
  return SmoothBump(WindowProfile::bump, lo, hi, 1.0, sharpness);
}

SmoothBump SmoothBump::plateau(double lo, double hi, double delta) {
  if (!(hi > lo) || !(delta >= 4.0 / (hi - lo))) {
    throw ParameterError("plateau window needs delta >= 4/(hi-lo)");
  }
  return SmoothBump(WindowProfile::plateau, lo, hi, delta, 0.0);
}

SmoothBump plateau_window(double lo, double hi, double delta) {
  return SmoothBump::plateau(lo, hi, delta);
}

double SmoothBump::eval(double x, int deriv_order) const {
  check_order(deriv_order);
  if (!(x > lo_ && x < hi_)) return 0.0;
  return profile_ == WindowProfile::bump ? eval_bump(x, deriv_order) : eval_plateau(x, deriv_order);
}

double SmoothBump::eval_bump(double x, int j) const {
  const double width = hi_ - lo_;
  const double t = (2.0 * x - lo_ - hi_) / width;
  const double s = (1.0 - t) * (1.0 + t);
  if (!(s > 0.0)) return 0.0;
  const double log_mag = -sharpness_ / s - 2.0 * j * std::log(s);
  const double chain = std::pow(2.0 / width, j);
  return std::exp(log_mag) * poly_eval(bump_polys_[j], t) * chain;
}

double SmoothBump::eval_plateau(double x, int j) const {
  const double ramp_width = 1.0 / delta_;
  double u;
  double sign;
  if (x < lo_ + ramp_width) {
    u = (x - lo_) * delta_;
    sign = 1.0;
  } else if (x > hi_ - ramp_width) {
    u = (hi_ - x) * delta_;
    sign = -1.0;
  } else {
    return j == 0 ? 1.0 : 0.0;
  }
  if (u >= 1.0) return j == 0 ? 1.0 : 0.0;
  if (j == 0) {
    const double h = 1.0 / u - 1.0 / (1.0 - u);
    return h > 0.0 ? std::exp(-h) / (1.0 + std::exp(-h)) : 1.0 / (1.0 + std::exp(h));
  }
  const Jet r = ramp_jet(u);
  return r[j] * factorial(j) * std::pow(sign * delta_, j);
}

cplx SmoothBump::mellin(cplx s) const {
  // Composite 20-point Gauss; the integrand is flat at both ends, so 64 panels
  // reach rounding level for |s| of order 10.
  using Rule = boost::math::quadrature::gauss<double, 20>;
  constexpr int kPanels = 64;
  const cplx sm1 = s - 1.0;
  const double h = (hi_ - lo_) / kPanels;
  CompensatedComplexSum sum;
  for (int k = 0; k < kPanels; ++k) {
    const double mid = lo_ + (k + 0.5) * h;
    auto node = [&](double x, double w) {
      const double v = eval(x, 0);
      if (v != 0.0) sum += (0.5 * h * w * v) * std::exp(sm1 * std::log(x));
    };
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        node(mid, w[i]);
      } else {
        node(mid - 0.5 * h * x[i], w[i]);
        node(mid + 0.5 * h * x[i], w[i]);
      }
    }
  }
  return sum.value();
}

double SmoothBump::total_variation() const { return 2.0 * max_value(); }

double SmoothBump::max_value() const {
  return profile_ == WindowProfile::bump ? std::exp(-sharpness_) : 1.0;
}

}  // namespace bdelta
