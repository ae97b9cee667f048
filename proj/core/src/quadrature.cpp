#include "besseldelta/quadrature.hpp"

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>

#include "besseldelta/errors.hpp"

namespace bdelta {

namespace {

constexpr int kNodes = 10;
constexpr int kMaxDepth = 48;
constexpr std::size_t kMaxPanels = 20'000'000;

struct Rule {
  std::array<double, kNodes> x;
  std::array<double, kNodes> w;
};

const Rule& gauss_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kNodes>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    Rule r{};
    int k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x[k] = -a[i];
      r.w[k++] = wt[i];
      r.x[k] = a[i];
      r.w[k++] = wt[i];
    }
    return r;
  }();
  return rule;
}

struct PanelValue {
  cplx value;
  double abs_value;
};

PanelValue gauss_panel(const std::function<cplx(double)>& f, double a, double b) {
  const Rule& r = gauss_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  cplx sum = 0.0;
  double abs_sum = 0.0;
  for (int k = 0; k < kNodes; ++k) {
    const cplx v = f(mid + half * r.x[k]) * r.w[k];
    sum += v;
    abs_sum += std::abs(v);
  }
  return {sum * half, abs_sum * std::abs(half)};
}

struct Accumulator {
  CompensatedComplexSum value;
  CompensatedSum error;
  std::size_t panels = 0;
};

void refine(const std::function<cplx(double)>& f, double a, double b, const PanelValue& coarse, double tol_density,
            double rel_noise, int depth, Accumulator& acc) {
  const double m = 0.5 * (a + b);
  const PanelValue left = gauss_panel(f, a, m);
  const PanelValue right = gauss_panel(f, m, b);
  const cplx fine = left.value + right.value;
  const double diff = std::abs(fine - coarse.value);
  const double rounding_floor = rel_noise * (left.abs_value + right.abs_value);
  if (diff <= tol_density * (b - a) || diff <= rounding_floor || depth >= kMaxDepth) {
    acc.value += fine;
    acc.error += diff;
    if (++acc.panels > kMaxPanels) throw ResourceError("quadrature panel budget exhausted", kMaxPanels);
    return;
  }
  refine(f, a, m, left, tol_density, rel_noise, depth + 1, acc);
  refine(f, m, b, right, tol_density, rel_noise, depth + 1, acc);
}

}  // namespace

PhaseFunction PhaseFunction::polynomial(std::vector<double> coeffs) {
  return PhaseFunction([c = std::move(coeffs)](double y, int order) {
    double r = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= order; --k) {
      double falling = 1.0;
      for (int m = 0; m < order; ++m) falling *= (k - m);
      r = r * y + c[k] * falling;
    }
    return r;
  });
}

PhaseFunction PhaseFunction::scaled(double scale) const {
  return PhaseFunction([fn = fn_, scale](double y, int order) { return scale * fn(y, order); });
}

PhaseFunction PhaseFunction::shifted(double constant) const {
  return PhaseFunction([fn = fn_, constant](double y, int order) {
    return order == 0 ? fn(y, 0) + constant : fn(y, order);
  });
}

OscillatorySpec OscillatorySpec::windowed(const SmoothBump& window, PhaseFunction phase, double tolerance) {
  OscillatorySpec s;
  s.lo = window.lo();
  s.hi = window.hi();
  s.amplitude = [window](double y) { return cplx(window.eval(y, 0), 0.0); };
  s.weight_derivative = [window](double y, int j) { return window.eval(y, j); };
  s.phase = std::move(phase);
  s.tolerance = tolerance;
  return s;
}

namespace detail {

std::vector<double> wavelength_panels(double lo, double hi, const std::function<double(double)>& dphase,
                                      double max_width) {
  std::vector<double> edges{lo};
  const double min_width = (hi - lo) * 1e-12;
  auto cap = [](double w, double d) { return d > 0.0 ? std::min(w, 0.5 * kPi / d) : w; };
  double y = lo;
  while (y < hi) {
    double w = cap(max_width, std::abs(dphase(y)));
    w = cap(w, std::abs(dphase(std::min(y + w, hi))));
    w = cap(w, std::abs(dphase(std::min(y + 0.5 * w, hi))));
    w = std::max(w, min_width);
    y = (y + w >= hi) ? hi : y + w;
    edges.push_back(y);
  }
  return edges;
}

QuadratureResult adaptive_panels(const std::function<cplx(double)>& f, const std::vector<double>& edges,
                                 double tolerance, double rel_noise) {
  Accumulator acc;
  const double length = edges.back() - edges.front();
  const double tol_density = length > 0.0 ? tolerance / length : tolerance;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const PanelValue coarse = gauss_panel(f, edges[i], edges[i + 1]);
    refine(f, edges[i], edges[i + 1], coarse, tol_density, rel_noise, 0, acc);
  }
  return {acc.value.value(), acc.error.value(), acc.panels};
}

double phase_variation(const PhaseFunction& phase, double lo, double hi) {
  const int n = kHypothesisGridPoints;
  const double h = (hi - lo) / (n - 1);
  CompensatedSum s;
  for (int k = 0; k < n; ++k) {
    const double v = std::abs(phase(lo + k * h, 1));
    s += (k == 0 || k == n - 1) ? 0.5 * v : v;
  }
  return s.value() * h;
}

}  // namespace detail

QuadratureResult integrate_oscillatory(const OscillatorySpec& spec) {
  if (!(spec.hi > spec.lo)) throw ParameterError("integration range must satisfy lo < hi");
  if (!spec.amplitude || !spec.phase.valid()) throw ParameterError("oscillatory spec needs amplitude and phase");
  if (!(spec.tolerance > 0.0)) throw ParameterError("tolerance must be positive");
  const double variation = detail::phase_variation(spec.phase, spec.lo, spec.hi);
  if (!(variation <= kPhaseBudgetRadians)) {
    const double panels = std::ceil(variation / (0.5 * kPi));
    throw ResourceError("phase variation " + std::to_string(variation) + " rad exceeds budget; " +
                            std::to_string(static_cast<long long>(panels)) + " panels required",
                        panels);
  }
  const auto& phase = spec.phase;
  const auto edges = detail::wavelength_panels(
      spec.lo, spec.hi, [&](double y) { return phase(y, 1); }, 0.25 * (spec.hi - spec.lo));
  // e^{i rho} carries an absolute phase error of about ulp(rho), so refinement
  // below that level only chases rounding.
  double max_phase = 1.0;
  for (int k = 0; k < kHypothesisGridPoints; ++k) {
    const double y = spec.lo + (spec.hi - spec.lo) * k / (kHypothesisGridPoints - 1);
    max_phase = std::max(max_phase, std::abs(phase(y, 0)));
  }
  const auto& amp = spec.amplitude;
  const auto integrand = [&](double y) { return amp(y) * std::polar(1.0, phase(y, 0)); };
  QuadratureResult r = detail::adaptive_panels(integrand, edges, spec.tolerance,
                                               64.0 * std::numeric_limits<double>::epsilon() * max_phase);
  if (r.error_estimate > spec.tolerance) {
    throw PrecisionLossError("oscillatory quadrature did not reach tolerance", r.error_estimate);
  }
  return r;
}

QuadratureResult integrate_oscillatory_2d(const OscillatorySpec2D& spec) {
  const Window2D& win = spec.window;
  const Phase2D& ph = spec.phase;
  if (!(win.x_hi > win.x_lo) || !(win.y_hi > win.y_lo)) throw ParameterError("empty 2-D rectangle");
  if (!(spec.tolerance > 0.0)) throw ParameterError("tolerance must be positive");
  const double x_len = win.x_hi - win.x_lo;
  const double y_len = win.y_hi - win.y_lo;

  constexpr int kProbe = 64;
  auto max_abs_hx = [&](double x) {
    double m = 0.0;
    for (int k = 0; k <= kProbe; ++k) m = std::max(m, std::abs(ph.h_x(x, win.y_lo + y_len * k / kProbe)));
    return kTwoPi * m;
  };
  double variation_bound = 0.0;
  double max_phase = 1.0;
  for (int k = 0; k <= kProbe; ++k) {
    const double x = win.x_lo + x_len * k / kProbe;
    variation_bound = std::max(variation_bound, max_abs_hx(x));
    for (int j = 0; j <= kProbe; ++j) max_phase = std::max(max_phase, kTwoPi * std::abs(ph.h(x, win.y_lo + y_len * j / kProbe)));
  }
  const double rel_noise = 64.0 * std::numeric_limits<double>::epsilon() * max_phase;
  if (variation_bound * x_len > kPhaseBudgetRadians) {
    throw ResourceError("2-D phase variation exceeds budget", variation_bound * x_len / (0.5 * kPi));
  }

  const double inner_tol = 0.25 * spec.tolerance / x_len;
  double worst_inner = 0.0;
  std::size_t panels = 0;
  auto inner = [&](double x) -> cplx {
    const auto edges = detail::wavelength_panels(
        win.y_lo, win.y_hi, [&](double y) { return kTwoPi * ph.h_y(x, y); }, 0.25 * y_len);
    const auto f = [&](double y) { return win.w(x, y) * std::polar(1.0, kTwoPi * ph.h(x, y)); };
    const QuadratureResult r = detail::adaptive_panels(f, edges, inner_tol, rel_noise);
    worst_inner = std::max(worst_inner, r.error_estimate);
    panels += r.panels;
    return r.value;
  };
  const auto outer_edges = detail::wavelength_panels(win.x_lo, win.x_hi, max_abs_hx, 0.25 * x_len);
  QuadratureResult r = detail::adaptive_panels(inner, outer_edges, 0.5 * spec.tolerance, rel_noise);
  r.error_estimate += worst_inner * x_len;
  r.panels += panels;
  if (r.error_estimate > spec.tolerance) {
    throw PrecisionLossError("2-D quadrature did not reach tolerance", r.error_estimate);
  }
  return r;
}

}  // namespace bdelta
