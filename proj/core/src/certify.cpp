#include <boost/math/quadrature/gauss.hpp>
#include <limits>
#include <cmath>
#include <sstream>

#include "besseldelta/errors.hpp"
#include "besseldelta/quadrature.hpp"

namespace bdelta {

namespace {

std::vector<double> hypothesis_grid(double lo, double hi) {
  std::vector<double> g(kHypothesisGridPoints);
  for (int k = 0; k < kHypothesisGridPoints; ++k) g[k] = lo + (hi - lo) * k / (kHypothesisGridPoints - 1);
  return g;
}

std::string where(const char* what, int order, double y) {
  std::ostringstream os;
  os << what << " (derivative order " << order << ", at y = " << y << ")";
  return os.str();
}

// Total variation of a real C^1 function from the values at its extrema.
double total_variation(const std::function<double(double, int)>& w, double lo, double hi) {
  constexpr int n = 4 * kHypothesisGridPoints;
  const double h = (hi - lo) / n;
  std::vector<double> extrema{lo};
  double prev = w(lo, 1);
  for (int k = 1; k <= n; ++k) {
    const double y = lo + k * h;
    const double d = w(y, 1);
    if ((prev > 0.0 && d < 0.0) || (prev < 0.0 && d > 0.0)) {
      double a = y - h;
      double b = y;
      for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (a + b);
        if ((w(m, 1) > 0.0) == (w(a, 1) > 0.0)) a = m;
        else b = m;
      }
      extrema.push_back(0.5 * (a + b));
    }
    if (d != 0.0) prev = d;
  }
  extrema.push_back(hi);
  double v = 0.0;
  for (std::size_t i = 0; i + 1 < extrema.size(); ++i) v += std::abs(w(extrema[i + 1], 0) - w(extrema[i], 0));
  return v;
}

DerivativeTestCertificate finish(DerivativeLemma lemma, std::map<std::string, double> params, double bound,
                                 const QuadratureResult& q, double slack) {
  DerivativeTestCertificate c;
  c.lemma = lemma;
  c.parameters = std::move(params);
  c.bound_value = bound;
  c.integral_value = q.value;
  c.integral_error = q.error_estimate;
  c.slack = slack;
  c.ratio = bound > 0.0 ? std::abs(q.value) / bound : std::numeric_limits<double>::infinity();
  c.violated = std::abs(q.value) > slack * bound;
  return c;
}

}  // namespace

std::string to_string(DerivativeLemma lemma) {
  switch (lemma) {
    case DerivativeLemma::A1: return "A1";
    case DerivativeLemma::A2: return "A2";
    case DerivativeLemma::A3: return "A3";
  }
  return "?";
}

DerivativeTestCertificate certify_A1(const OscillatorySpec& spec, const A1Params& p, double slack,
                                     double hypothesis_constant) {
  if (!(p.R > 0.0)) throw HypothesisError("A1 needs |rho'| >= R > 0", 1, spec.lo);
  if (!(p.Q > 0.0 && p.U > 0.0 && p.Y > 0.0 && p.Z > 0.0 && p.A >= 0.0)) {
    throw ParameterError("A1 parameters Q, U, Y, Z must be positive and A >= 0");
  }
  if (!spec.weight_derivative) throw ParameterError("A1 needs weight derivatives");
  const double C = hypothesis_constant;
  for (double y : hypothesis_grid(spec.lo, spec.hi)) {
    if (std::abs(spec.phase(y, 1)) < p.R) throw HypothesisError(where("|rho'| < R", 1, y), 1, y);
    for (int i = 2; i <= kMaxPhaseDerivative; ++i) {
      if (std::abs(spec.phase(y, i)) > C * p.Y / std::pow(p.Q, i)) {
        throw HypothesisError(where("|rho^(i)| > Y/Q^i", i, y), i, y);
      }
    }
    for (int j = 0; j <= kMaxPhaseDerivative; ++j) {
      if (std::abs(spec.weight_derivative(y, j)) > C * p.Z / std::pow(p.U, j)) {
        throw HypothesisError(where("|w^(j)| > Z/U^j", j, y), j, y);
      }
    }
  }
  const double base = p.Y / (p.R * p.R * p.Q * p.Q) + 1.0 / (p.R * p.Q) + 1.0 / (p.R * p.U);
  const double bound = (spec.hi - spec.lo) * p.Z * std::pow(base, p.A);
  const QuadratureResult q = integrate_oscillatory(spec);
  return finish(DerivativeLemma::A1, {{"Q", p.Q}, {"U", p.U}, {"Y", p.Y}, {"Z", p.Z}, {"R", p.R}, {"A", p.A}},
                bound, q, slack);
}

DerivativeTestCertificate certify_A2(const OscillatorySpec& spec, double lambda, double slack) {
  if (!(lambda > 0.0)) throw ParameterError("A2 needs lambda > 0");
  if (!spec.weight_derivative) throw ParameterError("A2 needs a real weight with derivatives");
  for (double y : hypothesis_grid(spec.lo, spec.hi)) {
    const double f2 = spec.phase(y, 2) / kTwoPi;
    if (f2 < lambda * (1.0 - 1e-12)) throw HypothesisError(where("f'' < lambda", 2, y), 2, y);
  }
  const double V = total_variation(spec.weight_derivative, spec.lo, spec.hi);
  const double bound = 4.0 * V / std::sqrt(kPi * lambda);
  const QuadratureResult q = integrate_oscillatory(spec);
  return finish(DerivativeLemma::A2, {{"lambda", lambda}, {"V", V}}, bound, q, slack);
}

Window2D Window2D::product(const SmoothBump& wx, const SmoothBump& wy) {
  return {wx.lo(),
          wx.hi(),
          wy.lo(),
          wy.hi(),
          [wx, wy](double x, double y) { return wx.eval(x, 0) * wy.eval(y, 0); },
          [wx, wy](double x, double y) { return wx.eval(x, 1) * wy.eval(y, 1); }};
}

double mixed_variation(const Window2D& win) {
  // |w_xy| is only Lipschitz where w_xy changes sign, so use many small tensor panels.
  constexpr int kPanels = 64;
  using G = boost::math::quadrature::gauss<double, 10>;
  std::vector<double> nodes;
  std::vector<double> weights;
  for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
    nodes.push_back(-G::abscissa()[i]);
    nodes.push_back(G::abscissa()[i]);
    weights.push_back(G::weights()[i]);
    weights.push_back(G::weights()[i]);
  }
  const double hx = (win.x_hi - win.x_lo) / kPanels;
  const double hy = (win.y_hi - win.y_lo) / kPanels;
  CompensatedSum total;
  for (int i = 0; i < kPanels; ++i) {
    for (int j = 0; j < kPanels; ++j) {
      const double cx = win.x_lo + (i + 0.5) * hx;
      const double cy = win.y_lo + (j + 0.5) * hy;
      double panel = 0.0;
      for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = 0; b < nodes.size(); ++b)
          panel += weights[a] * weights[b] *
                   std::abs(win.w_xy(cx + 0.5 * hx * nodes[a], cy + 0.5 * hy * nodes[b]));
      total += panel * 0.25 * hx * hy;
    }
  }
  return total.value();
}

DerivativeTestCertificate certify_A3(const OscillatorySpec2D& spec, double lambda, double rho, double slack,
                                     double hypothesis_constant) {
  if (!(lambda > 0.0 && rho > 0.0)) throw ParameterError("A3 needs lambda, rho > 0");
  const Window2D& w = spec.window;
  const Phase2D& h = spec.phase;
  const double C = hypothesis_constant;
  const auto gx = hypothesis_grid(w.x_lo, w.x_hi);
  const auto gy = hypothesis_grid(w.y_lo, w.y_hi);
  for (double x : gx) {
    for (double y : gy) {
      const double hxx = h.h_xx(x, y);
      const double hyy = h.h_yy(x, y);
      const double hxy = h.h_xy(x, y);
      if (std::abs(hxx) < C * lambda) throw HypothesisError(where("|h_xx| < lambda", 2, x), 2, x);
      if (std::abs(hyy) < C * rho) throw HypothesisError(where("|h_yy| < rho", 2, x), 2, x);
      if (std::abs(hxx * hyy - hxy * hxy) < C * lambda * rho) {
        throw HypothesisError(where("|det h''| < lambda rho", 2, x), 2, x);
      }
    }
  }
  const double V = mixed_variation(w);
  const double bound = V / std::sqrt(lambda * rho);
  const QuadratureResult q = integrate_oscillatory_2d(spec);
  return finish(DerivativeLemma::A3, {{"lambda", lambda}, {"rho", rho}, {"V", V}}, bound, q, slack);
}

}  // namespace bdelta
