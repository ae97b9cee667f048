#include "besseldelta/special_fn.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "besseldelta/errors.hpp"

namespace bdelta {

namespace {

namespace mp = boost::multiprecision;
using quad = mp::float128;
using wide = mp::cpp_bin_float_100;

// Minimal complex arithmetic over a multiprecision real type; std::complex is
// unspecified for non-builtin element types.
template <class R>
struct Cx {
  R re;
  R im;
};

template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cx<R> operator*(const Cx<R>& a, const R& s) {
  return {a.re * s, a.im * s};
}
template <class R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  const R den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
template <class R>
R cabs(const Cx<R>& a) {
  using std::sqrt;
  return sqrt(a.re * a.re + a.im * a.im);
}
template <class R>
Cx<R> cexp(const Cx<R>& a) {
  using std::cos;
  using std::exp;
  using std::sin;
  const R m = exp(a.re);
  return {m * cos(a.im), m * sin(a.im)};
}
template <class R>
Cx<R> clog(const Cx<R>& a) {
  using std::atan2;
  using std::log;
  return {log(cabs(a)), atan2(a.im, a.re)};
}

template <class R>
double to_double(const R& r) {
  return static_cast<double>(r);
}

// ln Gamma(z) for Re z > 0 by upward shift and Stirling's series. Only used
// through exp(), so the branch of the logarithm is irrelevant.
template <class R>
Cx<R> log_gamma(Cx<R> z) {
  using std::log;
  const R eps = std::numeric_limits<R>::epsilon();
  const double shift_to = 1.3 * std::numeric_limits<R>::digits10 + 10.0;
  Cx<R> shifted_logs{R(0), R(0)};
  while (to_double(cabs(z)) < shift_to) {
    shifted_logs = shifted_logs + clog(z);
    z.re += 1;
  }
  const R half(0.5);
  const R pi = boost::math::constants::pi<R>();
  Cx<R> result = (z - Cx<R>{half, R(0)}) * clog(z) - z;
  result.re += log(2 * pi) / 2;
  const Cx<R> zinv = Cx<R>{R(1), R(0)} / z;
  const Cx<R> zinv2 = zinv * zinv;
  Cx<R> power = zinv;
  for (int k = 1; k < 200; ++k) {
    const R coeff = boost::math::bernoulli_b2n<R>(k) / R((2 * k) * (2 * k - 1));
    const Cx<R> term = power * coeff;
    result = result + term;
    if (cabs(term) < eps * cabs(result)) break;
    power = power * zinv2;
  }
  return result - shifted_logs;
}

// Scale against which J_nu(x) errors are measured: |J| itself away from the
// oscillatory region, the envelope on it.
double bessel_scale(const BesselOrder& nu, double x, double value_abs) {
  if (x > nu.magnitude() + 1.0) {
    const double envelope = std::sqrt(2.0 / (kPi * x)) * std::cosh(kPi * nu.imag_part() / 2.0);
    return std::max(value_abs, envelope);
  }
  return value_abs;
}

template <class R>
BesselEvaluation series_real(double nu, double x) {
  using std::abs;
  using std::pow;
  const R eps = std::numeric_limits<R>::epsilon();
  const R xr(x);
  const R half = xr / 2;
  const R z = -(half * half);
  const R nur(nu);
  R term(1);
  R sum(1);
  R abs_sum(1);
  for (int k = 1; k < 100000; ++k) {
    term *= z / (R(k) * (R(k) + nur));
    sum += term;
    abs_sum += abs(term);
    if (k > x / 2.0 && abs(term) < eps * abs(sum)) break;
  }
  const R pref = pow(half, nur) / boost::math::tgamma(nur + 1);
  const double value = to_double(pref * sum);
  const double abs_error = to_double(abs(pref) * abs_sum * eps) * 8.0;
  const BesselOrder order = BesselOrder::real(nu);
  const double scale = bessel_scale(order, x, std::abs(value));
  return {cplx(value, 0.0), scale > 0 ? abs_error / scale : abs_error, BesselBranch::series};
}

template <class R>
BesselEvaluation series_complex(const BesselOrder& nu, double x) {
  using std::abs;
  using std::log;
  const R eps = std::numeric_limits<R>::epsilon();
  const R half = R(x) / 2;
  const R z = -(half * half);
  const Cx<R> nuc{R(nu.real_part()), R(nu.imag_part())};
  Cx<R> term{R(1), R(0)};
  Cx<R> sum{R(1), R(0)};
  R abs_sum(1);
  for (int k = 1; k < 100000; ++k) {
    const Cx<R> den{R(k) * (R(k) + nuc.re), R(k) * nuc.im};
    term = Cx<R>{term.re * z, term.im * z} / den;
    sum = sum + term;
    const R mag = cabs(term);
    abs_sum += mag;
    if (k > x / 2.0 && mag < eps * cabs(sum)) break;
  }
  // (x/2)^nu / Gamma(nu + 1)
  const Cx<R> log_pref = nuc * Cx<R>{log(half), R(0)} - log_gamma(Cx<R>{nuc.re + 1, nuc.im});
  const Cx<R> pref = cexp(log_pref);
  const Cx<R> v = pref * sum;
  const cplx value(to_double(v.re), to_double(v.im));
  const double abs_error = to_double(cabs(pref) * abs_sum * eps) * 8.0;
  const double scale = bessel_scale(nu, x, std::abs(value));
  return {value, scale > 0 ? abs_error / scale : abs_error, BesselBranch::series};
}

template <class R>
BesselEvaluation series_any(const BesselOrder& nu, double x) {
  if (nu.is_real()) {
    const double v = nu.real_part();
    if (v < 0 && v == std::floor(v)) {
      // J_{-n} = (-1)^n J_n
      BesselEvaluation r = series_real<R>(-v, x);
      if (std::fmod(-v, 2.0) != 0.0) r.value = -r.value;
      return r;
    }
    return series_real<R>(v, x);
  }
  return series_complex<R>(nu, x);
}

BesselEvaluation recurrence_upward(const BesselOrder& nu, double x) {
  const double v = nu.real_part();
  const double base = v - std::floor(v);
  const int steps = static_cast<int>(std::floor(v));
  BesselEvaluation j0 = detail::bessel_j_asymptotic(BesselOrder::real(base), x);
  if (steps == 0) return {j0.value, j0.error_estimate, BesselBranch::recurrence};
  BesselEvaluation j1 = detail::bessel_j_asymptotic(BesselOrder::real(base + 1.0), x);
  double prev = j0.value.real();
  double cur = j1.value.real();
  for (int k = 1; k < steps; ++k) {
    const double next = 2.0 * (base + k) / x * cur - prev;
    prev = cur;
    cur = next;
  }
  const double err = (std::max(j0.error_estimate, j1.error_estimate) + steps * 4e-16) * 2.0;
  return {cplx(cur, 0.0), err, BesselBranch::recurrence};
}

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

BesselKernel BesselKernel::holomorphic(int kappa) {
  if (kappa < 4 || kappa % 2 != 0) {
    throw ParameterError("holomorphic kernel weight must be an even integer >= 4, got " +
                         std::to_string(kappa));
  }
  return BesselKernel(HolomorphicKernel{kappa});
}

BesselKernel BesselKernel::maass(double mu, int epsilon) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ParameterError("Maass spectral parameter must be real and positive (tempered case)");
  }
  if (epsilon != 1 && epsilon != -1) {
    throw ParameterError("Maass reflection sign must be +1 or -1");
  }
  return BesselKernel(MaassKernel{mu, epsilon});
}

BesselKernel BesselKernel::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParameterError("kernel must look like holo:12 or maass:1:+1");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  try {
    if (kind == "holo") return holomorphic(std::stoi(rest));
    if (kind == "maass") {
      const auto c2 = rest.find(':');
      const double mu = std::stod(rest.substr(0, c2));
      const int eps = c2 == std::string::npos ? 1 : std::stoi(rest.substr(c2 + 1));
      return maass(mu, eps);
    }
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw ParameterError("cannot parse kernel '" + text + "'");
}

BesselOrder BesselKernel::order() const {
  if (is_holomorphic()) return BesselOrder::real(holo().kappa - 1.0);
  return BesselOrder::imaginary(2.0 * maass_params().mu);
}

std::string BesselKernel::to_string() const {
  if (is_holomorphic()) return "holo:" + std::to_string(holo().kappa);
  const auto& m = maass_params();
  return "maass:" + format_double(m.mu) + (m.epsilon > 0 ? ":+1" : ":-1");
}

double hankel_symbol(double nu, int j) {
  return hankel_symbol(BesselOrder::real(nu), j);
}

double hankel_symbol(const BesselOrder& nu, int j) {
  const double four_nu2 = nu.four_nu_squared();
  double product = 1.0;
  for (int m = 1; m <= j; ++m) {
    const double odd = 2.0 * m - 1.0;
    product *= (four_nu2 - odd * odd) / (4.0 * m);
  }
  return product;
}

namespace detail {

BesselEvaluation bessel_j_series(const BesselOrder& nu, double x, bool wide_precision) {
  BesselEvaluation r = wide_precision ? series_any<wide>(nu, x) : series_any<quad>(nu, x);
  r.branch = wide_precision ? BesselBranch::series_wide : BesselBranch::series;
  return r;
}

BesselEvaluation bessel_j_asymptotic(const BesselOrder& nu, double x) {
  const double four_nu2 = nu.four_nu_squared();
  // A = sum t_j i^j, B = sum t_j (-i)^j with t_j = (nu,j) / (2x)^j.
  cplx a_sum(1.0, 0.0);
  cplx b_sum(1.0, 0.0);
  double t = 1.0;
  double omitted = 0.0;
  const cplx i_unit(0.0, 1.0);
  cplx ipow(1.0, 0.0);
  // Terms may grow while j < |4nu^2| / (8x); only growth after that means divergence.
  const double growth_end = std::abs(four_nu2) / (8.0 * x) + 1.0;
  for (int j = 1; j < 200; ++j) {
    const double odd = 2.0 * j - 1.0;
    const double next = t * (four_nu2 - odd * odd) / (8.0 * j * x);
    if (j > growth_end && std::abs(next) >= std::abs(t)) {
      omitted = std::abs(next);
      break;
    }
    ipow *= i_unit;
    a_sum += next * ipow;
    b_sum += next * std::conj(ipow);
    t = next;
    if (std::abs(next) < 1e-18 * std::max(std::abs(a_sum), std::abs(b_sum))) {
      omitted = std::abs(next);
      break;
    }
    if (next == 0.0) break;
  }
  const double re = nu.real_part();
  const double im = nu.imag_part();
  // e(-(2nu+1)/8) and e((2nu+1)/8) for nu = re + i im
  const double arg = kPi * (2.0 * re + 1.0) / 4.0;
  const cplx pa = std::exp(kPi * im / 2.0) * cplx(std::cos(arg), -std::sin(arg));
  const cplx pb = std::exp(-kPi * im / 2.0) * cplx(std::cos(arg), std::sin(arg));
  const double norm = 1.0 / std::sqrt(kTwoPi * x);
  const cplx eix(std::cos(x), std::sin(x));
  const cplx value = norm * (pa * eix * a_sum + pb * std::conj(eix) * b_sum);
  const double scale = norm * (std::abs(pa) * std::abs(a_sum) + std::abs(pb) * std::abs(b_sum));
  const double abs_err = norm * (std::abs(pa) + std::abs(pb)) * omitted +
                         scale * 4.0 * std::numeric_limits<double>::epsilon();
  return {value, abs_err / scale, BesselBranch::asymptotic};
}

}  // namespace detail

BesselEvaluation bessel_j_eval(const BesselOrder& nu, double x, double rel_tol) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_j requires x > 0, got " + format_double(x));
  }
  double best = std::numeric_limits<double>::infinity();
  if (x < kBesselCrossover) {
    BesselEvaluation s = detail::bessel_j_series(nu, x, false);
    if (s.error_estimate <= rel_tol) return s;
    best = std::min(best, s.error_estimate);
    s = detail::bessel_j_series(nu, x, true);
    if (s.error_estimate <= rel_tol) return s;
    best = std::min(best, s.error_estimate);
    throw PrecisionLossError("bessel_j: tolerance unreachable at working precision", best);
  }
  BesselEvaluation a = detail::bessel_j_asymptotic(nu, x);
  if (a.error_estimate <= rel_tol) return a;
  best = std::min(best, a.error_estimate);
  if (nu.is_real() && nu.real_part() > 0.0 && nu.real_part() < x) {
    BesselEvaluation r = recurrence_upward(nu, x);
    if (r.error_estimate <= rel_tol) return r;
    best = std::min(best, r.error_estimate);
  }
  // The ascending series loses about x / ln(10) digits to cancellation.
  if (x < 80.0) {
    BesselEvaluation s = detail::bessel_j_series(nu, x, false);
    if (s.error_estimate <= rel_tol) return s;
    best = std::min(best, s.error_estimate);
  }
  if (x < 230.0) {
    BesselEvaluation s = detail::bessel_j_series(nu, x, true);
    if (s.error_estimate <= rel_tol) return s;
    best = std::min(best, s.error_estimate);
  }
  throw PrecisionLossError("bessel_j: no branch reaches tolerance (transition zone)", best);
}

cplx bessel_j(const BesselOrder& nu, double x) {
  return bessel_j_eval(nu, x).value;
}

double bessel_k_imaginary(double t, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_k requires x > 0, got " + format_double(x));
  }
  if (t == 0.0) t = 1e-300;  // K_0 limit is not needed by any caller
  const double four_nu2 = -4.0 * t * t;
  if (x >= kBesselCrossover) {
    double sum = 1.0;
    double term = 1.0;
    double omitted = 0.0;
    const double growth_end = std::abs(four_nu2) / (8.0 * x) + 1.0;
    for (int k = 1; k < 200; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double next = term * (four_nu2 - odd * odd) / (8.0 * k * x);
      if (k > growth_end && std::abs(next) >= std::abs(term)) {
        omitted = std::abs(next);
        break;
      }
      sum += next;
      term = next;
      if (std::abs(next) < 1e-18 * std::abs(sum)) break;
    }
    if (omitted <= kBesselRelTol * std::abs(sum)) {
      return std::sqrt(kPi / (2.0 * x)) * std::exp(-x) * sum;
    }
  }
  // K_{it}(x) = -pi Im(I_{it}(x)) / sinh(pi t), with I from its ascending series.
  using std::abs;
  using std::log;
  const wide eps = std::numeric_limits<wide>::epsilon();
  const wide half = wide(x) / 2;
  const wide z = half * half;
  const Cx<wide> nuc{wide(0), wide(t)};
  Cx<wide> term{wide(1), wide(0)};
  Cx<wide> sum{wide(1), wide(0)};
  wide abs_sum(1);
  for (int k = 1; k < 100000; ++k) {
    const Cx<wide> den{wide(k) * wide(k), wide(k) * nuc.im};
    term = Cx<wide>{term.re * z, term.im * z} / den;
    sum = sum + term;
    const wide mag = cabs(term);
    abs_sum += mag;
    if (mag < eps * cabs(sum)) break;
  }
  const Cx<wide> log_pref =
      nuc * Cx<wide>{log(half), wide(0)} - log_gamma(Cx<wide>{wide(1), nuc.im});
  const Cx<wide> pref = cexp(log_pref);
  const Cx<wide> ival = pref * sum;
  const wide sinh_pt = boost::multiprecision::sinh(boost::math::constants::pi<wide>() * wide(t));
  const double value = to_double(-boost::math::constants::pi<wide>() * ival.im / sinh_pt);
  const double abs_error =
      to_double(boost::math::constants::pi<wide>() * cabs(pref) * abs_sum * eps / abs(sinh_pt)) * 8.0;
  if (abs_error > kBesselRelTol * std::abs(value)) {
    throw PrecisionLossError("bessel_k: tolerance unreachable at working precision",
                             abs_error / std::abs(value));
  }
  return value;
}

cplx kernel_j_g(const BesselKernel& kernel, double x) {
  if (kernel.is_holomorphic()) {
    const int kappa = kernel.holo().kappa;
    const double i_kappa = (kappa % 4 == 0) ? 1.0 : -1.0;
    return kTwoPi * i_kappa * bessel_j(kernel.order(), x);
  }
  const double mu = kernel.maass_params().mu;
  const BesselOrder nu = kernel.order();
  // -pi / sin(pi i mu) with sin(pi i mu) = i sinh(pi mu)
  const cplx pref = -kPi / cplx(0.0, std::sinh(kPi * mu));
  return pref * (bessel_j(nu, x) - bessel_j(nu.negated(), x));
}

double kernel_k_g(const BesselKernel& kernel, double x) {
  if (kernel.is_holomorphic()) return 0.0;
  const auto& m = kernel.maass_params();
  return 4.0 * m.epsilon * std::cosh(kPi * m.mu) * bessel_k_imaginary(2.0 * m.mu, x);
}

namespace {

// j-th Hankel coefficient pair (a_j, b_j) of J_nu, with the x^{-1/2} factored out.
std::pair<cplx, cplx> hankel_pair(const BesselOrder& nu, int j) {
  const double h = hankel_symbol(nu, j) / std::ldexp(1.0, j);
  static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx ij = powers[j % 4];
  const double re = nu.real_part();
  const double im = nu.imag_part();
  const double arg = kPi * (2.0 * re + 1.0) / 4.0;
  const cplx pa = std::exp(kPi * im / 2.0) * cplx(std::cos(arg), -std::sin(arg));
  const cplx pb = std::exp(-kPi * im / 2.0) * cplx(std::cos(arg), std::sin(arg));
  const double norm = 1.0 / std::sqrt(kTwoPi);
  return {h * ij * pa * norm, h * std::conj(ij) * pb * norm};
}

}  // namespace

AsymptoticCoefficients asymptotic_kernel_expansion(const BesselKernel& kernel, int J) {
  if (J < 0) throw ParameterError("expansion order J must be >= 0");
  AsymptoticCoefficients out{kernel, J, {}, {}};
  out.c.reserve(J + 1);
  out.d.reserve(J + 1);
  for (int j = 0; j <= J; ++j) {
    if (kernel.is_holomorphic()) {
      const int kappa = kernel.holo().kappa;
      const double pref = kTwoPi * ((kappa % 4 == 0) ? 1.0 : -1.0);
      const auto [a, b] = hankel_pair(kernel.order(), j);
      out.c.push_back(pref * a);
      out.d.push_back(pref * b);
    } else {
      const double mu = kernel.maass_params().mu;
      const cplx pref = -kPi / cplx(0.0, std::sinh(kPi * mu));
      const auto [ap, bp] = hankel_pair(kernel.order(), j);
      const auto [am, bm] = hankel_pair(kernel.order().negated(), j);
      out.c.push_back(pref * (ap - am));
      out.d.push_back(pref * (bp - bm));
    }
  }
  return out;
}

cplx AsymptoticCoefficients::evaluate(double y) const {
  const cplx eiy(std::cos(y), std::sin(y));
  cplx plus = 0.0;
  cplx minus = 0.0;
  double ypow = 1.0 / std::sqrt(y);
  for (int j = 0; j <= j_max; ++j) {
    plus += c[j] * ypow;
    minus += d[j] * ypow;
    ypow /= y;
  }
  return eiy * plus + std::conj(eiy) * minus;
}

KernelSplit::KernelSplit(const BesselKernel& kernel, int max_terms)
    : coeffs_(asymptotic_kernel_expansion(kernel, max_terms)) {}

KernelEnvelope KernelSplit::at(double y) const {
  cplx plus = coeffs_.c[0];
  cplx minus = coeffs_.d[0];
  double last = std::abs(coeffs_.c[0]) + std::abs(coeffs_.d[0]);
  double omitted = 0.0;
  double ypow = 1.0;
  const double growth_end = std::abs(kernel().order().four_nu_squared()) / (8.0 * y) + 1.0;
  for (int j = 1; j <= coeffs_.j_max; ++j) {
    ypow /= y;
    const cplx tc = coeffs_.c[j] * ypow;
    const cplx td = coeffs_.d[j] * ypow;
    const double mag = std::abs(tc) + std::abs(td);
    if (j > growth_end && mag >= last) {
      omitted = mag;
      break;
    }
    plus += tc;
    minus += td;
    last = mag;
    if (mag < 1e-18 * (std::abs(plus) + std::abs(minus))) break;
    if (j == coeffs_.j_max) omitted = mag;
  }
  const double root = 1.0 / std::sqrt(y);
  const double scale = std::abs(plus) + std::abs(minus);
  return {plus * root, minus * root,
          omitted / scale + 4.0 * std::numeric_limits<double>::epsilon()};
}

double KernelSplit::min_argument(double rel_tol) const {
  double y = kBesselCrossover;
  while (y < 1e8) {
    if (at(y).rel_error <= rel_tol) return y;
    y *= 1.1;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace bdelta
