#include "besseldelta/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "besseldelta/errors.hpp"

namespace bdelta {

namespace {

constexpr double kTol1D = 1e-11;
constexpr double kTol2D = 1e-7;
// grid extrema are nudged by this much so the checks at constant 1 pass on the same grid
constexpr double kNudge = 1e-9;

std::string fmt_key(const char* family, const std::vector<std::pair<const char*, double>>& kv) {
  std::string s = family;
  char buf[64];
  for (const auto& [k, v] : kv) {
    std::snprintf(buf, sizeof buf, ":%s=%+.6e", k, v);
    s += buf;
  }
  return s;
}

std::vector<double> grid(double lo, double hi) {
  std::vector<double> g(kHypothesisGridPoints);
  for (int k = 0; k < kHypothesisGridPoints; ++k) g[k] = lo + (hi - lo) * k / (kHypothesisGridPoints - 1);
  return g;
}

// A1 parameters read off the grid: Q = 1, Y from rho'' .. rho'''', R = min |rho'|,
// Z = max |w|, U the largest scale with |w^(j)| <= Z / U^j.
A1Params derive_a1(const PhaseFunction& rho, const SmoothBump& w, double A) {
  A1Params p;
  p.Q = 1.0;
  p.A = A;
  double R = INFINITY, Y = 0.0, Z = 0.0;
  std::vector<double> wmax(kMaxPhaseDerivative + 1, 0.0);
  for (double y : grid(w.lo(), w.hi())) {
    R = std::min(R, std::abs(rho(y, 1)));
    for (int i = 2; i <= kMaxPhaseDerivative; ++i) Y = std::max(Y, std::abs(rho(y, i)));
    for (int j = 0; j <= kMaxPhaseDerivative; ++j) wmax[j] = std::max(wmax[j], std::abs(w.eval(y, j)));
  }
  Z = wmax[0];
  double U = INFINITY;
  for (int j = 1; j <= kMaxPhaseDerivative; ++j) U = std::min(U, std::pow(Z / wmax[j], 1.0 / j));
  p.R = R * (1.0 - kNudge);
  p.Y = Y * (1.0 + kNudge);
  p.Z = Z * (1.0 + kNudge);
  p.U = U * (1.0 - kNudge);
  return p;
}

BatteryCase a1_case(std::string key, std::map<std::string, double> params, PhaseFunction rho, double A) {
  return {std::move(key), std::move(params), [rho = std::move(rho), A] {
            const SmoothBump w = SmoothBump::canonical();
            const A1Params p = derive_a1(rho, w, A);
            return certify_A1(OscillatorySpec::windowed(w, rho, kTol1D), p);
          }};
}

std::map<std::string, double> parse_line(const std::string& line, std::string& family) {
  std::map<std::string, double> kv;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw ParameterError("grid token '" + tok + "' is not key=value");
    const std::string k = tok.substr(0, eq);
    const std::string v = tok.substr(eq + 1);
    if (k == "family") {
      family = v;
      continue;
    }
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size()) throw ParameterError("grid value '" + v + "' for " + k + " is not a number");
    kv[k] = x;
  }
  return kv;
}

double need(const std::map<std::string, double>& kv, const char* k) {
  const auto it = kv.find(k);
  if (it == kv.end()) throw ParameterError(std::string("grid line is missing ") + k);
  return it->second;
}

}  // namespace

std::string to_string(CaseStatus status) {
  switch (status) {
    case CaseStatus::ok: return "ok";
    case CaseStatus::violated: return "violated";
    case CaseStatus::hypothesis_error: return "hypothesis_error";
  }
  return "?";
}

BoundBatteryReport run_battery(DerivativeLemma lemma, const BatteryGrid& grid_in) {
  if (grid_in.cases.empty()) throw ParameterError("battery grid is empty");
  std::vector<const BatteryCase*> order;
  std::set<std::string> keys;
  for (const auto& c : grid_in.cases) {
    if (!keys.insert(c.key).second) throw ParameterError("duplicate battery key " + c.key);
    order.push_back(&c);
  }
  std::sort(order.begin(), order.end(), [](const BatteryCase* a, const BatteryCase* b) { return a->key < b->key; });

  BoundBatteryReport rep;
  rep.lemma = lemma;
  rep.grid_description = grid_in.description;
  for (const BatteryCase* c : order) {
    CaseRecord rec;
    rec.key = c->key;
    rec.params = c->params;
    try {
      const DerivativeTestCertificate cert = c->run();
      if (cert.lemma != lemma) throw ParameterError("case " + c->key + " certifies " + to_string(cert.lemma));
      for (const auto& [k, v] : cert.parameters) rec.params[k] = v;
      rec.integral_abs = std::abs(cert.integral_value);
      rec.bound = cert.bound_value;
      rec.ratio = cert.ratio;
      rec.slack = cert.slack;
      rec.status = cert.violated ? CaseStatus::violated : CaseStatus::ok;
      rep.max_ratio = std::max(rep.max_ratio, rec.ratio);
      if (cert.violated) ++rep.violations;
    } catch (const HypothesisError& e) {
      rec.status = CaseStatus::hypothesis_error;
      rec.message = e.what();
      ++rep.hypothesis_errors;
    }
    ++rep.cases_run;
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

std::string to_json_lines(const BoundBatteryReport& rep) {
  std::string out;
  for (const auto& r : rep.records) {
    nlohmann::ordered_json j;
    j["lemma"] = to_string(rep.lemma);
    j["key"] = r.key;
    j["status"] = to_string(r.status);
    j["params"] = r.params;
    j["integral_abs"] = r.integral_abs;
    j["bound"] = r.bound;
    j["ratio"] = r.ratio;
    j["slack"] = r.slack;
    if (!r.message.empty()) j["message"] = r.message;
    out += j.dump();
    out += '\n';
  }
  nlohmann::ordered_json s;
  s["summary"] = true;
  s["lemma"] = to_string(rep.lemma);
  s["grid"] = rep.grid_description;
  s["cases"] = rep.cases_run;
  s["violations"] = rep.violations;
  s["hypothesis_errors"] = rep.hypothesis_errors;
  s["max_ratio"] = rep.max_ratio;
  out += s.dump();
  out += '\n';
  return out;
}

BatteryCase a2_case(double T, double x0) {
  return {fmt_key("a2", {{"T", T}, {"x0", x0}}), {{"T", T}, {"x0", x0}}, [T, x0] {
            const PhaseFunction f = PhaseFunction::polynomial({T * x0 * x0, -2.0 * T * x0, T}).scaled(kTwoPi);
            return certify_A2(OscillatorySpec::windowed(SmoothBump::canonical(), f, kTol1D), 2.0 * T);
          }};
}

BatteryCase a1_log_case(double t, double c1, double c2, double A) {
  PhaseFunction rho([t, c1, c2](double y, int order) {
    const double s = std::sqrt(y);
    switch (order) {
      case 0: return -t * std::log(y) + kTwoPi * (c1 * s + c2 * y);
      case 1: return -t / y + kPi * c1 / s + kTwoPi * c2;
      case 2: return t / (y * y) - 0.5 * kPi * c1 / (y * s);
      case 3: return -2.0 * t / (y * y * y) + 0.75 * kPi * c1 / (y * y * s);
      case 4: return 6.0 * t / (y * y * y * y) - 1.875 * kPi * c1 / (y * y * y * s);
      default: throw UnsupportedOrderError("phase derivative order above 4");
    }
  });
  return a1_case(fmt_key("a1-log", {{"t", t}, {"c1", c1}, {"c2", c2}, {"A", A}}),
                 {{"t", t}, {"c1", c1}, {"c2", c2}, {"A", A}}, std::move(rho), A);
}

BatteryCase a1_cubic_case(double alpha, double gamma, double A) {
  return a1_case(fmt_key("a1-cubic", {{"alpha", alpha}, {"gamma", gamma}, {"A", A}}),
                 {{"alpha", alpha}, {"gamma", gamma}, {"A", A}}, PhaseFunction::polynomial({0.0, alpha, 0.0, gamma}),
                 A);
}

BatteryCase a3_h_case(double t, double K, double x, double a, double v, double lo, double hi) {
  const double beta = K * K / x;
  const double kappa = K * v / x;
  const double c = t / kTwoPi;
  Phase2D h;
  h.h = [=](double p, double q) {
    return -c * (std::log(p) - std::log(q)) - a * (p - q) - 2.0 * beta * std::sqrt(p * q) + beta * (p + q) +
           kappa * (std::sqrt(p) - std::sqrt(q));
  };
  h.h_x = [=](double p, double q) {
    return -c / p - a - beta * std::sqrt(q / p) + beta + 0.5 * kappa / std::sqrt(p);
  };
  h.h_y = [=](double p, double q) {
    return c / q + a - beta * std::sqrt(p / q) + beta - 0.5 * kappa / std::sqrt(q);
  };
  h.h_xx = [=](double p, double q) {
    return c / (p * p) + 0.5 * beta * std::sqrt(q) / (p * std::sqrt(p)) - 0.25 * kappa / (p * std::sqrt(p));
  };
  h.h_yy = [=](double p, double q) {
    return -c / (q * q) + 0.5 * beta * std::sqrt(p) / (q * std::sqrt(q)) + 0.25 * kappa / (q * std::sqrt(q));
  };
  h.h_xy = [=](double p, double q) { return -0.5 * beta / std::sqrt(p * q); };
  std::map<std::string, double> params{{"t", t}, {"K", K}, {"x", x}, {"a", a}, {"v", v}, {"lo", lo}, {"hi", hi}};
  return {fmt_key("a3-h", {{"t", t}, {"K", K}, {"x", x}, {"a", a}, {"v", v}, {"lo", lo}, {"hi", hi}}), params, [=] {
            OscillatorySpec2D spec;
            spec.window = Window2D::product(SmoothBump::bump(lo, hi), SmoothBump::bump(lo, hi));
            spec.phase = h;
            spec.tolerance = kTol2D;
            double lambda = INFINITY, rho = INFINITY;
            for (double p : grid(lo, hi)) {
              for (double q : grid(lo, hi)) {
                lambda = std::min(lambda, std::abs(h.h_xx(p, q)));
                rho = std::min(rho, std::abs(h.h_yy(p, q)));
              }
            }
            return certify_A3(spec, lambda * (1.0 - kNudge), rho * (1.0 - kNudge));
          }};
}

BatteryCase a3_quadratic_case(double T, double sign, double lo, double hi) {
  Phase2D h;
  h.h = [=](double x, double y) { return T * (x * x + sign * y * y); };
  h.h_x = [=](double x, double) { return 2.0 * T * x; };
  h.h_y = [=](double, double y) { return 2.0 * sign * T * y; };
  h.h_xx = [=](double, double) { return 2.0 * T; };
  h.h_yy = [=](double, double) { return 2.0 * sign * T; };
  h.h_xy = [](double, double) { return 0.0; };
  return {fmt_key("a3-quadratic", {{"T", T}, {"sign", sign}, {"lo", lo}, {"hi", hi}}),
          {{"T", T}, {"sign", sign}, {"lo", lo}, {"hi", hi}},
          [=] {
            OscillatorySpec2D spec;
            spec.window = Window2D::product(SmoothBump::bump(lo, hi), SmoothBump::bump(lo, hi));
            spec.phase = h;
            spec.tolerance = kTol2D;
            return certify_A3(spec, 2.0 * T, 2.0 * T);
          }};
}

BatteryGrid default_a2_grid() {
  BatteryGrid g;
  g.description = "f = T (y - x0)^2 on canonical U, T in {1e2, 3e2, 1e3, 3e3, 1e4}, x0 in {0.8, 1, 1.25, 1.5, 1.9, 2.3}";
  for (double T : {1e2, 3e2, 1e3, 3e3, 1e4})
    for (double x0 : {0.8, 1.0, 1.25, 1.5, 1.9, 2.3}) g.cases.push_back(a2_case(T, x0));
  return g;
}

BatteryGrid default_a1_grid(std::uint64_t seed) {
  BatteryGrid g;
  std::ostringstream d;
  d << "rho = -t log y + 2pi c1 sqrt y + 2pi c2 y, t in {1e2, 1e3}, c1 in {0, t/10}, c2 = +-t/pi, A in {1, 2}; "
       "20 linear-plus-cubic phases, seed "
    << seed;
  g.description = d.str();
  for (double t : {1e2, 1e3})
    for (double c1 : {0.0, 0.1 * t})
      for (double sgn : {1.0, -1.0})
        for (double A : {1.0, 2.0}) g.cases.push_back(a1_log_case(t, c1, sgn * t / kPi, A));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(300.0, 3000.0);
  std::uniform_real_distribution<double> frac(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double alpha = (rng() & 1 ? 1.0 : -1.0) * mag(rng);
    // |3 gamma y^2| <= |alpha| / 2 on (1, 2) keeps the phase non-stationary
    const double gamma = frac(rng) * std::abs(alpha) / 24.0;
    g.cases.push_back(a1_cubic_case(alpha, gamma, k % 2 == 0 ? 1.0 : 2.0));
  }
  return g;
}

BatteryGrid default_a3_grid() {
  BatteryGrid g;
  g.description = "h-family on [1,2]^2, t = 1e3, K = 1e2, x in {K^1.25, K^1.5, K^1.75}, v in {-1, 1}, "
                  "a = -t/(2 pi s), s in {1.3, 1.5, 1.7}";
  const double t = 1e3, K = 1e2;
  for (double e : {1.25, 1.5, 1.75})
    for (double v : {-1.0, 1.0})
      for (double s : {1.3, 1.5, 1.7}) g.cases.push_back(a3_h_case(t, K, std::pow(K, e), -t / (kTwoPi * s), v));
  return g;
}

BatteryGrid parse_grid(DerivativeLemma lemma, const std::string& text) {
  BatteryGrid g;
  g.description = "grid file";
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string family;
    const auto kv = parse_line(line, family);
    switch (lemma) {
      case DerivativeLemma::A2:
        g.cases.push_back(a2_case(need(kv, "T"), need(kv, "x0")));
        break;
      case DerivativeLemma::A1:
        if (family == "log") {
          g.cases.push_back(a1_log_case(need(kv, "t"), need(kv, "c1"), need(kv, "c2"), need(kv, "A")));
        } else if (family == "cubic") {
          g.cases.push_back(a1_cubic_case(need(kv, "alpha"), need(kv, "gamma"), need(kv, "A")));
        } else {
          throw ParameterError("A1 grid family must be log or cubic");
        }
        break;
      case DerivativeLemma::A3:
        if (family == "h") {
          const double lo = kv.count("lo") ? kv.at("lo") : 1.0;
          const double hi = kv.count("hi") ? kv.at("hi") : 2.0;
          g.cases.push_back(a3_h_case(need(kv, "t"), need(kv, "K"), need(kv, "x"), need(kv, "a"), need(kv, "v"), lo, hi));
        } else if (family == "quadratic") {
          g.cases.push_back(a3_quadratic_case(need(kv, "T"), need(kv, "sign"), need(kv, "lo"), need(kv, "hi")));
        } else {
          throw ParameterError("A3 grid family must be h or quadratic");
        }
        break;
    }
  }
  if (g.cases.empty()) throw ParameterError("grid file has no cases");
  return g;
}

}  // namespace bdelta
