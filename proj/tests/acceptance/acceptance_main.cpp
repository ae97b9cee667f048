// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: besseldelta_acceptance [criterion numbers...]

#include <besseldelta/arith.hpp>
#include <besseldelta/bounds.hpp>
#include <besseldelta/delta_core.hpp>
#include <besseldelta/errors.hpp>
#include <besseldelta/forms.hpp>
#include <besseldelta/sums.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace bdelta;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void info(const std::string& s) { std::printf("  info: %s\n", s.c_str()); std::fflush(stdout); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const BesselKernel kHolo = BesselKernel::holomorphic(12);
const BesselKernel kMaass = BesselKernel::maass(1.0);

// Shared 1e6 coefficient table; its build time is reported once.
double g_table_seconds = -1.0;
std::shared_ptr<const RamanujanDelta> big_table() {
  static std::shared_ptr<const RamanujanDelta> t;
  if (!t) {
    const auto t0 = Clock::now();
    t = std::make_shared<const RamanujanDelta>(kMaxTauTable);
    g_table_seconds = seconds_since(t0);
  }
  return t;
}

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> s;
  for (std::size_t i = 0; i < x.size(); ++i) s.emplace_back(x[i], y[i]);
  // exponent_fit wants 4 points
  double mx = 0, my = 0;
  for (auto& [a, b] : s) mx += std::log(a) / s.size(), my += std::log(b) / s.size();
  double sxy = 0, sxx = 0;
  for (auto& [a, b] : s) sxy += (std::log(a) - mx) * (std::log(b) - my), sxx += std::pow(std::log(a) - mx, 2);
  return sxy / sxx;
}

// ---------------------------------------------------------------------------

Outcome diagonal() {
  Outcome o{true, ""};
  const std::vector<double> b2x{1e2, 1e3, 1e4};
  for (const auto& kernel : {kHolo, kMaass}) {
    DeltaParams p;
    p.kernel = kernel;
    p.X = 1e5;
    std::vector<double> dev;
    for (double s : b2x) {
      const double b = std::sqrt(s / p.X);
      const double d = std::abs(i_g(p, b, b) / c_u(p, b) - 1.0);
      dev.push_back(d);
      const bool ok = d <= 10.0 / std::sqrt(s);
      o.pass &= ok;
      info(kernel.to_string() + " b2X=" + fmt("%g", s) + " |ratio-1|=" + fmt("%.3e", d) +
           " bound=" + fmt("%.3e", 10.0 / std::sqrt(s)) + (ok ? "" : " EXCEEDED"));
    }
    const double slope = log_slope(b2x, dev);
    o.pass &= std::abs(slope + 0.5) <= 0.25;
    o.detail += kernel.to_string() + " slope " + fmt("%.3f", slope) + "; ";
  }
  return o;
}

Outcome truncation() {
  Outcome o{true, ""};
  const std::vector<double> b2x{1e2, 1e3, 1e4};
  for (const auto& kernel : {kHolo, kMaass}) {
    DeltaParams p;
    p.kernel = kernel;
    p.X = 1e5;
    p.tolerance_scale = 1e-12;
    std::vector<cplx> ig;
    for (double s : b2x) ig.push_back(i_g(p, std::sqrt(s / p.X), std::sqrt(s / p.X)));
    for (int J = 0; J <= 2; ++J) {
      p.J = J;
      std::vector<double> dev;
      for (std::size_t i = 0; i < b2x.size(); ++i) {
        dev.push_back(std::abs(ig[i] / c_u(p, std::sqrt(b2x[i] / p.X)) - 1.0));
      }
      const double slope = log_slope(b2x, dev);
      const double target = -(J + 1) / 2.0;
      const bool ok = std::abs(slope - target) <= 0.25;
      const std::string line = kernel.to_string() + " J=" + std::to_string(J) + " slope " + fmt("%.3f", slope) +
                               " target " + fmt("%.2f", target);
      if (kernel.is_holomorphic()) {
        o.pass &= ok;
        o.detail += line + "; ";
      } else {
        // the Maass c_j coefficients cancel at leading order; reported only
        info(line + (ok ? " (within band)" : " (outside band, not gated)"));
      }
    }
  }
  return o;
}

Outcome off_diagonal() {
  Outcome o{true, ""};
  for (const auto& kernel : {kHolo, kMaass}) {
    DeltaParams p;
    p.kernel = kernel;
    p.X = 1e5;
    const double b = std::sqrt(1e4 / p.X);
    const double cu = std::abs(c_u(p, b));
    const double r2 = std::abs(i_g(p, b + std::sqrt(1e2 / p.X), b)) / cu;
    const double r3 = std::abs(i_g(p, b + std::sqrt(1e3 / p.X), b)) / cu;
    const double q = r3 / r2;
    o.pass &= q <= 1e-3;
    o.detail += kernel.to_string() + " |r(1e3)|/|r(1e2)|=" + fmt("%.3e", q) + "; ";
    info(kernel.to_string() + " |I/C_U| at (a-b)^2X=1e2: " + fmt("%.3e", r2) + ", at 1e3: " + fmt("%.3e", r3));
  }
  return o;
}

// Sampled pairs: a third diagonal, a third with c | n - r, the rest uniform.
std::vector<std::pair<i64, i64>> sample_pairs(std::mt19937_64& rng, i64 c, i64 N, int count) {
  std::uniform_int_distribution<i64> in_range(N, 2 * N);
  std::vector<std::pair<i64, i64>> out;
  for (int i = 0; i < count; ++i) {
    const i64 r = in_range(rng);
    i64 n = r;
    if (i % 3 == 1) {
      const i64 k_lo = (N - r) / c, k_hi = (2 * N - r) / c;
      std::uniform_int_distribution<i64> k(k_lo, k_hi);
      do n = r + c * k(rng);
      while (n == r);
    } else if (i % 3 == 2) {
      n = in_range(rng);
    }
    out.emplace_back(r, n);
  }
  return out;
}

struct DeltaTally {
  int diag = 0, zero = 0, offdiag = 0, fails = 0;
  double worst_diag = 0.0, worst_off = 0.0;

  void add(const DeltaEvaluation& e, i64 r, i64 n) {
    if (n == r) {
      ++diag;
      worst_diag = std::max(worst_diag, std::abs(e.value - 1.0));
      fails += std::abs(e.value - 1.0) > 0.05;
    } else if (e.arithmetic_zero) {
      ++zero;
      fails += e.value != cplx(0.0, 0.0);
    } else {
      ++offdiag;
      worst_off = std::max(worst_off, std::abs(e.value));
      fails += std::abs(e.value) > 0.05;
    }
  }
  std::string str() const {
    std::ostringstream os;
    os << "diag " << diag << " (max |v-1| " << fmt("%.2e", worst_diag) << "), zero " << zero << ", c|n-r " << offdiag
       << " (max |v| " << fmt("%.2e", worst_off) << "), failures " << fails;
    return os.str();
  }
};

Outcome single_modulus() {
  DeltaTally tally;
  std::mt19937_64 rng(20240501);
  for (const auto& kernel : {kHolo, kMaass}) {
    DeltaParams p;
    p.kernel = kernel;
    p.X = 1e5;
    for (i64 prime : {7, 11, 13}) {
      for (auto [r, n] : sample_pairs(rng, prime, 1000, 50)) tally.add(delta_single_modulus(p, prime, r, n), r, n);
    }
  }
  return {tally.fails == 0, tally.str()};
}

Outcome two_moduli() {
  DeltaTally tally;
  std::mt19937_64 rng(20240502);
  for (const auto& kernel : {kHolo, kMaass}) {
    DeltaParams p;
    p.kernel = kernel;
    p.X = 1e7;
    for (auto [m, n] : sample_pairs(rng, 77, 3000, 50)) tally.add(delta_two_moduli(p, 7, 11, m, n), m, n);
  }
  return {tally.fails == 0, tally.str()};
}

Outcome frak_c() {
  std::mt19937_64 rng(20240503);
  int closed = 0, closed_bad = 0, generic = 0, generic_bad = 0;
  double worst_closed = 0.0, worst_generic = 0.0;
  for (int q : {11, 31, 101}) {
    const auto chars = DirichletCharacter::all(q);
    std::uniform_int_distribution<i64> unit(1, q - 1);
    std::uniform_int_distribution<int> pick(1, q - 2);
    for (int i = 0; i < 500; ++i) {
      const DirichletCharacter& chi = chars[pick(rng)];
      i64 r1 = unit(rng), r2 = unit(rng), alpha = unit(rng), gamma = unit(rng), m = unit(rng);
      // steer a third of the sweep into each closed-form branch
      if (i % 3 == 0) m = q * (1 + i % 4);
      if (i % 3 == 1) {
        const i64 mbar = mod_inverse(m, q);
        r1 = mod(mbar * gamma, q);
        r2 = mod(-mbar * alpha, q);
      }
      const cplx brute = frak_c_bruteforce(chi, r1, r2, alpha, gamma, m);
      if (const auto c = frak_c_closed(chi, r1, r2, alpha, gamma, m)) {
        ++closed;
        worst_closed = std::max(worst_closed, std::abs(*c - brute));
        closed_bad += std::abs(*c - brute) > 1e-10;
      } else {
        ++generic;
        worst_generic = std::max(worst_generic, std::abs(brute) / std::sqrt(q));
        generic_bad += std::abs(brute) > 3.0 * std::sqrt(q);
      }
    }
  }
  std::ostringstream os;
  os << "closed " << closed << " (max diff " << fmt("%.2e", worst_closed) << ", bad " << closed_bad << "), generic "
     << generic << " (max |c|/sqrt q " << fmt("%.3f", worst_generic) << ", violations " << generic_bad << ")";
  return {closed_bad == 0 && generic_bad == 0 && closed > 0 && generic > 0, os.str()};
}

Outcome classical_sums() {
  int gauss = 0, bad = 0;
  double worst_gauss = 0.0, worst_ram = 0.0, worst_sym = 0.0, worst_s0 = 0.0;
  for (int q : primes_up_to(101)) {
    if (q <= 3) continue;  // characters are built for primes > 3
    for (const auto& chi : DirichletCharacter::all(q)) {
      if (chi.is_principal()) continue;
      ++gauss;
      const double d = std::abs(std::abs(gauss_sum(chi)) - std::sqrt(q));
      worst_gauss = std::max(worst_gauss, d);
      bad += d > 1e-10;
    }
  }
  for (i64 c = 1; c <= 101; ++c) {
    std::vector<double> S(static_cast<std::size_t>(c * c));
    for (i64 a = 0; a < c; ++a)
      for (i64 b = 0; b < c; ++b) S[a * c + b] = kloosterman(a, b, c);
    for (i64 a = 0; a < c; ++a) {
      const double dr = std::abs(ramanujan_sum_bruteforce(c, a) - static_cast<double>(ramanujan_sum_exact(c, a)));
      worst_ram = std::max(worst_ram, dr);
      bad += dr > 1e-9;
      const double ds0 = std::abs(S[a] - static_cast<double>(ramanujan_sum_exact(c, a)));
      worst_s0 = std::max(worst_s0, ds0);
      bad += ds0 > 1e-9;
      for (i64 b = 0; b < c; ++b) {
        const double ds = std::abs(S[a * c + b] - S[b * c + a]);
        worst_sym = std::max(worst_sym, ds);
        bad += ds > 1e-9;
      }
    }
  }
  std::ostringstream os;
  os << gauss << " Gauss sums (max ||g|-sqrt q| " << fmt("%.1e", worst_gauss) << "), Ramanujan max diff "
     << fmt("%.1e", worst_ram) << ", S(a,b)-S(b,a) max " << fmt("%.1e", worst_sym) << ", S(0,b)-R_c(b) max "
     << fmt("%.1e", worst_s0);
  return {bad == 0, os.str()};
}

Outcome hecke_deligne_rs() {
  const auto t0 = Clock::now();
  const auto table = big_table();
  info("tau table to 1e6 ready in " + fmt("%.1f", seconds_since(t0)) + " s (one-time build limit 120 s; includes cache load)");
  int bad = 0;
  for (i64 m = 1; m <= 100; ++m)
    for (i64 n = 1; n <= 100; ++n) bad += !hecke_relation_check(*table, m, n);
  for (i64 n = 1; n <= 10'000; ++n) bad += !deligne_check(*table, n);
  std::vector<std::pair<double, double>> s;
  for (int k = 0; k <= 12; ++k) {
    const i64 N = static_cast<i64>(std::llround(std::pow(10.0, 3.0 + k * 0.25)));
    s.emplace_back(static_cast<double>(N), rankin_selberg_ratio(*table, N) * static_cast<double>(N));
  }
  const ExponentFit fit = exponent_fit(s);
  std::ostringstream os;
  os << "Hecke/Deligne failures " << bad << ", Rankin-Selberg slope " << fmt("%.4f", fit.slope);
  return {bad == 0 && std::abs(fit.slope - 1.0) <= 0.1, os.str()};
}

Outcome voronoi() {
  const auto coeffs = std::make_shared<const RamanujanDelta>(
      std::vector<BigInt>(big_table()->table().begin(), big_table()->table().begin() + 20'001));
  VoronoiVerifier v(coeffs, 1e-6, 1e-8);
  const cplx eta = v.determine_eta();
  info("eta = " + fmt("%.12f", eta.real()) + " + " + fmt("%.12f", eta.imag()) + "i");
  bool pass = std::abs(std::abs(eta) - 1.0) <= 1e-6;
  double worst = 0.0;
  int fails = 0;
  for (auto [a, c] : std::vector<std::pair<i64, i64>>{{0, 1}, {1, 2}, {1, 3}, {2, 3}, {1, 5}}) {
    for (double N : {50.0, 100.0}) {
      const auto t0 = Clock::now();
      const VoronoiReport r = v.check(a, c, N);
      worst = std::max(worst, r.diff / r.tolerance);
      fails += !r.pass;
      info("(" + std::to_string(a) + "," + std::to_string(c) + ") N=" + fmt("%g", N) + " diff=" + fmt("%.2e", r.diff) +
           " tol=" + fmt("%.2e", r.tolerance) + " terms=" + std::to_string(r.dual_terms) + " " +
           fmt("%.1f", seconds_since(t0)) + " s");
    }
  }
  return {pass && fails == 0, "10 cases, failures " + std::to_string(fails) + ", max diff/tol " + fmt("%.3f", worst) +
                                  ", ||eta|-1| " + fmt("%.1e", std::abs(std::abs(eta) - 1.0))};
}

Outcome amplification() {
  const auto table = big_table();
  int cases = 0, fails = 0;
  double worst = 0.0;
  for (int q : {7, 11, 13}) {
    for (int index : {1, (q - 1) / 2}) {
      const DirichletCharacter chi(q, index);
      for (double t : {0.0, 10.0, 100.0}) {
        for (double N : {1e3, 1e4}) {
          std::vector<i64> L;
          for (int l : primes_up_to(29))
            if (l != q) L.push_back(l);
          const auto a = amplification_split(*table, chi, t, SmoothBump::canonical(), N, L);
          ++cases;
          const double rel = a.residual / (1.0 + std::abs(a.S));
          worst = std::max(worst, rel);
          fails += rel > 1e-9;
        }
      }
    }
  }
  return {fails == 0, std::to_string(cases) + " cases, max residual/(1+|S|) " + fmt("%.2e", worst)};
}

Outcome appendix_bounds() {
  std::ostringstream os;
  bool pass = true;
  const auto a2 = run_battery(DerivativeLemma::A2, default_a2_grid());
  pass &= a2.cases_run == 30 && a2.violations == 0 && a2.hypothesis_errors == 0;
  os << "A2 " << a2.cases_run << " cases, violations " << a2.violations << ", max ratio " << fmt("%.4f", a2.max_ratio);
  for (auto [lemma, grid] : {std::pair{DerivativeLemma::A1, default_a1_grid()},
                             std::pair{DerivativeLemma::A3, default_a3_grid()}}) {
    const auto t0 = Clock::now();
    const auto r = run_battery(lemma, grid);
    pass &= r.violations == 0 && r.hypothesis_errors == 0 && r.max_ratio <= 5.0;
    os << "; " << to_string(lemma) << " " << r.cases_run << " cases, violations " << r.violations
       << ", hypothesis errors " << r.hypothesis_errors << ", max ratio " << fmt("%.4f", r.max_ratio);
    info(to_string(lemma) + " battery " + fmt("%.1f", seconds_since(t0)) + " s");
  }
  return {pass, os.str()};
}

Outcome exponents() {
  const auto table = big_table();
  const SmoothBump V = SmoothBump::canonical();
  std::vector<std::pair<double, double>> sm, sh;
  for (int k = 10; k <= 16; ++k) {
    const double N = std::ldexp(1.0, k);
    sm.emplace_back(N, std::abs(smooth_exp_sum(*table, PhaseSpec::square(std::pow(N, 0.9), N), V)));
    sh.emplace_back(N, std::abs(sharp_exp_sum(*table, 1.0, 0.9, 0.0, static_cast<i64>(N))));
  }
  const ExponentFit fs = exponent_fit(sm), fh = exponent_fit(sh);
  const double smooth_limit = std::max(0.5 + 0.9 / 3.0, 1.0 - 0.9 / 6.0) + 0.15;
  const double sharp_limit = 0.5 + 0.9 / 3.0 + 0.15;
  std::ostringstream os;
  os << "smooth slope " << fmt("%.3f", fs.slope) << " <= " << fmt("%.3f", smooth_limit) << ", sharp slope "
     << fmt("%.3f", fh.slope) << " <= " << fmt("%.3f", sharp_limit);
  return {fs.slope <= smooth_limit && fh.slope <= sharp_limit, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "diagonal asymptotic", 120, diagonal},
      {2, "truncation order slopes", 300, truncation},
      {3, "off-diagonal decay", 120, off_diagonal},
      {4, "single-modulus delta identity", 600, single_modulus},
      {5, "two-moduli delta identity", 600, two_moduli},
      {6, "frak-c closed forms and generic bound", 180, frak_c},
      {7, "Gauss, Ramanujan, Kloosterman sums", 120, classical_sums},
      {8, "Hecke, Deligne, Rankin-Selberg", 180, hecke_deligne_rs},
      {9, "Voronoi summation", 600, voronoi},
      {10, "amplification identity", 120, amplification},
      {11, "derivative-test batteries", 300, appendix_bounds},
      {12, "empirical exponents", 300, exponents},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  bool table_charged = false;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    std::printf("criterion %d: %s\n", c.id, c.name.c_str());
    std::fflush(stdout);
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double elapsed = seconds_since(t0);
    // the one-time table build has its own limit
    if (g_table_seconds >= 0.0 && !table_charged) {
      table_charged = true;
      if (g_table_seconds > 120.0) o.pass = false;
      elapsed -= g_table_seconds;
    }
    const bool in_time = elapsed <= c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("[%s] criterion %d %s: %s (%.1f s of %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), elapsed, c.limit_s);
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
