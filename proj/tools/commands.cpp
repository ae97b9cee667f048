#include "commands.hpp"

#include <besseldelta/arith.hpp>
#include <besseldelta/bounds.hpp>
#include <besseldelta/delta_core.hpp>
#include <besseldelta/errors.hpp>
#include <besseldelta/forms.hpp>
#include <besseldelta/sums.hpp>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace bdelta::cli {

namespace {

// Pairs two lists elementwise; a list of length one is broadcast.
template <class A, class B>
std::vector<std::pair<A, B>> zip(const std::vector<A>& a, const std::vector<B>& b, const char* what) {
  if (a.empty() || b.empty()) throw ParameterError(std::string(what) + " lists must be nonempty");
  const std::size_t n = std::max(a.size(), b.size());
  if ((a.size() != n && a.size() != 1) || (b.size() != n && b.size() != 1)) {
    throw ParameterError(std::string(what) + " lists must have equal length or length 1");
  }
  std::vector<std::pair<A, B>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(a[a.size() == 1 ? 0 : i], b[b.size() == 1 ? 0 : i]);
  return out;
}

std::vector<double> dyadic_or_list(const std::string& dyadic, const std::vector<double>& list) {
  if (dyadic.empty()) {
    if (list.empty()) throw ParameterError("give --N or --dyadic");
    return list;
  }
  const auto colon = dyadic.find(':');
  if (colon == std::string::npos) throw ParameterError("--dyadic takes lo:hi exponents of 2");
  const int lo = std::stoi(dyadic.substr(0, colon));
  const int hi = std::stoi(dyadic.substr(colon + 1));
  if (lo < 1 || hi < lo || hi > 19) throw ParameterError("--dyadic needs 1 <= lo <= hi <= 19");
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

std::string to_str(const BigInt& v) { return v.str(); }

// ---------------------------------------------------------------- delta-check

Command delta_check(CLI::App& app) {
  struct Opts {
    i64 p = 0;
    i64 q = 0;
    std::vector<i64> r;
    std::vector<i64> n;
    double X = 1e5;
    std::string kernel = "holo:12";
    int J = 0;
    double tolerance_scale = 1e-9;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("delta-check", "delta-symbol identity with one or two prime moduli");
  sub->add_option("--p", o->p, "prime modulus")->required();
  sub->add_option("--q", o->q, "second prime modulus (two-moduli identity)");
  sub->add_option("--r,--m", o->r, "r (or m), comma list")->required()->delimiter(',');
  sub->add_option("--n", o->n, "n, comma list")->required()->delimiter(',');
  sub->add_option("--X", o->X, "scale X");
  sub->add_option("--kernel", o->kernel, "holo:<kappa> or maass:<mu>[:<eps>]");
  sub->add_option("--J", o->J, "asymptotic truncation order")->check(CLI::Range(0, 8));
  sub->add_option("--tolerance-scale", o->tolerance_scale, "quadrature accuracy relative to X (b^2X)^{-1/4}");
  return {sub, [o] {
            DeltaParams params;
            params.kernel = BesselKernel::parse(o->kernel);
            params.X = o->X;
            params.J = o->J;
            params.tolerance_scale = o->tolerance_scale;
            Table t;
            t.command = "delta-check";
            t.columns = {"p", "q", "r", "n", "X", "kernel", "J", "value_re", "value_im", "expected", "deviation",
                         "tolerance", "arithmetic_zero", "pass"};
            t.sort_keys = 4;
            for (const auto& [r, n] : zip(o->r, o->n, "--r/--n")) {
              const DeltaEvaluation e = o->q == 0 ? delta_single_modulus(params, o->p, r, n)
                                                  : delta_two_moduli(params, o->p, o->q, r, n);
              t.add({o->p, o->q, r, n, o->X, params.kernel.to_string(), static_cast<i64>(o->J), e.value.real(),
                     e.value.imag(), e.expected, e.deviation, e.tolerance, e.arithmetic_zero, e.pass});
            }
            return t;
          }};
}

// ---------------------------------------------------------------- besselint

Command besselint(CLI::App& app) {
  struct Opts {
    std::vector<double> a;
    std::vector<double> b;
    double X = 1e5;
    std::string kernel = "holo:12";
    int J = 0;
    double tolerance_scale = 1e-9;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("besselint", "I_g(a, b; X) against its diagonal main term C_U(b, X)");
  sub->add_option("--a", o->a, "a, comma list")->required()->delimiter(',');
  sub->add_option("--b", o->b, "b, comma list")->required()->delimiter(',');
  sub->add_option("--X", o->X, "scale X");
  sub->add_option("--kernel", o->kernel, "holo:<kappa> or maass:<mu>[:<eps>]");
  sub->add_option("--J", o->J, "asymptotic truncation order")->check(CLI::Range(0, 8));
  sub->add_option("--tolerance-scale", o->tolerance_scale, "quadrature accuracy relative to X (b^2X)^{-1/4}");
  return {sub, [o] {
            DeltaParams params;
            params.kernel = BesselKernel::parse(o->kernel);
            params.X = o->X;
            params.J = o->J;
            params.tolerance_scale = o->tolerance_scale;
            Table t;
            t.command = "besselint";
            t.columns = {"a", "b", "X", "kernel", "J", "i_g_re", "i_g_im", "c_u_re", "c_u_im", "ratio_re",
                         "ratio_im", "error_estimate", "split"};
            t.sort_keys = 2;
            for (const auto& [a, b] : zip(o->a, o->b, "--a/--b")) {
              const BesselIntegral I = i_g_eval(params, a, b);
              const cplx C = c_u(params, b);
              const cplx ratio = I.value / C;
              t.add({a, b, o->X, params.kernel.to_string(), static_cast<i64>(o->J), I.value.real(), I.value.imag(),
                     C.real(), C.imag(), ratio.real(), ratio.imag(), I.error_estimate, I.split});
            }
            return t;
          }};
}

// ---------------------------------------------------------------- charsum

Command charsum(CLI::App& app) {
  struct Opts {
    std::string kind;
    int q = 0;
    std::vector<int> index;
    i64 a = 0, b = 0, c = 0;
    i64 r1 = 0, r2 = 0, alpha = 0, gamma = 0, m = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("charsum", "Gauss, Ramanujan, Kloosterman and frak-c character sums");
  sub->add_option("--kind", o->kind, "gauss | ramanujan | kloosterman | frakc")
      ->required()
      ->check(CLI::IsMember({"gauss", "ramanujan", "kloosterman", "frakc"}));
  sub->add_option("--q", o->q, "prime modulus of the character");
  sub->add_option("--index", o->index, "character indices (default: every nonprincipal one)")->delimiter(',');
  sub->add_option("--a", o->a, "a");
  sub->add_option("--b", o->b, "b");
  sub->add_option("--c", o->c, "modulus c");
  sub->add_option("--r1", o->r1, "r1");
  sub->add_option("--r2", o->r2, "r2");
  sub->add_option("--alpha", o->alpha, "alpha");
  sub->add_option("--gamma", o->gamma, "gamma");
  sub->add_option("--m", o->m, "m");
  return {sub, [o] {
            Table t;
            t.command = "charsum";
            auto indices = [&] {
              if (o->q < 5 || !is_prime(o->q)) throw ParameterError("--q must be a prime > 3");
              std::vector<int> idx = o->index;
              if (idx.empty())
                for (int k = 1; k < o->q - 1; ++k) idx.push_back(k);
              return idx;
            };
            if (o->kind == "gauss") {
              t.columns = {"q", "index", "re", "im", "abs_minus_sqrt_q", "pass"};
              t.sort_keys = 2;
              for (int k : indices()) {
                const cplx g = gauss_sum(DirichletCharacter(o->q, k));
                const double dev = std::abs(std::abs(g) - std::sqrt(static_cast<double>(o->q)));
                t.add({static_cast<i64>(o->q), static_cast<i64>(k), g.real(), g.imag(), dev, dev <= 1e-10});
              }
            } else if (o->kind == "ramanujan") {
              if (o->c < 1) throw ParameterError("--c must be >= 1");
              t.columns = {"c", "a", "closed", "bruteforce", "pass"};
              t.sort_keys = 2;
              const i64 exact = ramanujan_sum_exact(o->c, o->a);
              const double brute = ramanujan_sum_bruteforce(o->c, o->a);
              t.add({o->c, o->a, exact, brute, std::abs(brute - static_cast<double>(exact)) <= 1e-9});
            } else if (o->kind == "kloosterman") {
              if (o->c < 1) throw ParameterError("--c must be >= 1");
              t.columns = {"a", "b", "c", "S_ab", "S_ba", "pass"};
              t.sort_keys = 3;
              const double s = kloosterman(o->a, o->b, o->c);
              const double sw = kloosterman(o->b, o->a, o->c);
              bool ok = std::abs(s - sw) <= 1e-9;
              if (mod(o->a, o->c) == 0) ok = ok && std::abs(s - static_cast<double>(ramanujan_sum_exact(o->c, o->b))) <= 1e-9;
              t.add({o->a, o->b, o->c, s, sw, ok});
            } else {
              t.columns = {"q", "index", "case", "brute_re", "brute_im", "closed_re", "closed_im", "diff",
                           "bound_3_sqrt_q", "pass"};
              t.sort_keys = 2;
              const FrakCCase fc = frak_c_case(o->q, o->r1, o->r2, o->alpha, o->gamma, o->m);
              const char* name = fc == FrakCCase::q_divides_m ? "q_divides_m"
                                 : fc == FrakCCase::double_root ? "double_root"
                                                                : "generic";
              const double bound = 3.0 * std::sqrt(static_cast<double>(o->q));
              for (int k : indices()) {
                const DirichletCharacter chi(o->q, k);
                const cplx brute = frak_c_bruteforce(chi, o->r1, o->r2, o->alpha, o->gamma, o->m);
                const auto closed = frak_c_closed(chi, o->r1, o->r2, o->alpha, o->gamma, o->m);
                const double nan = std::nan("");
                const double diff = closed ? std::abs(*closed - brute) : nan;
                const bool ok = closed ? diff <= 1e-10 : std::abs(brute) <= bound;
                t.add({static_cast<i64>(o->q), static_cast<i64>(k), std::string(name), brute.real(), brute.imag(),
                       closed ? closed->real() : nan, closed ? closed->imag() : nan, diff, bound, ok});
              }
            }
            return t;
          }};
}

// ---------------------------------------------------------------- voronoi

Command voronoi(CLI::App& app) {
  struct Opts {
    std::vector<std::string> pairs{"1/2"};
    std::vector<double> N{50.0};
    double rel_tol = 1e-6;
    double abs_tol = 1e-8;
    i64 n_max = 20000;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("voronoi", "both sides of level-1 Voronoi summation for Delta");
  sub->add_option("--pairs", o->pairs, "a/c pairs, comma list")->delimiter(',');
  sub->add_option("--N", o->N, "N, comma list")->delimiter(',');
  sub->add_option("--rel-tol", o->rel_tol, "relative tolerance");
  sub->add_option("--abs-tol", o->abs_tol, "absolute tolerance");
  sub->add_option("--n-max", o->n_max, "coefficient table size")->check(CLI::Range(i64{1}, kMaxTauTable));
  return {sub, [o] {
            std::vector<std::pair<i64, i64>> ac;
            for (const auto& s : o->pairs) {
              const auto slash = s.find('/');
              if (slash == std::string::npos) throw ParameterError("pair '" + s + "' is not a/c");
              ac.emplace_back(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
            }
            auto coeffs = std::make_shared<RamanujanDelta>(o->n_max);
            VoronoiVerifier v(coeffs, o->rel_tol, o->abs_tol);
            Table t;
            t.command = "voronoi";
            t.columns = {"a", "c", "N", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "diff", "tolerance", "eta_re",
                         "eta_im", "dual_terms", "pass"};
            t.sort_keys = 3;
            for (const auto& [a, c] : ac) {
              for (double N : o->N) {
                const VoronoiReport r = v.check(a, c, N);
                t.add({a, c, N, r.lhs.real(), r.lhs.imag(), r.rhs.real(), r.rhs.imag(), r.diff, r.tolerance,
                       r.eta.real(), r.eta.imag(), r.dual_terms, r.pass});
              }
            }
            return t;
          }};
}

// ---------------------------------------------------------------- expsum

Command expsum(CLI::App& app, const GlobalOptions& global) {
  struct Opts {
    std::string mode;
    std::vector<double> N;
    std::string dyadic;
    double T_exp = 0.9;
    double T = 0.0;
    double gamma = 0.0;
    double alpha = 1.0;
    double beta = 0.9;
    int q = 7;
    int index = 1;
    double t = 0.0;
    std::vector<i64> L{2, 3, 5};
    int controls = 64;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("expsum", "exponential sums twisted by Delta's Hecke eigenvalues");
  sub->add_option("--mode", o->mode, "smooth | sharp | twisted | amplify | fit")
      ->required()
      ->check(CLI::IsMember({"smooth", "sharp", "twisted", "amplify", "fit"}));
  sub->add_option("--N", o->N, "lengths, comma list")->delimiter(',');
  sub->add_option("--dyadic", o->dyadic, "lo:hi, N = 2^lo .. 2^hi");
  sub->add_option("--T-exp", o->T_exp, "T = N^T-exp for the smooth phase T (x/N)^2");
  sub->add_option("--T", o->T, "fixed T (overrides --T-exp when positive)");
  sub->add_option("--gamma", o->gamma, "linear coefficient");
  sub->add_option("--alpha", o->alpha, "sharp sum: alpha");
  sub->add_option("--beta", o->beta, "sharp sum: beta");
  sub->add_option("--q", o->q, "character modulus");
  sub->add_option("--index", o->index, "character index");
  sub->add_option("--t", o->t, "archimedean twist n^{-it}");
  sub->add_option("--L", o->L, "amplifier primes, comma list")->delimiter(',');
  sub->add_option("--controls", o->controls, "random-sign control seeds averaged in fit mode")->check(CLI::Range(1, 4096));
  const std::uint64_t* seed = &global.seed;
  return {sub, [o, seed] {
            const std::vector<double> Ns = dyadic_or_list(o->dyadic, o->N);
            double n_hi = 0.0;
            for (double N : Ns) {
              if (!(N >= 1.0)) throw ParameterError("N must be >= 1");
              n_hi = std::max(n_hi, N);
            }
            i64 l_max = 1;
            if (o->mode == "amplify")
              for (i64 l : o->L) l_max = std::max(l_max, l);
            const i64 n_max = static_cast<i64>(std::ceil(2.0 * n_hi)) * l_max + 1;
            if (n_max > kMaxTauTable) throw ParameterError("lengths need a coefficient table beyond 1e6");
            const RamanujanDelta coeffs(n_max);
            const SmoothBump V = SmoothBump::canonical();
            auto T_of = [&](double N) { return o->T > 0.0 ? o->T : std::pow(N, o->T_exp); };

            Table t;
            t.command = "expsum";
            t.sort_keys = 1;
            if (o->mode == "smooth") {
              t.columns = {"N", "T", "re", "im", "abs"};
              for (double N : Ns) {
                const cplx s = smooth_exp_sum(coeffs, PhaseSpec::square(T_of(N), N, o->gamma), V);
                t.add({N, T_of(N), s.real(), s.imag(), std::abs(s)});
              }
            } else if (o->mode == "sharp") {
              t.columns = {"N", "re", "im", "abs"};
              for (double N : Ns) {
                const cplx s = sharp_exp_sum(coeffs, o->alpha, o->beta, o->gamma, static_cast<i64>(N));
                t.add({N, s.real(), s.imag(), std::abs(s)});
              }
            } else if (o->mode == "twisted") {
              const DirichletCharacter chi(o->q, o->index);
              t.columns = {"N", "q", "index", "t", "re", "im", "abs"};
              for (double N : Ns) {
                const cplx s = twisted_sum(coeffs, chi, o->t, V, N);
                t.add({N, static_cast<i64>(o->q), static_cast<i64>(o->index), o->t, s.real(), s.imag(), std::abs(s)});
              }
            } else if (o->mode == "amplify") {
              const DirichletCharacter chi(o->q, o->index);
              t.columns = {"N", "S_re", "S_im", "S1_re", "S1_im", "S2_re", "S2_im", "L_star", "residual", "pass"};
              for (double N : Ns) {
                const AmplificationSplit a = amplification_split(coeffs, chi, o->t, V, N, o->L);
                t.add({N, a.S.real(), a.S.imag(), a.S1.real(), a.S1.imag(), a.S2.real(), a.S2.imag(), a.L_star,
                       a.residual, a.residual <= 1e-9 * (1.0 + std::abs(a.S))});
              }
            } else {
              t.columns = {"N", "smooth_abs", "sharp_abs", "control_abs"};
              std::vector<std::pair<double, double>> sm, sh, ct;
              for (double N : Ns) {
                const double a = std::abs(smooth_exp_sum(coeffs, PhaseSpec::square(T_of(N), N, o->gamma), V));
                const double b = std::abs(sharp_exp_sum(coeffs, o->alpha, o->beta, o->gamma, static_cast<i64>(N)));
                double c = 0.0;
                for (int k = 0; k < o->controls; ++k) c += std::abs(random_sign_sum(static_cast<i64>(N), *seed + k));
                c /= o->controls;
                t.add({N, a, b, c});
                sm.emplace_back(N, a);
                sh.emplace_back(N, b);
                ct.emplace_back(N, c);
              }
              const ExponentFit fs = exponent_fit(sm), fh = exponent_fit(sh), fc = exponent_fit(ct);
              const double theta = o->T > 0.0 ? 0.0 : o->T_exp;
              const double smooth_limit = std::max(0.5 + theta / 3.0, 1.0 - theta / 6.0) + 0.15;
              const double sharp_limit = 0.5 + o->beta / 3.0 + 0.15;
              t.summary = {{"smooth_slope", fs.slope},   {"smooth_r2", fs.r2},         {"sharp_slope", fh.slope},
                           {"sharp_r2", fh.r2},          {"control_slope", fc.slope},  {"smooth_limit", smooth_limit},
                           {"sharp_limit", sharp_limit},
                           {"pass", fs.slope <= smooth_limit && fh.slope <= sharp_limit}};
            }
            return t;
          }};
}

// ---------------------------------------------------------------- certify

Command certify(CLI::App& app, const GlobalOptions& global) {
  struct Opts {
    std::string lemma;
    std::string grid;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("certify", "derivative-test certificate battery");
  sub->add_option("--lemma", o->lemma, "A1 | A2 | A3")->required()->check(CLI::IsMember({"A1", "A2", "A3"}));
  sub->add_option("--grid", o->grid, "grid file (default: built-in grid)")->check(CLI::ExistingFile);
  const std::uint64_t* seed = &global.seed;
  return {sub, [o, seed] {
            const DerivativeLemma lemma = o->lemma == "A1"   ? DerivativeLemma::A1
                                          : o->lemma == "A2" ? DerivativeLemma::A2
                                                             : DerivativeLemma::A3;
            BatteryGrid grid;
            if (!o->grid.empty()) {
              std::ifstream in(o->grid);
              std::stringstream ss;
              ss << in.rdbuf();
              grid = parse_grid(lemma, ss.str());
            } else if (lemma == DerivativeLemma::A1) {
              grid = default_a1_grid(*seed);
            } else if (lemma == DerivativeLemma::A2) {
              grid = default_a2_grid();
            } else {
              grid = default_a3_grid();
            }
            const BoundBatteryReport rep = run_battery(lemma, grid);
            Table t;
            t.command = "certify";
            t.columns = {"key", "status", "integral_abs", "bound", "ratio", "slack", "message", "pass"};
            t.sort_keys = 1;
            for (const auto& r : rep.records) {
              t.add({r.key, to_string(r.status), r.integral_abs, r.bound, r.ratio, r.slack, r.message,
                     r.status == CaseStatus::ok});
            }
            t.summary = {{"lemma", to_string(rep.lemma)},
                         {"grid", rep.grid_description},
                         {"cases", static_cast<i64>(rep.cases_run)},
                         {"violations", static_cast<i64>(rep.violations)},
                         {"hypothesis_errors", static_cast<i64>(rep.hypothesis_errors)},
                         {"max_ratio", rep.max_ratio}};
            return t;
          }};
}

// ---------------------------------------------------------------- tau

Command tau(CLI::App& app) {
  struct Opts {
    i64 n_max = 0;
    std::string cache_dir;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("tau", "write or refresh the tau(n) cache and print its checksum");
  sub->add_option("--n-max", o->n_max, "largest n")->required()->check(CLI::Range(i64{1}, kMaxTauTable));
  sub->add_option("--cache-dir", o->cache_dir, "cache directory (default: $BDELTA_CACHE_DIR)");
  return {sub, [o] {
            std::filesystem::path dir;
            if (!o->cache_dir.empty()) {
              dir = o->cache_dir;
            } else if (auto env = tau_cache_dir_from_env()) {
              dir = *env;
            } else {
              throw ParameterError("no cache directory: pass --cache-dir or set BDELTA_CACHE_DIR");
            }
            std::filesystem::create_directories(dir);
            const auto file = tau_cache_path(dir, o->n_max);
            auto table = read_tau_cache(file, o->n_max);
            const bool cached = table.has_value();
            if (!cached) {
              table = tau_table(o->n_max);
              write_tau_cache(file, *table);
            }
            Table t;
            t.command = "tau";
            t.columns = {"n_max", "checksum", "tau_1", "tau_2", "tau_n_max", "from_cache", "path"};
            t.add({o->n_max, static_cast<i64>(tau_checksum(*table)), to_str((*table)[1]),
                   o->n_max >= 2 ? to_str((*table)[2]) : std::string(), to_str((*table)[o->n_max]), cached,
                   file.string()});
            return t;
          }};
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app, const GlobalOptions& global) {
  return {delta_check(app), besselint(app),       charsum(app),    voronoi(app),
          expsum(app, global), certify(app, global), tau(app)};
}

int table_status(const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] != "pass") continue;
    for (const auto& r : t.rows)
      if (!std::get<bool>(r[i])) return 1;
  }
  if (const auto it = t.summary.find("pass"); it != t.summary.end() && !std::get<bool>(it->second)) return 1;
  return 0;
}

}  // namespace bdelta::cli
