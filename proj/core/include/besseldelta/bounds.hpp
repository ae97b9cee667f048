#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "besseldelta/quadrature.hpp"

namespace bdelta {

enum class CaseStatus { ok, violated, hypothesis_error };
std::string to_string(CaseStatus status);

/// One certificate run. key orders the report.
struct BatteryCase {
  std::string key;
  std::map<std::string, double> params;
  std::function<DerivativeTestCertificate()> run;
};

struct BatteryGrid {
  std::string description;
  std::vector<BatteryCase> cases;
};

struct CaseRecord {
  std::string key;
  std::map<std::string, double> params;
  CaseStatus status = CaseStatus::ok;
  double integral_abs = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  double slack = 1.0;
  /// Hypothesis message for hypothesis_error cases.
  std::string message;
};

struct BoundBatteryReport {
  DerivativeLemma lemma = DerivativeLemma::A2;
  std::string grid_description;
  std::size_t cases_run = 0;
  std::size_t violations = 0;
  std::size_t hypothesis_errors = 0;
  /// Over cases whose hypotheses held.
  double max_ratio = 0.0;
  /// Sorted by key.
  std::vector<CaseRecord> records;
};

/// Runs every case; hypothesis errors are recorded, anything else propagates.
/// Throws ParameterError on an empty grid or duplicate keys.
BoundBatteryReport run_battery(DerivativeLemma lemma, const BatteryGrid& grid);

/// One JSON object per case, then a summary object, newline separated.
std::string to_json_lines(const BoundBatteryReport& report);

// Case families. Windows are canonical bumps; every derived parameter is a
// grid extremum, so the hypothesis checks run at constant 1.

/// f(y) = T (y - x0)^2 on (1, 2), lambda = 2T.
BatteryCase a2_case(double T, double x0);
/// rho(y) = -t log y + 2 pi c1 sqrt(y) + 2 pi c2 y on (1, 2).
BatteryCase a1_log_case(double t, double c1, double c2, double A);
/// rho(y) = alpha y + gamma y^3 on (1, 2).
BatteryCase a1_cubic_case(double alpha, double gamma, double A);
/// h(v1, v2) = -(t/2pi)(log v1 - log v2) - a (v1 - v2) - 2 beta sqrt(v1 v2)
///             + beta (v1 + v2) + kappa (sqrt(v1) - sqrt(v2)),
/// beta = K^2/x, kappa = K v/x, on [lo, hi]^2. lambda and rho are the grid
/// minima of |h_11| and |h_22|. a = -t/(2 pi s) puts the stationary point near (s, s).
BatteryCase a3_h_case(double t, double K, double x, double a, double v, double lo = 1.0, double hi = 2.0);
/// h = T (x^2 + sign y^2) on the product window over (lo, hi)^2, lambda = rho = 2T.
BatteryCase a3_quadratic_case(double T, double sign, double lo, double hi);

/// 30 cases: T in {1e2, 3e2, 1e3, 3e3, 1e4} times six centres.
BatteryGrid default_a2_grid();
/// 16 log-family cases plus 20 seeded linear-plus-cubic phases.
BatteryGrid default_a1_grid(std::uint64_t seed = 1);
/// t = 1e3, K = 1e2, x in {K^1.25, K^1.5, K^1.75}, v in {-1, 1}, stationary point s in {1.3, 1.5, 1.7}.
BatteryGrid default_a3_grid();

/// Grid file: one case per line as whitespace-separated key=value pairs,
/// '#' comments. A2: T x0. A1: family=log t c1 c2 A | family=cubic alpha gamma A.
/// A3: family=h t K x a v [lo hi] | family=quadratic T sign lo hi.
BatteryGrid parse_grid(DerivativeLemma lemma, const std::string& text);

}  // namespace bdelta
