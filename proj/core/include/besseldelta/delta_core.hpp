#pragma once

#include <cstdint>

#include "besseldelta/numeric.hpp"
#include "besseldelta/special_fn.hpp"
#include "besseldelta/windows.hpp"

namespace bdelta {

/// Minimum b^2 X at which the diagonal asymptotics are requested.
inline constexpr double kMinB2X = 10.0;
/// Exponent standing in for 1 - epsilon in the X^{1-eps} > max{N, p^2/N} conditions.
inline constexpr double kDeltaXExponent = 0.9;
/// Cap on surviving off-diagonal terms.
inline constexpr double kOffDiagonalCap = 0.05;
/// Envelope accuracy required before I_g switches to the exponential split.
inline constexpr double kSplitEnvelopeTol = 1e-14;

struct DeltaParams {
  BesselKernel kernel = BesselKernel::holomorphic(12);
  SmoothBump window = SmoothBump::canonical();
  double X = 1e5;
  int J = 0;
  /// I_g is computed to absolute accuracy tolerance_scale * X * (b^2 X)^{-1/4}.
  double tolerance_scale = 1e-9;
};

struct BesselIntegral {
  cplx value;
  double error_estimate;
  /// True if the kernel was replaced by its exponential split.
  bool split;
};

/// I_g(a, b; X) = int U(x/X) e(2a sqrt x) J_g(4 pi b sqrt x) dx.
BesselIntegral i_g_eval(const DeltaParams& params, double a, double b);
cplx i_g(const DeltaParams& params, double a, double b);

/// C_U(b, X) = X sum_{j <= J} d_j U~(3/4 - j/2) / (4 pi b sqrt X)^{j + 1/2}.
cplx c_u(const DeltaParams& params, double b);

struct DeltaEvaluation {
  cplx value;
  /// delta(n - r).
  double expected = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// The additive-character sum vanished, so no integral was computed.
  bool arithmetic_zero = false;
  /// (1/c) sum over the additive characters, 0 or 1.
  std::int64_t character_sum = 0;
  cplx i_g;
  cplx c_u;
};

/// (1/p) sum_{a mod p} e(a(n-r)/p) I_g(sqrt r/p, sqrt n/p; X) / C_U(sqrt r/p, X).
DeltaEvaluation delta_single_modulus(const DeltaParams& params, std::int64_t p, std::int64_t r, std::int64_t n);

/// (1/pq) sum_{c | pq} sum*_{a mod c} e(a(n-m)/c) I_g(sqrt m/pq, sqrt n/pq; X) / C_U(sqrt m/pq, X).
DeltaEvaluation delta_two_moduli(const DeltaParams& params, std::int64_t p, std::int64_t q, std::int64_t m,
                                 std::int64_t n);

/// Throws ParameterError unless some N has r, n in [N, 2N] and X^0.9 > max{N, c^2/N},
/// and min(r, n) X / c^2 >= kMinB2X.
void check_delta_preconditions(double X, std::int64_t modulus, std::int64_t r, std::int64_t n);

}  // namespace bdelta
