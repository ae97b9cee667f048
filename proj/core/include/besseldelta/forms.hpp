#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "besseldelta/arith.hpp"
#include "besseldelta/numeric.hpp"
#include "besseldelta/special_fn.hpp"

namespace bdelta {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr i64 kMaxTauTable = 1'000'000;

/// tau(0..n_max) with tau(0) = 0, from q prod (1 - q^n)^24.
/// block_size > 0 splits every convolution into chunks of that length;
/// the result does not depend on it.
std::vector<BigInt> tau_table(i64 n_max, i64 block_size = 0);

/// Cache file for a table of the given size inside dir.
std::filesystem::path tau_cache_path(const std::filesystem::path& dir, i64 n_max);
/// Directory named by BDELTA_CACHE_DIR, if set and non-empty.
std::optional<std::filesystem::path> tau_cache_dir_from_env();
/// Layout: u64 count, then per entry u32 byte length and the minimal
/// two's-complement little-endian bytes, then a u32 CRC-32 of everything before.
void write_tau_cache(const std::filesystem::path& file, const std::vector<BigInt>& table);
/// std::nullopt on a missing, truncated or corrupt file, or on a size mismatch.
std::optional<std::vector<BigInt>> read_tau_cache(const std::filesystem::path& file, i64 n_max);
/// CRC-32 of the serialized table (same bytes as the cache payload).
std::uint32_t tau_checksum(const std::vector<BigInt>& table);

/// Normalized Hecke eigenvalues of a fixed level-1 holomorphic form.
class CoefficientProvider {
 public:
  virtual ~CoefficientProvider() = default;
  virtual int weight() const = 0;
  /// Largest n for which lambda(n) is available.
  virtual i64 size() const = 0;
  /// lambda(n) = a(n) / n^{(weight-1)/2}; throws ResourceError beyond size().
  virtual double lambda(i64 n) const = 0;
};

/// The discriminant form Delta, weight 12, backed by exact tau(n).
class RamanujanDelta final : public CoefficientProvider {
 public:
  /// Loads from the BDELTA_CACHE_DIR cache when present, writes it otherwise.
  explicit RamanujanDelta(i64 n_max, bool use_cache = true);
  explicit RamanujanDelta(std::vector<BigInt> table);

  int weight() const override { return 12; }
  i64 size() const override { return static_cast<i64>(lambda_.size()) - 1; }
  double lambda(i64 n) const override;
  const BigInt& tau(i64 n) const;
  const std::vector<BigInt>& table() const noexcept { return tau_; }

 private:
  void normalize();
  std::vector<BigInt> tau_;
  std::vector<double> lambda_;
};

i64 divisor_count(i64 n);

/// tau(m) tau(n) == sum_{d | (m, n)} d^11 tau(mn/d^2), in exact integers.
bool hecke_relation_check(const RamanujanDelta& coeffs, i64 m, i64 n);
/// tau(n)^2 <= d(n)^2 n^11, in exact integers.
bool deligne_check(const RamanujanDelta& coeffs, i64 n);
/// sum_{n <= N} lambda(n)^2 / N.
double rankin_selberg_ratio(const CoefficientProvider& coeffs, i64 N);

/// Level-1 Voronoi summation for a weight-12 form with the plateau weight
/// F(x) = V(x/N), V = plateau(1, 2, kVoronoiDelta).
inline constexpr double kVoronoiDelta = 4.0;
inline constexpr i64 kVoronoiMaxModulus = 5;
inline constexpr double kVoronoiMaxN = 200.0;
/// Hard cap on the dual sum length.
inline constexpr i64 kVoronoiMaxDualTerms = 200'000;

struct VoronoiReport {
  i64 a = 0;
  i64 c = 1;
  double N = 0.0;
  cplx lhs;
  /// Dual side including eta.
  cplx rhs;
  double diff = 0.0;
  cplx eta;
  /// Number of dual terms summed.
  i64 dual_terms = 0;
  double tolerance = 0.0;
  bool pass = false;
};

class VoronoiVerifier {
 public:
  /// rel_tol and abs_tol define pass: |lhs - rhs| <= rel_tol max(|lhs|, |rhs|) + abs_tol.
  explicit VoronoiVerifier(std::shared_ptr<const CoefficientProvider> coeffs, double rel_tol = 1e-6,
                           double abs_tol = 1e-8);

  /// sum_n lambda(n) e(an/c) F(n).
  cplx lhs(i64 a, i64 c, double N) const;
  /// (1/c) sum_n lambda(n) e(-abar n/c) int F(x) J_g(4 pi sqrt(nx)/c) dx, without eta.
  cplx dual(i64 a, i64 c, double N, i64* terms = nullptr) const;

  /// Fixes eta as lhs/dual at (a, c) = (1, 2), N = 50. Throws PrecisionLossError
  /// unless | |eta| - 1 | <= 1e-6.
  cplx determine_eta();
  bool has_eta() const noexcept { return eta_.has_value(); }
  cplx eta() const;

  /// Both sides with the frozen eta (determined on first use).
  VoronoiReport check(i64 a, i64 c, double N);

 private:
  void check_arguments(i64 a, i64 c, double N) const;
  std::shared_ptr<const CoefficientProvider> coeffs_;
  double rel_tol_;
  double abs_tol_;
  BesselKernel kernel_;
  std::optional<cplx> eta_;
  // dual side at the eta reference point, reused by check(1, 2, 50)
  std::optional<cplx> reference_dual_;
  i64 reference_terms_ = 0;
};

}  // namespace bdelta
