#include "besseldelta/forms.hpp"

#include <cmath>

#include "besseldelta/errors.hpp"

namespace bdelta {

RamanujanDelta::RamanujanDelta(i64 n_max, bool use_cache) {
  if (n_max < 1) throw ParameterError("n_max must be >= 1");
  if (n_max > kMaxTauTable) throw ResourceError("tau table above the 1e6 cap", static_cast<double>(n_max));
  const auto dir = use_cache ? tau_cache_dir_from_env() : std::nullopt;
  if (dir) {
    if (auto cached = read_tau_cache(tau_cache_path(*dir, n_max), n_max)) tau_ = std::move(*cached);
  }
  if (tau_.empty()) {
    tau_ = tau_table(n_max);
    if (dir) {
      try {
        write_tau_cache(tau_cache_path(*dir, n_max), tau_);
      } catch (const std::exception&) {
        // an unwritable cache only costs a recomputation next time
      }
    }
  }
  normalize();
}

RamanujanDelta::RamanujanDelta(std::vector<BigInt> table) : tau_(std::move(table)) {
  if (tau_.size() < 2) throw ParameterError("tau table must contain tau(1)");
  normalize();
}

void RamanujanDelta::normalize() {
  lambda_.assign(tau_.size(), 0.0);
  for (std::size_t n = 1; n < tau_.size(); ++n) {
    // tau(n) has up to ~118 bits; scale in long double before dividing.
    const long double t = tau_[n].convert_to<long double>();
    lambda_[n] = static_cast<double>(t / std::pow(static_cast<long double>(n), 5.5L));
  }
}

double RamanujanDelta::lambda(i64 n) const {
  if (n < 1) throw DomainError("lambda(n) needs n >= 1");
  if (n > size()) throw ResourceError("coefficient table exhausted", static_cast<double>(n));
  return lambda_[n];
}

const BigInt& RamanujanDelta::tau(i64 n) const {
  if (n < 1) throw DomainError("tau(n) needs n >= 1");
  if (n > size()) throw ResourceError("coefficient table exhausted", static_cast<double>(n));
  return tau_[n];
}

i64 divisor_count(i64 n) {
  if (n < 1) throw DomainError("divisor_count needs n >= 1");
  i64 d = 1;
  for (i64 p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    d *= e + 1;
  }
  return n > 1 ? 2 * d : d;
}

bool hecke_relation_check(const RamanujanDelta& coeffs, i64 m, i64 n) {
  if (m < 1 || n < 1) throw DomainError("Hecke relation needs m, n >= 1");
  if (m * n > coeffs.size()) throw ResourceError("mn beyond the coefficient table", static_cast<double>(m * n));
  BigInt rhs = 0;
  for (i64 d : divisors(gcd(m, n))) {
    rhs += boost::multiprecision::pow(BigInt(d), 11) * coeffs.tau(m * n / (d * d));
  }
  return coeffs.tau(m) * coeffs.tau(n) == rhs;
}

bool deligne_check(const RamanujanDelta& coeffs, i64 n) {
  const BigInt t = coeffs.tau(n);
  const BigInt d = divisor_count(n);
  return t * t <= d * d * boost::multiprecision::pow(BigInt(n), 11);
}

double rankin_selberg_ratio(const CoefficientProvider& coeffs, i64 N) {
  if (N < 1) throw ParameterError("N must be >= 1");
  if (N > coeffs.size()) throw ResourceError("coefficient table exhausted", static_cast<double>(N));
  CompensatedSum s;
  for (i64 n = 1; n <= N; ++n) {
    const double l = coeffs.lambda(n);
    s += l * l;
  }
  return s.value() / static_cast<double>(N);
}

}  // namespace bdelta
