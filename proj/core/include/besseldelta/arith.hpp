#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "besseldelta/numeric.hpp"

namespace bdelta {

using i64 = std::int64_t;

bool is_prime(i64 n);
std::vector<int> primes_up_to(int n);
/// Representative of a mod m in [0, m).
i64 mod(i64 a, i64 m);
i64 gcd(i64 a, i64 b);
/// a^{-1} mod m; throws ParameterError if gcd(a, m) != 1.
i64 mod_inverse(i64 a, i64 m);
i64 pow_mod(i64 base, i64 exp, i64 m);
/// Least primitive root of the prime q.
int primitive_root(int q);
int moebius(i64 n);
std::vector<i64> divisors(i64 n);

inline constexpr int kMaxCharacterModulus = 1'000'000;

/// chi(g^k) = e(k * index / (q - 1)) for the least primitive root g mod a prime q > 3.
class DirichletCharacter {
 public:
  DirichletCharacter(int q, int index);

  /// All q - 1 characters, index 0 (principal) first.
  static std::vector<DirichletCharacter> all(int q);
  static DirichletCharacter quadratic(int q);

  int modulus() const noexcept { return q_; }
  int index() const noexcept { return index_; }
  /// Multiplicative order of chi.
  int order() const noexcept;
  bool is_principal() const noexcept { return index_ == 0; }
  bool is_quadratic() const noexcept { return 2 * index_ == q_ - 1; }
  /// chi = chi_0 is the only imprimitive character mod a prime.
  bool is_primitive() const noexcept { return !is_principal(); }

  /// Discrete logarithm of a unit n; -1 if q | n.
  int log(i64 n) const;
  /// k * index mod (q - 1) for n = g^k; the exponent of chi(n) in units of 1/(q-1).
  int exponent(i64 n) const;
  cplx operator()(i64 n) const;
  DirichletCharacter conjugate() const;

 private:
  int q_;
  int index_;
  std::shared_ptr<const std::vector<int>> log_table_;
};

/// R_q(a) for prime q: q - 1 if q | a, else -1.
i64 ramanujan_sum(i64 q, i64 a);
/// sum over units x mod c of e(a x / c), by direct summation.
double ramanujan_sum_bruteforce(i64 c, i64 a);
/// The same sum in closed form, sum_{d | (c, a)} mu(c/d) d.
i64 ramanujan_sum_exact(i64 c, i64 a);

/// g_chi = sum_beta chi(beta) e(beta / q). Throws DegenerateInputError for chi principal.
cplx gauss_sum(const DirichletCharacter& chi);

/// S(a, b; c) = sum over units x mod c of e((a x + b xbar) / c).
double kloosterman(i64 a, i64 b, i64 c);

/// sum_{z in F_q^*} chi(r1 + z) conj(chi(r2 + alpha / (m + gamma / z))), by direct summation.
cplx frak_c_bruteforce(const DirichletCharacter& chi, i64 r1, i64 r2, i64 alpha, i64 gamma, i64 m);

enum class FrakCCase { q_divides_m, double_root, generic };
FrakCCase frak_c_case(int q, i64 r1, i64 r2, i64 alpha, i64 gamma, i64 m);

/// Closed form where one exists; std::nullopt in the generic case, for which
/// only the bound O(q^{1/2}) is available. chi must be primitive.
std::optional<cplx> frak_c_closed(const DirichletCharacter& chi, i64 r1, i64 r2, i64 alpha, i64 gamma, i64 m);

}  // namespace bdelta
