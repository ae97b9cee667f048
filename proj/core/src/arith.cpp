#include "besseldelta/arith.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "besseldelta/errors.hpp"

namespace bdelta {

namespace {

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> f;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      f.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

// sum_r counts[r] e(r / M), in residue order so that any permutation of the
// summands that produces the same histogram gives bitwise the same result.
cplx sum_histogram(const std::vector<i64>& counts) {
  const auto M = static_cast<long double>(counts.size());
  CompensatedComplexSum s;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    if (counts[r] != 0) s += static_cast<double>(counts[r]) * unit_phase(static_cast<long double>(r) / M);
  }
  return s.value();
}

cplx sum_sorted_residues(std::vector<i64> residues, i64 M) {
  std::sort(residues.begin(), residues.end());
  CompensatedComplexSum s;
  for (i64 r : residues) s += unit_phase(static_cast<long double>(r) / static_cast<long double>(M));
  return s.value();
}

void require_prime_modulus(int q) {
  if (q <= 3 || !is_prime(q)) throw ParameterError("character modulus must be a prime > 3");
  if (q > kMaxCharacterModulus) throw ResourceError("character modulus above table cap", q);
}

std::shared_ptr<const std::vector<int>> build_log_table(int q) {
  auto table = std::make_shared<std::vector<int>>(q, -1);
  const int g = primitive_root(q);
  i64 x = 1;
  for (int k = 0; k < q - 1; ++k) {
    (*table)[x] = k;
    x = x * g % q;
  }
  return table;
}

}  // namespace

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (i64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<int> primes_up_to(int n) {
  std::vector<bool> composite(std::max(n + 1, 2), false);
  std::vector<int> out;
  for (int i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (i64 j = static_cast<i64>(i) * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

i64 mod(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 mod_inverse(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 qt = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
  }
  if (old_r != 1) throw ParameterError("no inverse: gcd(a, m) != 1");
  return mod(old_s, m);
}

i64 pow_mod(i64 base, i64 exp, i64 m) {
  __int128 result = 1;
  __int128 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<i64>(result);
}

int primitive_root(int q) {
  if (!is_prime(q)) throw ParameterError("primitive_root needs a prime modulus");
  if (q == 2) return 1;
  const auto factors = prime_factors(q - 1);
  for (int g = 2; g < q; ++g) {
    bool ok = true;
    for (i64 f : factors) {
      if (pow_mod(g, (q - 1) / f, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw ParameterError("no primitive root found");
}

int moebius(i64 n) {
  int mu = 1;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> small, large;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

DirichletCharacter::DirichletCharacter(int q, int index) : q_(q), index_(0) {
  require_prime_modulus(q);
  index_ = static_cast<int>(mod(index, q - 1));
  log_table_ = build_log_table(q);
}

std::vector<DirichletCharacter> DirichletCharacter::all(int q) {
  DirichletCharacter base(q, 0);
  std::vector<DirichletCharacter> out;
  out.reserve(q - 1);
  for (int k = 0; k < q - 1; ++k) {
    DirichletCharacter c = base;
    c.index_ = k;
    out.push_back(c);
  }
  return out;
}

DirichletCharacter DirichletCharacter::quadratic(int q) { return DirichletCharacter(q, (q - 1) / 2); }

int DirichletCharacter::order() const noexcept {
  return static_cast<int>((q_ - 1) / gcd(index_, q_ - 1));
}

int DirichletCharacter::log(i64 n) const { return (*log_table_)[mod(n, q_)]; }

int DirichletCharacter::exponent(i64 n) const {
  const int k = log(n);
  if (k < 0) return -1;
  return static_cast<int>(static_cast<i64>(k) * index_ % (q_ - 1));
}

cplx DirichletCharacter::operator()(i64 n) const {
  const int e = exponent(n);
  if (e < 0) return 0.0;
  return unit_phase(static_cast<long double>(e) / (q_ - 1));
}

DirichletCharacter DirichletCharacter::conjugate() const {
  DirichletCharacter c = *this;
  c.index_ = static_cast<int>(mod(-index_, q_ - 1));
  return c;
}

i64 ramanujan_sum(i64 q, i64 a) {
  if (!is_prime(q)) throw ParameterError("ramanujan_sum: modulus must be prime; use ramanujan_sum_exact");
  return mod(a, q) == 0 ? q - 1 : -1;
}

double ramanujan_sum_bruteforce(i64 c, i64 a) {
  if (c < 1) throw ParameterError("modulus must be positive");
  std::vector<i64> counts(c, 0);
  for (i64 x = 0; x < c; ++x)
    if (gcd(x, c) == 1) ++counts[mod(a, c) * x % c];
  return sum_histogram(counts).real();
}

i64 ramanujan_sum_exact(i64 c, i64 a) {
  if (c < 1) throw ParameterError("modulus must be positive");
  const i64 g = gcd(c, a);
  i64 s = 0;
  for (i64 d : divisors(g == 0 ? c : g)) s += moebius(c / d) * d;
  return s;
}

cplx gauss_sum(const DirichletCharacter& chi) {
  if (chi.is_principal()) throw DegenerateInputError("Gauss sum of the principal character is not used");
  const i64 q = chi.modulus();
  const i64 M = q * (q - 1);
  // chi(beta) e(beta/q) = e((e_beta q + beta (q-1)) / (q (q-1)))
  std::vector<i64> residues;
  residues.reserve(q - 1);
  for (i64 beta = 1; beta < q; ++beta) residues.push_back(mod(chi.exponent(beta) * q + beta * (q - 1), M));
  return sum_sorted_residues(std::move(residues), M);
}

double kloosterman(i64 a, i64 b, i64 c) {
  if (c < 1) throw ParameterError("Kloosterman modulus must be positive");
  std::vector<i64> counts(c, 0);
  for (i64 x = 0; x < c; ++x) {
    if (gcd(x, c) != 1) continue;
    ++counts[(mod(a, c) * x + mod(b, c) * mod_inverse(x, c)) % c];
  }
  return sum_histogram(counts).real();
}

cplx frak_c_bruteforce(const DirichletCharacter& chi, i64 r1, i64 r2, i64 alpha, i64 gamma, i64 m) {
  const i64 q = chi.modulus();
  if (gcd(mod(alpha, q) * mod(gamma, q), q) != 1) throw ParameterError("frak_c requires (alpha gamma, q) = 1");
  std::vector<i64> counts(q - 1, 0);
  for (i64 z = 1; z < q; ++z) {
    const i64 t = mod(m + mod(gamma, q) * mod_inverse(z, q), q);
    if (t == 0) continue;
    const int eu = chi.exponent(r1 + z);
    const int ev = chi.exponent(mod(r2, q) + mod(alpha, q) * mod_inverse(t, q));
    if (eu < 0 || ev < 0) continue;
    ++counts[mod(ev - eu, q - 1)];
  }
  return sum_histogram(counts);
}

FrakCCase frak_c_case(int q, i64 r1, i64 r2, i64 alpha, i64 gamma, i64 m) {
  if (mod(m, q) == 0) return FrakCCase::q_divides_m;
  const i64 mbar = mod_inverse(m, q);
  if (mod(r1 - mbar * mod(gamma, q), q) == 0 && mod(r2 + mbar * mod(alpha, q), q) == 0) return FrakCCase::double_root;
  return FrakCCase::generic;
}

std::optional<cplx> frak_c_closed(const DirichletCharacter& chi, i64 r1, i64 r2, i64 alpha, i64 gamma, i64 m) {
  const i64 q = chi.modulus();
  if (!chi.is_primitive()) throw ParameterError("frak_c closed form requires a primitive character");
  if (gcd(mod(alpha, q) * mod(gamma, q), q) != 1) throw ParameterError("frak_c requires (alpha gamma, q) = 1");
  if (gcd(mod(r1, q) * mod(r2, q), q) != 1) throw ParameterError("frak_c closed form requires (r1 r2, q) = 1");
  const i64 gbar = mod_inverse(gamma, q);
  switch (frak_c_case(static_cast<int>(q), r1, r2, alpha, gamma, m)) {
    case FrakCCase::q_divides_m: {
      const i64 ag = mod(alpha, q) * gbar % q;
      return chi(ag) * static_cast<double>(ramanujan_sum(q, r2 - r1 * ag)) - chi(mod(r2, q) * mod_inverse(r1, q));
    }
    case FrakCCase::double_root: {
      const cplx common = -chi(mod(m, q) * mod(r2, q) % q * gbar);
      if (!chi.is_quadratic()) return common;
      // The quadratic case carries the same -chi(m r2 gbar) term as the others.
      return chi(mod_inverse(m, q) * mod(r2, q) % q * mod(gamma, q)) * static_cast<double>(q - 1) + common;
    }
    case FrakCCase::generic:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace bdelta
