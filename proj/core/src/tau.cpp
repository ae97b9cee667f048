#include <algorithm>
#include <array>
#include <boost/crc.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "besseldelta/errors.hpp"
#include "besseldelta/forms.hpp"

namespace bdelta {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// NTT primes c 2^k + 1 with 2^k >= 2^21; their product is about 2^149, well
// above 2 |tau(n)| for n <= 1e6 (|tau(n)| < 2^118).
constexpr std::array<u64, 5> kPrimes = {998244353, 167772161, 469762049, 754974721, 1004535809};

u64 pw(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

class Ntt {
 public:
  explicit Ntt(u64 p) : p_(p), g_(static_cast<u64>(primitive_root(static_cast<int>(p)))) {}

  void transform(std::vector<u64>& a, bool inverse) const {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      u64 w = pw(g_, (p_ - 1) / len, p_);
      if (inverse) w = pw(w, p_ - 2, p_);
      std::vector<u64> ws(len / 2);
      ws[0] = 1;
      for (std::size_t k = 1; k < len / 2; ++k) ws[k] = ws[k - 1] * w % p_;
      for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t k = 0; k < len / 2; ++k) {
          const u64 u = a[i + k];
          const u64 v = a[i + k + len / 2] * ws[k] % p_;
          a[i + k] = u + v >= p_ ? u + v - p_ : u + v;
          a[i + k + len / 2] = u >= v ? u - v : u + p_ - v;
        }
      }
    }
    if (inverse) {
      const u64 inv_n = pw(n, p_ - 2, p_);
      for (auto& x : a) x = x * inv_n % p_;
    }
  }

  // (a * b) mod x^len.
  std::vector<u64> multiply(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t len) const {
    const std::size_t na = std::min(a.size(), len), nb = std::min(b.size(), len);
    if (na == 0 || nb == 0) return std::vector<u64>(len, 0);
    std::size_t n = 1;
    while (n < na + nb - 1) n <<= 1;
    if ((p_ - 1) % n != 0) throw ResourceError("convolution longer than the NTT prime supports", n);
    std::vector<u64> fa(a.begin(), a.begin() + na), fb(b.begin(), b.begin() + nb);
    fa.resize(n, 0);
    fb.resize(n, 0);
    transform(fa, false);
    transform(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = fa[i] * fb[i] % p_;
    transform(fa, true);
    fa.resize(len, 0);
    return fa;
  }

  // Same product, with a cut into chunks of block_size.
  std::vector<u64> multiply_chunked(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t len,
                                    std::size_t block_size) const {
    if (block_size == 0 || block_size >= len) return multiply(a, b, len);
    std::vector<u64> out(len, 0);
    for (std::size_t s = 0; s < len && s < a.size(); s += block_size) {
      const std::size_t e = std::min({s + block_size, len, a.size()});
      std::vector<u64> chunk(a.begin() + s, a.begin() + e);
      const std::vector<u64> part = multiply(chunk, b, len - s);
      for (std::size_t i = 0; i < part.size(); ++i) {
        out[s + i] += part[i];
        if (out[s + i] >= p_) out[s + i] -= p_;
      }
    }
    return out;
  }

  u64 prime() const noexcept { return p_; }

 private:
  u64 p_;
  u64 g_;
};

// prod_{n >= 1} (1 - q^n) mod q^len by the pentagonal number theorem.
std::vector<int> euler_product(std::size_t len) {
  std::vector<int> e(len, 0);
  for (i64 k = 0;; ++k) {
    bool any = false;
    const int sign = (k % 2 == 0) ? 1 : -1;
    for (i64 g : {k * (3 * k - 1) / 2, k * (3 * k + 1) / 2}) {
      if (g < static_cast<i64>(len)) {
        e[g] = sign;
        any = true;
      }
    }
    if (!any) break;
  }
  return e;
}

// P^24 mod (p, q^len) via P^2, P^4, P^8, P^16, P^16 P^8.
std::vector<u64> eta24_mod(const Ntt& ntt, const std::vector<int>& euler, std::size_t len, std::size_t block) {
  const u64 p = ntt.prime();
  std::vector<u64> e(len);
  for (std::size_t i = 0; i < len; ++i) e[i] = euler[i] < 0 ? p - 1 : static_cast<u64>(euler[i]);
  auto p2 = ntt.multiply_chunked(e, e, len, block);
  auto p4 = ntt.multiply_chunked(p2, p2, len, block);
  auto p8 = ntt.multiply_chunked(p4, p4, len, block);
  auto p16 = ntt.multiply_chunked(p8, p8, len, block);
  return ntt.multiply_chunked(p16, p8, len, block);
}

void append_u32(std::string& out, u32 v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

void append_u64(std::string& out, u64 v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

// Minimal two's-complement little-endian bytes.
std::string signed_bytes(const BigInt& x) {
  BigInt mag = x < 0 ? BigInt(-x - 1) : x;  // for negatives, encode ~x then flip
  std::string bytes;
  while (mag != 0) {
    bytes.push_back(static_cast<char>(static_cast<unsigned>(mag & 0xff)));
    mag >>= 8;
  }
  const bool negative = x < 0;
  if (negative) {
    for (auto& b : bytes) b = static_cast<char>(~static_cast<unsigned char>(b));
  }
  // sign bit must match
  if (bytes.empty() || ((static_cast<unsigned char>(bytes.back()) & 0x80) != 0) != negative) {
    bytes.push_back(negative ? static_cast<char>(0xff) : '\0');
  }
  return bytes;
}

BigInt from_signed_bytes(const unsigned char* p, std::size_t n) {
  if (n == 0) return 0;
  const bool negative = (p[n - 1] & 0x80) != 0;
  BigInt x = 0;
  for (std::size_t i = n; i-- > 0;) {
    x <<= 8;
    x += negative ? static_cast<unsigned char>(~p[i]) : p[i];
  }
  return negative ? BigInt(-x - 1) : x;
}

std::string serialize_payload(const std::vector<BigInt>& table) {
  std::string out;
  append_u64(out, table.size());
  for (const auto& t : table) {
    const std::string b = signed_bytes(t);
    append_u32(out, static_cast<u32>(b.size()));
    out += b;
  }
  return out;
}

u32 crc32(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

}  // namespace

std::vector<BigInt> tau_table(i64 n_max, i64 block_size) {
  if (n_max < 1) throw ParameterError("n_max must be >= 1");
  if (n_max > kMaxTauTable) throw ResourceError("tau table above the 1e6 cap", static_cast<double>(n_max));
  if (block_size < 0) throw ParameterError("block_size must be >= 0");
  const std::size_t len = static_cast<std::size_t>(n_max);  // P^24 coefficients 0..n_max-1
  const auto euler = euler_product(len);

  std::array<std::vector<u64>, kPrimes.size()> residues;
  for (std::size_t k = 0; k < kPrimes.size(); ++k) {
    residues[k] = eta24_mod(Ntt(kPrimes[k]), euler, len, static_cast<std::size_t>(block_size));
  }

  // Garner: x = v0 + p0 (v1 + p1 (v2 + ...)), then center into (-M/2, M/2].
  constexpr std::size_t K = kPrimes.size();
  std::array<std::array<u64, K>, K> inv{};
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < i; ++j) inv[j][i] = pw(kPrimes[j] % kPrimes[i], kPrimes[i] - 2, kPrimes[i]);
  BigInt M = 1;
  for (u64 p : kPrimes) M *= p;
  const BigInt half = M / 2;

  std::vector<BigInt> tau(len + 1);
  tau[0] = 0;
  std::array<u64, K> v{};
  for (std::size_t n = 0; n < len; ++n) {
    for (std::size_t i = 0; i < K; ++i) {
      u64 x = residues[i][n];
      for (std::size_t j = 0; j < i; ++j) {
        const u64 p = kPrimes[i];
        x = (x + p - v[j] % p) % p * inv[j][i] % p;
      }
      v[i] = x;
    }
    BigInt x = v[K - 1];
    for (std::size_t i = K - 1; i-- > 0;) x = x * kPrimes[i] + v[i];
    if (x > half) x -= M;
    tau[n + 1] = std::move(x);
  }
  return tau;
}

std::filesystem::path tau_cache_path(const std::filesystem::path& dir, i64 n_max) {
  return dir / ("tau_" + std::to_string(n_max) + ".bin");
}

std::optional<std::filesystem::path> tau_cache_dir_from_env() {
  const char* env = std::getenv("BDELTA_CACHE_DIR");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

std::uint32_t tau_checksum(const std::vector<BigInt>& table) { return crc32(serialize_payload(table)); }

void write_tau_cache(const std::filesystem::path& file, const std::vector<BigInt>& table) {
  std::string bytes = serialize_payload(table);
  append_u32(bytes, crc32(bytes));
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open tau cache for writing: " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ResourceError("failed writing tau cache: " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

std::optional<std::vector<BigInt>> read_tau_cache(const std::filesystem::path& file, i64 n_max) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  if (bytes.size() < 12) return std::nullopt;
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t body = bytes.size() - 4;
  u32 stored = 0;
  for (int k = 0; k < 4; ++k) stored |= static_cast<u32>(p[body + k]) << (8 * k);
  if (crc32(bytes.substr(0, body)) != stored) return std::nullopt;

  u64 count = 0;
  for (int k = 0; k < 8; ++k) count |= static_cast<u64>(p[k]) << (8 * k);
  if (count != static_cast<u64>(n_max) + 1) return std::nullopt;
  std::vector<BigInt> table;
  table.reserve(count);
  std::size_t pos = 8;
  for (u64 i = 0; i < count; ++i) {
    if (pos + 4 > body) return std::nullopt;
    u32 len = 0;
    for (int k = 0; k < 4; ++k) len |= static_cast<u32>(p[pos + k]) << (8 * k);
    pos += 4;
    if (pos + len > body) return std::nullopt;
    table.push_back(from_signed_bytes(p + pos, len));
    pos += len;
  }
  if (pos != body) return std::nullopt;
  return table;
}

}  // namespace bdelta
