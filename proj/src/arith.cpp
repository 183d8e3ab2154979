#include "scs/arith.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <string>

#include "scs/common.hpp"

namespace scs {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t floor_threshold(double z, std::uint64_t cap) {
  if (!(z >= 0.0)) return 0;
  if (z >= static_cast<double>(cap)) return cap;
  return static_cast<std::uint64_t>(std::floor(z));
}

std::filesystem::path cache_path(std::uint64_t limit) {
  const char* dir = std::getenv("SCS_PRIME_CACHE");
  if (!dir || !*dir) return {};
  return std::filesystem::path(dir) / ("primes_" + std::to_string(limit) + ".bin");
}

bool load_cached(const std::filesystem::path& path, std::uint64_t limit,
                 std::vector<std::uint32_t>& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::uint64_t stored_limit = 0, count = 0;
  in.read(reinterpret_cast<char*>(&stored_limit), sizeof stored_limit);
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!in || stored_limit != limit || count > limit) return false;
  std::vector<std::uint32_t> primes(count);
  in.read(reinterpret_cast<char*>(primes.data()),
          static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
  if (!in) return false;
  out = std::move(primes);
  return true;
}

void store_cached(const std::filesystem::path& path, std::uint64_t limit,
                  const std::vector<std::uint32_t>& primes) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    const std::uint64_t count = primes.size();
    out.write(reinterpret_cast<const char*>(&limit), sizeof limit);
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    out.write(reinterpret_cast<const char*>(primes.data()),
              static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
    if (!out) return;
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace

std::vector<std::uint32_t> prime_table(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  if (limit > 0xFFFFFFFFull) throw OutOfRange("prime_table limit exceeds 32-bit range");
  // odd-only sieve: index i stands for 2i+1
  const std::uint64_t half = (limit - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  primes.push_back(2);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  return primes;
}

std::shared_ptr<const std::vector<std::uint32_t>> shared_primes(std::uint64_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<std::uint32_t>> table;
  static std::uint64_t covered = 0;
  std::lock_guard lock(mu);
  if (!table || covered < limit) {
    const std::uint64_t target = std::max<std::uint64_t>({limit, 2 * covered, 1u << 16});
    auto fresh = std::make_shared<std::vector<std::uint32_t>>();
    const auto path = cache_path(target);
    if (path.empty() || !load_cached(path, target, *fresh)) {
      *fresh = prime_table(target);
      if (!path.empty()) store_cached(path, target, *fresh);
    }
    table = std::move(fresh);
    covered = target;
  }
  return table;
}

std::span<const std::uint32_t> primes_up_to(const std::vector<std::uint32_t>& table,
                                            std::uint64_t limit) {
  const auto end = std::upper_bound(table.begin(), table.end(), limit,
                                    [](std::uint64_t v, std::uint32_t p) { return v < p; });
  return {table.data(), static_cast<std::size_t>(end - table.begin())};
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  const auto f = factorize(n);
  return f.size() == 1 && f[0].second == 1;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("factorize: n must be positive");
  Factorization out;
  const auto table = shared_primes(isqrt(n) + 1);
  std::uint64_t m = n;
  for (std::uint32_t p32 : *table) {
    const std::uint64_t p = p32;
    if (p * p > m) break;
    if (m % p) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::uint64_t tau(std::uint64_t n) { return tau_m(n, 2); }

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t tau_m(std::uint64_t n, unsigned m) {
  if (n == 0 || m == 0) throw InvalidArgument("tau_m: n and m must be positive");
  std::uint64_t r = 1;
  for (const auto& [p, e] : factorize(n)) r *= binomial(e + m - 1, m - 1);
  return r;
}

unsigned big_omega(std::uint64_t n) {
  unsigned r = 0;
  if (n == 1) return 0;
  for (const auto& [p, e] : factorize(n)) r += e;
  return r;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> d{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = d.size();
    std::uint64_t pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) d.push_back(d[j] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

int moebius(std::uint64_t n) {
  if (n == 1) return 1;
  int s = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

SmoothRoughFactorization smooth_rough(std::uint64_t n, double z) {
  if (n == 0) throw InvalidArgument("smooth_rough: n must be positive");
  SmoothRoughFactorization f{n, z, 1, 1};
  if (!(z >= 2.0)) {
    f.b = n;
    return f;
  }
  const std::uint64_t root = isqrt(n);
  const std::uint64_t limit = std::min(floor_threshold(z, root), root);
  const auto table = shared_primes(limit + 1);
  std::uint64_t m = n;
  bool m_is_prime_or_one = false;
  for (std::uint32_t p32 : primes_up_to(*table, limit)) {
    const std::uint64_t p = p32;
    if (p * p > m) {
      m_is_prime_or_one = true;
      break;
    }
    while (m % p == 0) {
      m /= p;
      f.a *= p;
    }
  }
  if (!m_is_prime_or_one && limit >= isqrt(m)) m_is_prime_or_one = true;
  if (m > 1) {
    if (m_is_prime_or_one && static_cast<double>(m) <= z) {
      f.a *= m;
    } else {
      f.b = m;
    }
  }
  return f;
}

std::vector<std::uint64_t> smooth_parts(std::uint64_t lo, std::uint64_t hi, double z) {
  if (lo == 0 || hi < lo) throw InvalidArgument("smooth_parts: need 1 <= lo <= hi");
  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::uint64_t> smooth(len, 1);
  if (!(z >= 2.0)) return smooth;
  std::vector<std::uint64_t> rest(len);
  for (std::size_t i = 0; i < len; ++i) rest[i] = lo + i;
  const std::uint64_t root = isqrt(hi);
  const std::uint64_t limit = std::min(floor_threshold(z, root), root);
  const auto table = shared_primes(limit + 1);
  for (std::uint32_t p32 : primes_up_to(*table, limit)) {
    const std::uint64_t p = p32;
    for (std::uint64_t k = (lo + p - 1) / p * p; k <= hi; k += p) {
      const std::size_t i = static_cast<std::size_t>(k - lo);
      do {
        rest[i] /= p;
        smooth[i] *= p;
      } while (rest[i] % p == 0);
    }
  }
  // With every prime up to sqrt(hi) removed, any leftover > 1 is a prime.
  if (limit == root) {
    for (std::size_t i = 0; i < len; ++i) {
      if (rest[i] > 1 && static_cast<double>(rest[i]) <= z) smooth[i] *= rest[i];
    }
  }
  return smooth;
}

SievingParameters make_params(double x, double epsilon, unsigned m) {
  if (!(x >= 16.0) || !std::isfinite(x)) throw InvalidArgument("make_params: x must be >= 16");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("make_params: epsilon must lie in (0, 1)");
  }
  if (m == 0) throw InvalidArgument("make_params: m must be positive");
  SievingParameters p;
  p.x = x;
  p.epsilon = epsilon;
  p.m = m;
  const double lx = std::log(x);
  const double llx = std::log(lx);
  p.s = epsilon * llx;
  p.z = std::exp(lx / p.s);
  p.y = std::pow(x, epsilon);
  p.Q = std::pow(x, 0.25);
  const double m4 = std::pow(static_cast<double>(m), 4);
  const double threshold = (4.0 + m4) / (2.0 * epsilon);
  p.below_paper_threshold = !(llx > 0.0 && std::log(llx) >= threshold);
  p.ordering_holds = p.z >= 2.0 && p.z <= p.y && p.y <= p.x;
  return p;
}

}  // namespace scs
