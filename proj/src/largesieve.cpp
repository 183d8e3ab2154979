#include "scs/largesieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "scs/arith.hpp"
#include "scs/common.hpp"

namespace scs {

namespace {

using i128 = __int128;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::uint64_t mod(i128 v, std::uint64_t m) {
  i128 r = v % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

// inverse of a modulo m, gcd(a, m) = 1, m >= 1
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  i128 old_r = static_cast<i128>(a % m), r = m;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    std::tie(old_r, r) = std::pair<i128, i128>{r, old_r - q * r};
    std::tie(old_s, s) = std::pair<i128, i128>{s, old_s - q * s};
  }
  if (old_r != 1) throw InvalidArgument("mod_inverse: arguments not coprime");
  return mod(old_s, m);
}

std::uint64_t abs64(std::int64_t w) {
  return w < 0 ? static_cast<std::uint64_t>(-(w + 1)) + 1 : static_cast<std::uint64_t>(w);
}

bool is_smooth(std::uint64_t n, double z) { return smooth_rough(n, z).b == 1; }

void dfs_h(const std::vector<std::uint64_t>& primes, const std::vector<mpq_class>& hp,
           std::size_t from, std::uint64_t q, const mpq_class& hq, std::uint64_t qmax,
           mpq_class& total) {
  total += hq;
  for (std::size_t j = from; j < primes.size(); ++j) {
    if (q > qmax / primes[j]) break;
    if (hp[j] == 0) continue;
    dfs_h(primes, hp, j + 1, q * primes[j], hq * hp[j], qmax, total);
  }
}

}  // namespace

unsigned OmegaSystem::omega(std::uint32_t p) const {
  const auto it = std::lower_bound(primes.begin(), primes.end(), p);
  if (it == primes.end() || *it != p) return 0;
  return static_cast<unsigned>(classes[static_cast<std::size_t>(it - primes.begin())].size());
}

std::uint64_t crt_residue(std::uint64_t a, std::uint64_t a_ell, std::int64_t w) {
  if (a == 0 || a_ell == 0) throw InvalidArgument("crt_residue: moduli must be positive");
  if (std::gcd(a, a_ell) != 1) throw InvalidArgument("crt_residue: moduli are not coprime");
  if (a_ell == 1) return 0;
  // r = a t with a t = -w (mod a_l)
  const std::uint64_t t = mod(-static_cast<i128>(w) * mod_inverse(a % a_ell, a_ell), a_ell);
  return a * t;
}

OmegaSystem build_omega(std::uint64_t a, std::uint64_t a_ell, std::int64_t w, double z, double x,
                        std::uint64_t v, double prime_cap) {
  if (a == 0 || a_ell == 0 || v == 0) throw InvalidArgument("build_omega: a, a_l, v must be positive");
  if (w == 0) throw InvalidArgument("build_omega: w must be nonzero");
  if (std::gcd(a, a_ell) != 1) throw InvalidArgument("build_omega: gcd(a, a_l) != 1");
  if (std::gcd(a * a_ell, abs64(w)) != 1) throw InvalidArgument("build_omega: gcd(a a_l, w) != 1");
  if (!is_smooth(a, z) || !is_smooth(a_ell, z)) {
    throw InvalidArgument("build_omega: a and a_l must be z-smooth");
  }
  if (!(x >= static_cast<double>(v))) throw InvalidArgument("build_omega: need v <= x");

  OmegaSystem sys;
  const std::uint64_t r = crt_residue(a, a_ell, w);
  sys.context = {a, a_ell, w, v, r, x, z};

  const auto M = static_cast<std::int64_t>(a * a_ell);
  const std::int64_t nv_lo = std::max<std::int64_t>(1, 1 - w);
  const auto nv_hi = static_cast<std::int64_t>(std::floor(x)) / static_cast<std::int64_t>(v);
  sys.m_lo = ceil_div(nv_lo - static_cast<std::int64_t>(r), M);
  sys.m_hi = floor_div(nv_hi - static_cast<std::int64_t>(r), M);

  double plimit = z;
  if (prime_cap >= 0.0) plimit = std::min(plimit, prime_cap);
  if (!(plimit < 4.0e9)) throw OutOfRange("build_omega: sieving range for P is too large");
  const auto top = static_cast<std::uint64_t>(std::max(0.0, std::floor(plimit)));
  const auto table = shared_primes(top);

  const i128 r_over_a = static_cast<i128>(r / a);
  const i128 shifted = static_cast<i128>(r) + w;  // divisible by a_l
  const i128 rw_over_al = shifted / static_cast<i128>(a_ell);
  for (std::uint32_t p : primes_up_to(*table, top)) {
    if (p == 2) continue;
    std::vector<std::uint32_t> omega;
    const bool divides_a = a % p == 0;
    const bool divides_al = a_ell % p == 0;
    if (!divides_al) {
      const std::uint64_t inv = mod_inverse(a_ell % p, p);
      omega.push_back(static_cast<std::uint32_t>(mod(-r_over_a * inv, p)));
    }
    if (!divides_a) {
      const std::uint64_t inv = mod_inverse(a % p, p);
      const auto r2 = static_cast<std::uint32_t>(mod(-rw_over_al * inv, p));
      if (omega.empty() || omega.front() != r2) omega.push_back(r2);
    }
    std::sort(omega.begin(), omega.end());
    sys.primes.push_back(p);
    sys.classes.push_back(std::move(omega));
  }
  return sys;
}

mpq_class h_value(std::uint64_t q, const OmegaSystem& sys) {
  if (q == 0) throw InvalidArgument("h_value: q must be positive");
  mpq_class h = 1;
  if (q == 1) return h;
  for (const auto& [p, e] : factorize(q)) {
    if (e > 1) throw InvalidArgument("h_value: q is not square-free");
    if (p > 0xFFFFFFFFull) throw InvalidArgument("h_value: prime outside P");
    const auto it = std::lower_bound(sys.primes.begin(), sys.primes.end(), static_cast<std::uint32_t>(p));
    if (it == sys.primes.end() || *it != p) throw InvalidArgument("h_value: prime outside P");
    const unsigned w = static_cast<unsigned>(sys.classes[static_cast<std::size_t>(it - sys.primes.begin())].size());
    h *= mpq_class(w, static_cast<unsigned long>(p - w));
  }
  h.canonicalize();
  return h;
}

mpq_class big_h(double Q, const OmegaSystem& sys) {
  if (!(Q >= 1.0)) throw InvalidArgument("big_h: Q must be >= 1");
  const std::uint64_t qmax = Q >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(std::floor(Q));
  std::vector<std::uint64_t> primes;
  std::vector<mpq_class> hp;
  for (std::size_t i = 0; i < sys.primes.size(); ++i) {
    const std::uint64_t p = sys.primes[i];
    if (p > qmax) break;
    const unsigned w = static_cast<unsigned>(sys.classes[i].size());
    if (w >= p) throw InvalidArgument("big_h: omega(p) must be < p");
    primes.push_back(p);
    mpq_class h(w, static_cast<unsigned long>(p - w));
    h.canonicalize();
    hp.push_back(h);
  }
  mpq_class total = 0;
  dfs_h(primes, hp, 0, 1, mpq_class(1), qmax, total);
  return total;
}

double ls_bound(std::uint64_t N, double Q, const mpq_class& H) {
  if (!(Q >= 1.0)) throw InvalidArgument("ls_bound: Q must be >= 1");
  if (sgn(H) <= 0) throw InvalidArgument("ls_bound: H must be positive");
  return (static_cast<double>(N) + Q * Q) / H.get_d();
}

double ls_bound(const OmegaSystem& sys, double Q) { return ls_bound(sys.N(), Q, big_h(Q, sys)); }

std::uint64_t sift_bruteforce(const OmegaSystem& sys) {
  const std::uint64_t N = sys.N();
  if (N > kBruteForceLimit) throw OutOfRange("sift_bruteforce: range exceeds the oracle limit");
  if (N == 0) return 0;
  std::vector<char> struck(N, 0);
  for (std::size_t i = 0; i < sys.primes.size(); ++i) {
    const std::int64_t p = sys.primes[i];
    for (std::uint32_t c : sys.classes[i]) {
      // first m >= m_lo with m = c (mod p)
      std::int64_t off = (static_cast<std::int64_t>(c) - sys.m_lo) % p;
      if (off < 0) off += p;
      for (auto k = static_cast<std::uint64_t>(off); k < N; k += static_cast<std::uint64_t>(p)) struck[k] = 1;
    }
  }
  return static_cast<std::uint64_t>(std::count(struck.begin(), struck.end(), 0));
}

nlohmann::json to_json(const OmegaSystem& sys) {
  nlohmann::json j;
  const auto& c = sys.context;
  j["context"] = {{"a", c.a}, {"a_ell", c.a_ell}, {"w", c.w}, {"v", c.v},
                  {"r", c.r}, {"x", c.x},         {"z", c.z}};
  j["m_lo"] = sys.m_lo;
  j["m_hi"] = sys.m_hi;
  j["N"] = sys.N();
  auto omega = nlohmann::json::array();
  for (std::size_t i = 0; i < sys.primes.size(); ++i) {
    omega.push_back({{"p", sys.primes[i]}, {"classes", sys.classes[i]}});
  }
  j["omega"] = std::move(omega);
  return j;
}

OmegaSystem omega_from_json(const nlohmann::json& j) {
  OmegaSystem sys;
  try {
    const auto& c = j.at("context");
    sys.context.a = c.at("a").get<std::uint64_t>();
    sys.context.a_ell = c.at("a_ell").get<std::uint64_t>();
    sys.context.w = c.at("w").get<std::int64_t>();
    sys.context.v = c.at("v").get<std::uint64_t>();
    sys.context.r = c.at("r").get<std::uint64_t>();
    sys.context.x = c.at("x").get<double>();
    sys.context.z = c.at("z").get<double>();
    sys.m_lo = j.at("m_lo").get<std::int64_t>();
    sys.m_hi = j.at("m_hi").get<std::int64_t>();
    for (const auto& entry : j.at("omega")) {
      sys.primes.push_back(entry.at("p").get<std::uint32_t>());
      sys.classes.push_back(entry.at("classes").get<std::vector<std::uint32_t>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed sieve system: ") + e.what());
  }
  if (j.contains("N") && j.at("N").get<std::uint64_t>() != sys.N()) {
    throw InvalidArgument("malformed sieve system: N disagrees with [m_lo, m_hi]");
  }
  for (std::size_t i = 0; i < sys.primes.size(); ++i) {
    const std::uint32_t p = sys.primes[i];
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw InvalidArgument("malformed sieve system: P must hold odd primes");
    if (i > 0 && sys.primes[i - 1] >= p) throw InvalidArgument("malformed sieve system: P must be increasing");
    if (sys.classes[i].size() >= p) throw InvalidArgument("malformed sieve system: omega(p) must be < p");
    for (std::uint32_t cl : sys.classes[i]) {
      if (cl >= p) throw InvalidArgument("malformed sieve system: residue not reduced mod p");
    }
  }
  return sys;
}

std::uint64_t uniform_draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw InvalidArgument("uniform_draw: empty range");
  const std::uint64_t span = hi - lo;
  if (span == UINT64_MAX) return rng();
  const std::uint64_t n = span + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + v % n;
}

OmegaSystem random_admissible_system(std::mt19937_64& rng, const RandomSystemLimits& limits) {
  if (limits.max_N < 2 || !(limits.max_z >= 3.0)) throw InvalidArgument("random system limits too small");
  const auto zmax = static_cast<std::uint64_t>(std::floor(limits.max_z));
  const auto z = static_cast<double>(uniform_draw(rng, 3, zmax));
  const auto table = shared_primes(zmax);
  const auto small = primes_up_to(*table, static_cast<std::uint64_t>(z));

  auto smooth_number = [&](std::uint64_t avoid) {
    std::uint64_t n = 1;
    const auto factors = uniform_draw(rng, 0, 3);
    for (std::uint64_t i = 0; i < factors; ++i) {
      const std::uint64_t p = small[uniform_draw(rng, 0, small.size() - 1)];
      if (avoid % p == 0 || n * p > 600) continue;
      n *= p;
    }
    return n;
  };

  for (;;) {
    const std::uint64_t a = smooth_number(1);
    const std::uint64_t a_ell = smooth_number(a);
    if (std::gcd(a, a_ell) != 1) continue;
    const auto w = static_cast<std::int64_t>(uniform_draw(rng, 0, 80)) - 40;
    if (w == 0 || std::gcd(a * a_ell, abs64(w)) != 1) continue;
    const std::uint64_t v = uniform_draw(rng, 1, 6);
    const std::uint64_t target = uniform_draw(rng, 1, limits.max_N - 1);
    const std::uint64_t modulus = v * a * a_ell;
    const double x = static_cast<double>(modulus * target + uniform_draw(rng, 0, modulus - 1));
    auto sys = build_omega(a, a_ell, w, z, x, v);
    if (sys.N() == 0 || sys.N() > limits.max_N) continue;
    return sys;
  }
}

}  // namespace scs
