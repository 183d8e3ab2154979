#pragma once

// The sieve problem behind the bound for the part of the shifted sum with
// small smooth parts. For fixed (v, w, a, a_l) with v*w = l, gcd(a, a_l) =
// gcd(a*a_l, w) = 1, the integers n_v = a*a_l*m + r (r the CRT residue with
// r = 0 mod a, r = -w mod a_l) whose cofactors b = n_v/a and
// b_l = (n_v + w)/a_l avoid every odd prime p <= z are exactly the m that
// avoid the classes Omega_p:
//   p | a    : {r1}
//   p | a_l  : {r2}
//   otherwise: {r1, r2}
// with r1 = -(a_l)^{-1} (r/a) and r2 = -a^{-1} (r + w)/a_l mod p.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include <json.hpp>

namespace scs {

struct SieveContext {
  std::uint64_t a = 1;
  std::uint64_t a_ell = 1;
  std::int64_t w = 1;
  std::uint64_t v = 1;
  std::uint64_t r = 0;
  double x = 0.0;
  double z = 0.0;
};

struct OmegaSystem {
  SieveContext context;
  // m runs over [m_lo, m_hi]; this is the range that puts n_v = a*a_l*m + r
  // in [max(1, 1 - w), floor(x / v)].
  std::int64_t m_lo = 1;
  std::int64_t m_hi = 0;
  std::vector<std::uint32_t> primes;               // P, increasing
  std::vector<std::vector<std::uint32_t>> classes;  // Omega_p, parallel to primes

  std::uint64_t N() const { return m_hi >= m_lo ? static_cast<std::uint64_t>(m_hi - m_lo + 1) : 0; }
  /// omega(p) = |Omega_p|; 0 when p is not in P.
  unsigned omega(std::uint32_t p) const;
};

/// Unique 0 <= r < a*a_l with r = 0 (mod a) and r = -w (mod a_l).
std::uint64_t crt_residue(std::uint64_t a, std::uint64_t a_ell, std::int64_t w);

/// Builds Omega_p for every odd prime p <= min(z, prime_cap). The cap only
/// shrinks P; big_h(Q, .) never looks past Q, so capping at Q leaves the
/// large-sieve bound unchanged.
OmegaSystem build_omega(std::uint64_t a, std::uint64_t a_ell, std::int64_t w, double z, double x,
                        std::uint64_t v, double prime_cap = -1.0);

/// h(q) = prod_{p | q} omega(p) / (p - omega(p)) for square-free q with
/// every prime factor in P.
mpq_class h_value(std::uint64_t q, const OmegaSystem& sys);

/// H = sum of h(q) over square-free q <= Q composed of primes of P.
mpq_class big_h(double Q, const OmegaSystem& sys);

/// (N + Q^2) / H.
double ls_bound(std::uint64_t N, double Q, const mpq_class& H);
double ls_bound(const OmegaSystem& sys, double Q);

constexpr std::uint64_t kBruteForceLimit = 10'000'000;

/// Number of m in [m_lo, m_hi] with m mod p outside Omega_p for all p in P.
std::uint64_t sift_bruteforce(const OmegaSystem& sys);

nlohmann::json to_json(const OmegaSystem& sys);
/// Reads a dumped system. Structural checks only: residues reduced,
/// omega(p) < p, primes odd and increasing. Classes are taken as stored.
OmegaSystem omega_from_json(const nlohmann::json& j);

struct RandomSystemLimits {
  std::uint64_t max_N = 100'000;
  double max_z = 50.0;
};

/// A random admissible system: z-smooth coprime a, a_l, a shift w coprime
/// to a*a_l, a divisor part v, and x sized so that N <= max_N.
OmegaSystem random_admissible_system(std::mt19937_64& rng, const RandomSystemLimits& limits = {});

/// Uniform integer in [lo, hi] from raw 64-bit draws, identical on every
/// standard library.
std::uint64_t uniform_draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

}  // namespace scs
