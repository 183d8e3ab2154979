#pragma once

// Elementary multiplicative functions, the prime table, the smooth/rough
// split n = a*b at a threshold z, and the sieving parameters (x, eps, s, z, y, Q).

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace scs {

/// Primes up to `limit` by the sieve of Eratosthenes.
std::vector<std::uint32_t> prime_table(std::uint64_t limit);

/// Process-wide prime table, grown on demand and never shrunk. When the
/// environment variable SCS_PRIME_CACHE names a directory, tables are read
/// from and written to <dir>/primes_<limit>.bin.
std::shared_ptr<const std::vector<std::uint32_t>> shared_primes(std::uint64_t limit);

/// Primes p <= limit as a view into the shared table.
std::span<const std::uint32_t> primes_up_to(const std::vector<std::uint32_t>& table,
                                            std::uint64_t limit);

bool is_prime(std::uint64_t n);

using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

/// Trial division against the shared prime table.
Factorization factorize(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t euler_phi(std::uint64_t n);
/// Number of divisors.
std::uint64_t tau(std::uint64_t n);
/// Number of ordered m-tuples of positive integers with product n.
std::uint64_t tau_m(std::uint64_t n, unsigned m);
/// Number of prime factors counted with multiplicity.
unsigned big_omega(std::uint64_t n);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
/// Positive divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);
/// Moebius function.
int moebius(std::uint64_t n);

/// Split n = a*b where every prime of a is <= z and every prime of b is > z.
struct SmoothRoughFactorization {
  std::uint64_t n = 1;
  double z = 2.0;
  std::uint64_t a = 1;  // smooth part
  std::uint64_t b = 1;  // rough part
};

SmoothRoughFactorization smooth_rough(std::uint64_t n, double z);

/// z-smooth parts of every n in [lo, hi], computed by sieving the range
/// with the primes up to min(z, sqrt(hi)). Entry i belongs to lo + i.
std::vector<std::uint64_t> smooth_parts(std::uint64_t lo, std::uint64_t hi, double z);

/// Parameters (x, eps, s, z, y, Q) of the sieve argument:
///   s = eps log log x,  z = x^{1/s},  y = x^eps,  Q = x^{1/4}.
/// The argument needs x >= exp(exp(exp((4 + m^4)/(2 eps)))); below that the
/// parameters are still produced and `below_paper_threshold` is set.
struct SievingParameters {
  double x = 0.0;
  double epsilon = 0.0;
  double s = 0.0;
  double z = 0.0;
  double y = 0.0;
  double Q = 0.0;
  unsigned m = 2;
  bool below_paper_threshold = true;
  /// Whether 2 <= z <= y <= x holds; at desk scale z usually exceeds y.
  bool ordering_holds = false;

  /// Primes above x divide no n <= x, so the sieve only ever needs z capped at x.
  double z_effective() const { return z < x ? z : x; }
};

SievingParameters make_params(double x, double epsilon, unsigned m = 2);

}  // namespace scs
