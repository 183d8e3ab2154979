#pragma once

// Exact q-expansions of level-1 modular forms and the normalized Hecke
// eigenforms of weight 12, 16, 18, 20, 22 and 26 (the weights whose cusp
// space is one-dimensional).

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace scs {

/// Fourier coefficients a(0..N) of a modular form of the given weight.
struct QExpansion {
  int weight = 0;
  std::vector<mpz_class> coeffs;

  std::size_t cutoff() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  const mpz_class& operator[](std::size_t n) const { return coeffs[n]; }
};

/// Product of two integer power series truncated at degree n. The product
/// is formed exactly by Kronecker substitution: both series are packed into
/// single big integers, multiplied once, and unpacked.
std::vector<mpz_class> multiply_truncated(std::span<const mpz_class> a,
                                          std::span<const mpz_class> b, std::size_t n);

/// Schoolbook convolution; reference for multiply_truncated.
std::vector<mpz_class> multiply_naive(std::span<const mpz_class> a,
                                      std::span<const mpz_class> b, std::size_t n);

/// Normalized Eisenstein series E_k, k in {4, 6, 8, 10, 14}, with constant
/// term 1. E8, E10 and E14 are built as products of E4 and E6.
QExpansion eisenstein_qexp(int k, std::size_t N);

/// Delta = q prod (1 - q^n)^24 truncated at N.
QExpansion delta_qexp(std::size_t N);

/// Delta as (E4^3 - E6^2) / 1728; the second, independent construction.
QExpansion delta_from_eisenstein(std::size_t N);

/// a(n) * n^{-(k-1)/2} evaluated through the exponent of a(n), so the huge
/// integer never has to fit in a double.
double normalized_eigenvalue(const mpz_class& a, std::uint64_t n, int weight);

/// Normalized Hecke eigencuspform with a_f(1) = 1. Immutable once built.
class EigenForm {
 public:
  EigenForm(QExpansion qexp);

  int weight() const { return qexp_.weight; }
  std::size_t cutoff() const { return qexp_.cutoff(); }
  const QExpansion& qexp() const { return qexp_; }
  const mpz_class& coefficient(std::uint64_t n) const;

  /// lambda_f(n) for 1 <= n <= cutoff.
  double lambda(std::uint64_t n) const;
  /// lambda_f(0..cutoff); entry 0 is unused and set to 0.
  std::span<const double> lambdas() const { return lambdas_; }

 private:
  QExpansion qexp_;
  std::vector<double> lambdas_;
};

bool is_supported_weight(int k);

/// The unique normalized eigenform of weight k: Delta for k = 12 and
/// Delta * E_{k-12} otherwise.
EigenForm eigenform(int k, std::size_t N);

struct HeckeViolation {
  enum class Kind { Normalization, Multiplicativity, PrimePowerRecursion, Deligne };
  Kind kind;
  std::uint64_t m = 0;  // first argument (or the prime)
  std::uint64_t n = 0;  // second argument (or the exponent j)
  std::string detail;
};

/// Exact checks of a(1) = 1, a(mn) = a(m)a(n) for coprime m, n with
/// mn <= cutoff, a(p)a(p^j) = a(p^{j+1}) + p^{k-1}a(p^{j-1}), and the
/// Deligne bound a(p)^2 <= 4p^{k-1}. An empty result means success.
std::vector<HeckeViolation> hecke_verify(const EigenForm& f);

/// Largest |lambda_f(p)| over primes p <= limit, with the maximizing prime.
struct DeligneMargin {
  double max_abs_lambda = 0.0;
  std::uint64_t argmax = 0;
  std::uint64_t violations = 0;
};
DeligneMargin deligne_margin(const EigenForm& f, std::uint64_t limit);

/// CSV dump: n, a_f(n), lambda(n) for 1 <= n <= limit.
void write_eigenform_csv(std::ostream& os, const EigenForm& f, std::uint64_t limit);

}  // namespace scs
