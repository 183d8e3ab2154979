#pragma once

// Quantities around the mass-equidistribution bound: truncated
// symmetric-square and fourth-power Euler products, M_k(f), the
// Elliott-Moreno-Shahidi inequality, and the weighted shifted sums with the
// bump g.

#include <cstdint>
#include <string>
#include <vector>

#include "scs/qexpansion.hpp"
#include "scs/specfun.hpp"

namespace scs {

/// 1 / [(1 - alpha^2/p)(1 - 1/p)(1 - conj(alpha)^2/p)] with alpha + conj(alpha) = lambda,
/// |alpha| = 1. InvalidArgument when |lambda| > 2.
double sym2_local_factor(double lambda, std::uint64_t p);
/// The same for the five Satake parameters alpha^4, alpha^2, 1, conj(alpha)^2, conj(alpha)^4.
double sym4_local_factor(double lambda, std::uint64_t p);

/// Truncated Euler product over p <= cutoff with the relative gap
/// |L(cutoff) - L(cutoff/2)| / L(cutoff).
struct EulerProductValue {
  int weight = 0;
  std::uint64_t cutoff = 0;
  double value = 0.0;
  double gap = 0.0;
};
EulerProductValue l1_sym2(const EigenForm& f, std::uint64_t cutoff);
EulerProductValue l1_sym4(const EigenForm& f, std::uint64_t cutoff);

/// M_k(f) = prod_{p <= K} (1 + 2|lambda_f(p)|/p) / ((log K)^2 L(1, sym^2 f)).
/// K is the weight unless overridden; L is truncated at sym2_cutoff.
struct MkValue {
  double mk = 0.0;
  double product = 0.0;
  double log_k = 0.0;
  EulerProductValue sym2;
  std::uint64_t k_proxy = 0;
};
MkValue mk(const EigenForm& f, std::uint64_t k_proxy, std::uint64_t sym2_cutoff);
MkValue mk(const EigenForm& f, std::uint64_t sym2_cutoff);

struct EmsPrime {
  double lhs = 0.0;  // 2|lambda| - 2
  double rhs = 0.0;  // (lambda^2 - 1) - (lambda^2 - 1)^2 / 9
  bool holds = false;
};
EmsPrime ems_prime_check(double lambda);

struct EmsSum {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  /// Largest |lambda(p^j) from the table - lambda(p^j) from the Hecke
  /// recursion| over p^j <= table cutoff, j in {2, 4}.
  double max_recursion_mismatch = 0.0;
};
/// sum_{p <= cutoff} (2|lambda(p)| - 2)/p against
/// sum lambda(p^2)/p - (1/9) sum lambda(p^2)^2/p, with lambda(p^2) = lambda(p)^2 - 1.
EmsSum ems_sum_check(const EigenForm& f, std::uint64_t cutoff);

/// sum_n |lambda(n) lambda(n+l)| g(Y(k-1) / (4 pi (n + l/2))) over the
/// support window of g.
double weighted_shift_sum(const EigenForm& f, std::int64_t ell, double Y, int k, const BumpFunction& g);

struct Theorem1Bound {
  double a_ell = 0.0;       // |a_l(1/Y)|, supplied
  double l_sym2 = 0.0;
  double shift_sum = 0.0;   // weighted_shift_sum
  double term_sum = 0.0;    // shift_sum / (Y k)
  double term_eps = 0.0;    // (Y k)^eps / k
  double rhs = 0.0;         // a_ell / L * (term_sum + term_eps), implied constant 1
  double g_minus1 = 0.0;    // G(-1) = <E(z|g), 1>
  double c_Y = 0.0;         // (3/pi) G(-1) Y
};
Theorem1Bound theorem1_bound_assembly(const EigenForm& f, std::int64_t ell, double Y, int k,
                                      const BumpFunction& g, double a_ell_abs, double l_sym2,
                                      double eps = 0.1);

struct Corollary3Report {
  int weight = 0;
  MkValue m;
  double sqrt_mk = 0.0;
  double y_star = 0.0;   // max(1, 1 / M_k)
  EulerProductValue sym4;
  /// {(log k) L(1, sym^2) L(1, sym^4)}^{-1/9}, k the k-proxy
  double conjectural = 0.0;
  EmsSum ems;
};
Corollary3Report corollary3_report(const EigenForm& f, std::uint64_t k_proxy, std::uint64_t cutoff);

std::vector<std::string> corollary3_csv_header();
std::vector<std::string> corollary3_csv_row(const Corollary3Report& r);

}  // namespace scs
