#include "scs/equidist.hpp"

#include <cmath>
#include <numbers>

#include "scs/arith.hpp"
#include "scs/common.hpp"
#include "scs/report.hpp"

namespace scs {

namespace {

constexpr double kPi = std::numbers::pi;

double checked_lambda(double lambda) {
  if (!(std::fabs(lambda) <= 2.0 + 1e-12)) {
    throw InvalidArgument("|lambda(p)| > 2: Satake parameters would not be unitary");
  }
  return std::clamp(lambda, -2.0, 2.0);
}

void require_cutoff(const EigenForm& f, std::uint64_t needed) {
  if (f.cutoff() < needed) {
    throw OutOfRange("eigenform table cutoff " + std::to_string(f.cutoff()) + " is below " +
                     std::to_string(needed));
  }
}

// log of 1 / [(1 - c x + x^2)] with c = 2 cos(2 j theta)
double log_pair(double c, double x) { return -std::log1p(x * (x - c)); }

template <class LogFactor>
EulerProductValue euler_product(const EigenForm& f, std::uint64_t cutoff, LogFactor&& log_factor) {
  if (cutoff < 2) throw InvalidArgument("Euler product cutoff must be >= 2");
  require_cutoff(f, cutoff);
  const auto table = shared_primes(cutoff);
  const auto lambdas = f.lambdas();
  CompensatedSum logs;
  double half = 0.0;
  bool half_taken = false;
  for (std::uint32_t p : primes_up_to(*table, cutoff)) {
    if (!half_taken && 2 * static_cast<std::uint64_t>(p) > cutoff) {
      half = logs.value();
      half_taken = true;
    }
    logs.add(log_factor(checked_lambda(lambdas[p]), static_cast<double>(p)));
  }
  if (!half_taken) half = logs.value();
  EulerProductValue out;
  out.weight = f.weight();
  out.cutoff = cutoff;
  out.value = std::exp(logs.value());
  out.gap = std::fabs(-std::expm1(half - logs.value()));
  return out;
}

double sym2_log(double lambda, double p) {
  const double x = 1.0 / p;
  return log_pair(lambda * lambda - 2.0, x) - std::log1p(-x);
}

double sym4_log(double lambda, double p) {
  const double x = 1.0 / p;
  const double c2 = lambda * lambda - 2.0;
  const double c4 = c2 * c2 - 2.0;
  return log_pair(c4, x) + log_pair(c2, x) - std::log1p(-x);
}

}  // namespace

double sym2_local_factor(double lambda, std::uint64_t p) {
  if (p < 2) throw InvalidArgument("sym2_local_factor: p must be >= 2");
  return std::exp(sym2_log(checked_lambda(lambda), static_cast<double>(p)));
}

double sym4_local_factor(double lambda, std::uint64_t p) {
  if (p < 2) throw InvalidArgument("sym4_local_factor: p must be >= 2");
  return std::exp(sym4_log(checked_lambda(lambda), static_cast<double>(p)));
}

EulerProductValue l1_sym2(const EigenForm& f, std::uint64_t cutoff) {
  return euler_product(f, cutoff, sym2_log);
}

EulerProductValue l1_sym4(const EigenForm& f, std::uint64_t cutoff) {
  return euler_product(f, cutoff, sym4_log);
}

MkValue mk(const EigenForm& f, std::uint64_t k_proxy, std::uint64_t sym2_cutoff) {
  if (k_proxy < 2) throw InvalidArgument("mk: k must be >= 2");
  require_cutoff(f, k_proxy);
  MkValue out;
  out.k_proxy = k_proxy;
  out.sym2 = l1_sym2(f, sym2_cutoff);
  const auto table = shared_primes(k_proxy);
  const auto lambdas = f.lambdas();
  CompensatedSum logs;
  for (std::uint32_t p : primes_up_to(*table, k_proxy)) {
    logs.add(std::log1p(2.0 * std::fabs(lambdas[p]) / p));
  }
  out.product = std::exp(logs.value());
  out.log_k = std::log(static_cast<double>(k_proxy));
  out.mk = out.product / (out.log_k * out.log_k * out.sym2.value);
  return out;
}

MkValue mk(const EigenForm& f, std::uint64_t sym2_cutoff) {
  return mk(f, static_cast<std::uint64_t>(f.weight()), sym2_cutoff);
}

EmsPrime ems_prime_check(double lambda) {
  if (!(std::fabs(lambda) <= 2.0)) throw InvalidArgument("ems_prime_check: |lambda| must be <= 2");
  EmsPrime out;
  const double u = lambda * lambda - 1.0;
  out.lhs = 2.0 * std::fabs(lambda) - 2.0;
  out.rhs = u - u * u / 9.0;
  out.holds = out.lhs <= out.rhs + 1e-12;
  return out;
}

EmsSum ems_sum_check(const EigenForm& f, std::uint64_t cutoff) {
  if (cutoff < 2) throw InvalidArgument("ems_sum_check: cutoff must be >= 2");
  require_cutoff(f, cutoff);
  const auto table = shared_primes(cutoff);
  const auto lambdas = f.lambdas();
  const std::uint64_t top = f.cutoff();
  CompensatedSum lhs, rhs;
  EmsSum out;
  for (std::uint32_t p32 : primes_up_to(*table, cutoff)) {
    const std::uint64_t p = p32;
    const double lp = checked_lambda(lambdas[p]);
    const double l2 = lp * lp - 1.0;
    lhs.add((2.0 * std::fabs(lp) - 2.0) / p);
    rhs.add(l2 / p - l2 * l2 / (9.0 * p));
    if (p * p <= top) {
      out.max_recursion_mismatch = std::max(out.max_recursion_mismatch, std::fabs(lambdas[p * p] - l2));
      if (p * p * p * p <= top) {
        const double l3 = lp * l2 - lp;
        const double l4 = lp * l3 - l2;
        out.max_recursion_mismatch =
            std::max(out.max_recursion_mismatch, std::fabs(lambdas[p * p * p * p] - l4));
      }
    }
  }
  out.lhs = lhs.value();
  out.rhs = rhs.value();
  out.holds = out.lhs <= out.rhs + 1e-12 * (1.0 + std::fabs(out.rhs));
  return out;
}

double weighted_shift_sum(const EigenForm& f, std::int64_t ell, double Y, int k, const BumpFunction& g) {
  if (ell == 0) throw InvalidArgument("weighted_shift_sum: l must be nonzero");
  if (!(Y >= 1.0)) throw InvalidArgument("weighted_shift_sum: Y must be >= 1");
  if (k < 2) throw InvalidArgument("weighted_shift_sum: k must be >= 2");
  const double scale = Y * (k - 1) / (4.0 * kPi);
  const double half = 0.5 * static_cast<double>(ell);
  const std::int64_t first = std::max<std::int64_t>(
      {1, 1 - ell, static_cast<std::int64_t>(std::ceil(scale / g.hi() - half))});
  const auto last = static_cast<std::int64_t>(std::floor(scale / g.lo() - half));
  if (last < first) return 0.0;
  require_cutoff(f, static_cast<std::uint64_t>(std::max(last, last + ell)));
  const auto lambdas = f.lambdas();
  CompensatedSum sum;
  for (std::int64_t n = first; n <= last; ++n) {
    const double weight = g(scale / (static_cast<double>(n) + half));
    sum.add(std::fabs(lambdas[static_cast<std::size_t>(n)] * lambdas[static_cast<std::size_t>(n + ell)]) *
            weight);
  }
  return sum.value();
}

Theorem1Bound theorem1_bound_assembly(const EigenForm& f, std::int64_t ell, double Y, int k,
                                      const BumpFunction& g, double a_ell_abs, double l_sym2,
                                      double eps) {
  if (!(a_ell_abs >= 0.0)) throw InvalidArgument("theorem1: |a_l| must be >= 0");
  if (!(l_sym2 > 0.0)) throw InvalidArgument("theorem1: L(1, sym^2 f) must be positive");
  if (!(eps > 0.0)) throw InvalidArgument("theorem1: eps must be positive");
  Theorem1Bound out;
  out.a_ell = a_ell_abs;
  out.l_sym2 = l_sym2;
  out.shift_sum = weighted_shift_sum(f, ell, Y, k, g);
  out.term_sum = out.shift_sum / (Y * k);
  out.term_eps = std::pow(Y * k, eps) / k;
  out.rhs = a_ell_abs / l_sym2 * (out.term_sum + out.term_eps);
  out.g_minus1 = MellinTransform(g)(cplx(-1.0, 0.0)).real();
  out.c_Y = 3.0 / kPi * out.g_minus1 * Y;
  return out;
}

Corollary3Report corollary3_report(const EigenForm& f, std::uint64_t k_proxy, std::uint64_t cutoff) {
  Corollary3Report r;
  r.weight = f.weight();
  r.m = mk(f, k_proxy, cutoff);
  r.sqrt_mk = std::sqrt(r.m.mk);
  r.y_star = std::max(1.0, 1.0 / r.m.mk);
  r.sym4 = l1_sym4(f, cutoff);
  r.conjectural = std::pow(r.m.log_k * r.m.sym2.value * r.sym4.value, -1.0 / 9.0);
  r.ems = ems_sum_check(f, cutoff);
  return r;
}

std::vector<std::string> corollary3_csv_header() {
  return {"weight", "cutoff",  "L_sym2",  "gap",    "M_k",         "sqrt_M_k", "Y_star",
          "ems_lhs", "ems_rhs", "k_proxy", "L_sym4", "conjectural", "R_k"};
}

std::vector<std::string> corollary3_csv_row(const Corollary3Report& r) {
  return {std::to_string(r.weight),   std::to_string(r.m.sym2.cutoff), format_real(r.m.sym2.value),
          format_real(r.m.sym2.gap),  format_real(r.m.mk),             format_real(r.sqrt_mk),
          format_real(r.y_star),      format_real(r.ems.lhs),          format_real(r.ems.rhs),
          std::to_string(r.m.k_proxy), format_real(r.sym4.value),      format_real(r.conjectural),
          "unavailable"};
}

}  // namespace scs
