#pragma once

// Shifted convolution sums S_l(x) = sum_{n <= x} |l1(n) l2(n + l)|, the
// split by smooth parts at y, the quantity M(x), and the sieve-side bound.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "scs/arith.hpp"
#include "scs/qexpansion.hpp"

namespace scs {

/// |lambda(n)| for a multiplicative function: an eigenform table or a
/// closed form (tau_m, the constant 1).
class ArithmeticFunction {
 public:
  static ArithmeticFunction tau_m(unsigned m);
  static ArithmeticFunction one();
  static ArithmeticFunction eigenform_abs(std::shared_ptr<const EigenForm> f);

  const std::string& name() const { return name_; }
  /// Largest n the function is defined for.
  std::uint64_t limit() const { return limit_; }
  /// |lambda(0..hi)|, entry 0 set to 0. Throws OutOfRange past limit().
  std::vector<double> tabulate(std::uint64_t hi) const;
  double abs_value(std::uint64_t n) const;

 private:
  using Table = std::function<std::vector<double>(std::uint64_t)>;
  ArithmeticFunction(std::string name, std::uint64_t limit, Table t)
      : name_(std::move(name)), limit_(limit), table_(std::move(t)) {}
  std::string name_;
  std::uint64_t limit_ = 0;
  Table table_;
};

/// tau_m(0..hi) by a linear sieve.
std::vector<std::uint64_t> tau_m_table(std::uint64_t hi, unsigned m);

/// S_l(x); n runs over max(1, 1 - l) <= n <= floor(x).
double s_ell_brute(const ArithmeticFunction& l1, const ArithmeticFunction& l2, double x,
                   std::int64_t ell);

struct PartitionSums {
  double s_total = 0.0;
  double s_big = 0.0;    // terms with a > y, plus terms with a_l > y
  double s_small = 0.0;  // terms with a <= y and a_l <= y
  double overlap = 0.0;  // terms with a > y and a_l > y
  /// |s_small + s_big - overlap - s_total| / max(s_total, tiny)
  double identity_residual() const;
};

/// a and a_l are the z-smooth parts of n and n + l.
PartitionSums partition_sums(const ArithmeticFunction& l1, const ArithmeticFunction& l2, double x,
                             std::int64_t ell, double z, double y);
PartitionSums partition_sums(const ArithmeticFunction& l1, const ArithmeticFunction& l2,
                             const SievingParameters& params, std::int64_t ell);

/// (log x)^{-2} prod_{p <= z} (1 + |l1(p)|/p)(1 + |l2(p)|/p), with z replaced
/// by z_effective() = min(z, x).
double m_of_x(const ArithmeticFunction& l1, const ArithmeticFunction& l2,
              const SievingParameters& params);

struct SieveSideBound {
  double bound = 0.0;
  std::uint64_t systems = 0;       // (v, a, a_l) tuples visited
  std::uint64_t divisor_pairs = 0;  // (v, w) with v w = l
};

/// Explicit upper bound for s_small. Every n counted in s_small has
/// v = gcd(n, l), n = v a b, n + l = v a_l b_l with a, a_l the smooth parts
/// of n/v and (n + l)/v. For each admissible (v, a, a_l) the number of such n
/// is bounded by the large sieve with Q = x^{1/4}, and the rough factors by
/// the largest |l_i| over z-rough integers in range.
SieveSideBound sieve_side_bound(const ArithmeticFunction& l1, const ArithmeticFunction& l2,
                                const SievingParameters& params, std::int64_t ell);

struct ShiftedSumReport {
  double x = 0.0;
  std::int64_t ell = 0;
  double epsilon = 0.0;
  double s_total = 0.0;
  double s_big = 0.0;
  double s_small = 0.0;
  double overlap = 0.0;
  double m_of_x = 0.0;
  double rhs = 0.0;    // x (log x)^eps M(x) tau(|l|)
  double ratio = 0.0;  // s_total / rhs
  double sieve_bound = 0.0;  // nan unless requested
  SievingParameters params;
};

ShiftedSumReport theorem2_report(const ArithmeticFunction& l1, const ArithmeticFunction& l2,
                                 double x, double epsilon, std::int64_t ell,
                                 bool with_sieve_bound = false);

std::vector<std::string> shifted_csv_header();
std::vector<std::string> shifted_csv_row(const ShiftedSumReport& r);
nlohmann::json to_json(const ShiftedSumReport& r);

}  // namespace scs
