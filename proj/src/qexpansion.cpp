#include "scs/qexpansion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

#include "scs/arith.hpp"
#include "scs/common.hpp"
#include "scs/report.hpp"

namespace scs {

namespace {

constexpr std::size_t kLeaf = 32;

mp_bitcnt_t bit_length(const mpz_class& v) {
  return mpz_sgn(v.get_mpz_t()) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

mp_bitcnt_t max_bits(std::span<const mpz_class> a) {
  mp_bitcnt_t b = 0;
  for (const auto& v : a) b = std::max(b, bit_length(v));
  return b;
}

// sum_i a[i] 2^{slot i}
mpz_class pack(std::span<const mpz_class> a, mp_bitcnt_t slot) {
  mpz_class r = 0;
  if (a.size() <= kLeaf) {
    for (std::size_t i = a.size(); i-- > 0;) {
      mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), slot);
      r += a[i];
    }
    return r;
  }
  const std::size_t h = a.size() / 2;
  r = pack(a.subspan(h), slot);
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), slot * h);
  r += pack(a.first(h), slot);
  return r;
}

// Low `count * slot` bits of c read as a signed balanced value; valid when
// the represented digits satisfy |d| < 2^{slot-1}.
mpz_class signed_low(const mpz_class& c, mp_bitcnt_t bits) {
  mpz_class low;
  mpz_fdiv_r_2exp(low.get_mpz_t(), c.get_mpz_t(), bits);
  if (mpz_tstbit(low.get_mpz_t(), bits - 1)) {
    mpz_class wrap = 1;
    mpz_mul_2exp(wrap.get_mpz_t(), wrap.get_mpz_t(), bits);
    low -= wrap;
  }
  return low;
}

void unpack(const mpz_class& c, std::size_t count, mp_bitcnt_t slot, mpz_class* out) {
  if (count <= kLeaf) {
    mpz_class cur = c;
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = signed_low(cur, slot);
      cur -= out[i];
      mpz_fdiv_q_2exp(cur.get_mpz_t(), cur.get_mpz_t(), slot);
    }
    return;
  }
  const std::size_t h = count / 2;
  const mpz_class low = signed_low(c, slot * h);
  mpz_class high = c - low;
  mpz_fdiv_q_2exp(high.get_mpz_t(), high.get_mpz_t(), slot * h);
  unpack(low, h, slot, out);
  unpack(high, count - h, slot, out + h);
}

// sigma_e(n) for 0 <= n <= N (entry 0 unused).
std::vector<mpz_class> divisor_power_sums(unsigned e, std::size_t N) {
  std::vector<mpz_class> s(N + 1, 0);
  mpz_class de;
  for (std::size_t d = 1; d <= N; ++d) {
    mpz_ui_pow_ui(de.get_mpz_t(), d, e);
    for (std::size_t j = d; j <= N; j += d) s[j] += de;
  }
  return s;
}

QExpansion raw_eisenstein(int k, std::size_t N) {
  // E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n
  long factor = 0;
  switch (k) {
    case 4: factor = 240; break;
    case 6: factor = -504; break;
    default: throw Unsupported("raw_eisenstein: weight must be 4 or 6");
  }
  QExpansion e;
  e.weight = k;
  e.coeffs = divisor_power_sums(static_cast<unsigned>(k - 1), N);
  for (std::size_t n = 1; n <= N; ++n) e.coeffs[n] *= factor;
  e.coeffs[0] = 1;
  return e;
}

QExpansion product(const QExpansion& f, const QExpansion& g, std::size_t N) {
  return {f.weight + g.weight, multiply_truncated(f.coeffs, g.coeffs, N)};
}

}  // namespace

std::vector<mpz_class> multiply_truncated(std::span<const mpz_class> a,
                                          std::span<const mpz_class> b, std::size_t n) {
  std::vector<mpz_class> out(n + 1, 0);
  const std::size_t la = std::min(a.size(), n + 1);
  const std::size_t lb = std::min(b.size(), n + 1);
  if (la == 0 || lb == 0) return out;
  a = a.first(la);
  b = b.first(lb);
  const bool square = a.data() == b.data() && la == lb;

  // |c_i| <= min(la, lb) * 2^{ba} * 2^{bb}; one extra bit for the sign.
  const std::size_t terms = std::min(la, lb);
  mp_bitcnt_t slot = max_bits(a) + max_bits(b) + 2;
  for (std::size_t t = terms; t > 0; t >>= 1) ++slot;

  const mpz_class pa = pack(a, slot);
  mpz_class prod;
  if (square) {
    prod = pa * pa;
  } else {
    prod = pa * pack(b, slot);
  }
  const std::size_t count = std::min(n + 1, la + lb - 1);
  const mpz_class truncated = signed_low(prod, slot * count);
  unpack(truncated, count, slot, out.data());
  return out;
}

std::vector<mpz_class> multiply_naive(std::span<const mpz_class> a,
                                      std::span<const mpz_class> b, std::size_t n) {
  std::vector<mpz_class> out(n + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= n; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

QExpansion eisenstein_qexp(int k, std::size_t N) {
  if (N < 1) throw InvalidArgument("eisenstein_qexp: cutoff must be >= 1");
  switch (k) {
    case 4:
    case 6:
      return raw_eisenstein(k, N);
    case 8: {
      const auto e4 = raw_eisenstein(4, N);
      return product(e4, e4, N);
    }
    case 10:
      return product(raw_eisenstein(4, N), raw_eisenstein(6, N), N);
    case 14: {
      const auto e4 = raw_eisenstein(4, N);
      return product(product(e4, e4, N), raw_eisenstein(6, N), N);
    }
    default:
      throw Unsupported("eisenstein_qexp: unsupported weight " + std::to_string(k));
  }
}

QExpansion delta_qexp(std::size_t N) {
  if (N < 1) throw InvalidArgument("delta_qexp: cutoff must be >= 1");
  // prod (1 - q^n)^3 = sum_{m >= 0} (-1)^m (2m + 1) q^{m(m+1)/2}  (Jacobi)
  const std::size_t deg = N - 1;
  std::vector<mpz_class> cube(deg + 1, 0);
  for (std::size_t m = 0; m * (m + 1) / 2 <= deg; ++m) {
    const long c = static_cast<long>(2 * m + 1);
    cube[m * (m + 1) / 2] = (m % 2 == 0) ? c : -c;
  }
  const auto p6 = multiply_truncated(cube, cube, deg);
  const auto p12 = multiply_truncated(p6, p6, deg);
  const auto p24 = multiply_truncated(p12, p12, deg);
  QExpansion d;
  d.weight = 12;
  d.coeffs.assign(N + 1, 0);
  for (std::size_t n = 1; n <= N; ++n) d.coeffs[n] = p24[n - 1];
  return d;
}

QExpansion delta_from_eisenstein(std::size_t N) {
  if (N < 1) throw InvalidArgument("delta_from_eisenstein: cutoff must be >= 1");
  const auto e4 = raw_eisenstein(4, N);
  const auto e6 = raw_eisenstein(6, N);
  const auto e4sq = multiply_truncated(e4.coeffs, e4.coeffs, N);
  const auto e4cube = multiply_truncated(e4sq, e4.coeffs, N);
  const auto e6sq = multiply_truncated(e6.coeffs, e6.coeffs, N);
  QExpansion d;
  d.weight = 12;
  d.coeffs.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    mpz_class diff = e4cube[n] - e6sq[n];
    if (!mpz_divisible_ui_p(diff.get_mpz_t(), 1728)) {
      throw NumericalError("E4^3 - E6^2 not divisible by 1728 at n=" + std::to_string(n));
    }
    mpz_divexact_ui(d.coeffs[n].get_mpz_t(), diff.get_mpz_t(), 1728);
  }
  return d;
}

double normalized_eigenvalue(const mpz_class& a, std::uint64_t n, int weight) {
  if (n == 0) throw InvalidArgument("normalized_eigenvalue: n must be positive");
  if (mpz_sgn(a.get_mpz_t()) == 0) return 0.0;
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t());
  const double log_scale = static_cast<double>(exp2) * std::numbers::ln2 -
                           0.5 * (weight - 1) * std::log(static_cast<double>(n));
  return mant * std::exp(log_scale);
}

EigenForm::EigenForm(QExpansion qexp) : qexp_(std::move(qexp)) {
  if (qexp_.coeffs.size() < 2) throw InvalidArgument("EigenForm: cutoff must be >= 1");
  if (qexp_.coeffs[0] != 0 || qexp_.coeffs[1] != 1) {
    throw InvalidArgument("EigenForm: expected a(0) = 0 and a(1) = 1");
  }
  lambdas_.assign(qexp_.coeffs.size(), 0.0);
  for (std::size_t n = 1; n < qexp_.coeffs.size(); ++n) {
    lambdas_[n] = normalized_eigenvalue(qexp_.coeffs[n], n, qexp_.weight);
  }
}

const mpz_class& EigenForm::coefficient(std::uint64_t n) const {
  if (n > cutoff()) {
    throw OutOfRange("coefficient index " + std::to_string(n) + " beyond cutoff " +
                     std::to_string(cutoff()));
  }
  return qexp_.coeffs[n];
}

double EigenForm::lambda(std::uint64_t n) const {
  if (n == 0 || n > cutoff()) {
    throw OutOfRange("lambda index " + std::to_string(n) + " outside [1, " +
                     std::to_string(cutoff()) + "]");
  }
  return lambdas_[n];
}

bool is_supported_weight(int k) {
  return k == 12 || k == 16 || k == 18 || k == 20 || k == 22 || k == 26;
}

EigenForm eigenform(int k, std::size_t N) {
  if (!is_supported_weight(k)) {
    throw Unsupported("weight " + std::to_string(k) +
                      " is not supported: only the one-dimensional cusp spaces "
                      "k in {12, 16, 18, 20, 22, 26}");
  }
  if (N < 1) throw InvalidArgument("eigenform: cutoff must be >= 1");
  QExpansion delta = delta_qexp(N);
  if (k == 12) return EigenForm(std::move(delta));
  return EigenForm(product(delta, eisenstein_qexp(k - 12, N), N));
}

std::vector<HeckeViolation> hecke_verify(const EigenForm& f) {
  std::vector<HeckeViolation> out;
  const auto& a = f.qexp().coeffs;
  const std::uint64_t N = f.cutoff();
  const int k = f.weight();
  if (a[1] != 1) {
    out.push_back({HeckeViolation::Kind::Normalization, 1, 1, "a(1) = " + a[1].get_str()});
  }

  mpz_class prod;
  for (std::uint64_t m = 2; m * (m + 1) <= N; ++m) {
    for (std::uint64_t n = m + 1; m * n <= N; ++n) {
      if (std::gcd(m, n) != 1) continue;
      prod = a[m] * a[n];
      if (prod != a[m * n]) {
        out.push_back({HeckeViolation::Kind::Multiplicativity, m, n,
                       "a(mn) = " + a[m * n].get_str() + " but a(m)a(n) = " + prod.get_str()});
      }
    }
  }

  const auto table = shared_primes(N);
  mpz_class pk1, rhs, bound;
  for (std::uint32_t p32 : primes_up_to(*table, N)) {
    const std::uint64_t p = p32;
    mpz_ui_pow_ui(pk1.get_mpz_t(), p, static_cast<unsigned long>(k - 1));
    // a(p)^2 <= 4 p^{k-1}
    prod = a[p] * a[p];
    bound = 4 * pk1;
    if (prod > bound) {
      out.push_back({HeckeViolation::Kind::Deligne, p, 1,
                     "|lambda(p)| = " + format_real(f.lambda(p)) + " > 2"});
    }
    std::uint64_t prev = 1, cur = p;  // p^{j-1}, p^j
    for (unsigned j = 1; cur <= N / p; ++j) {
      const std::uint64_t next = cur * p;
      prod = a[p] * a[cur];
      rhs = a[next] + pk1 * a[prev];
      if (prod != rhs) {
        out.push_back({HeckeViolation::Kind::PrimePowerRecursion, p, j,
                       "a(p)a(p^j) = " + prod.get_str() + " but a(p^{j+1}) + p^{k-1}a(p^{j-1}) = " +
                           rhs.get_str()});
      }
      prev = cur;
      cur = next;
    }
  }
  return out;
}

DeligneMargin deligne_margin(const EigenForm& f, std::uint64_t limit) {
  DeligneMargin m;
  limit = std::min<std::uint64_t>(limit, f.cutoff());
  const auto table = shared_primes(limit);
  mpz_class pk1, sq;
  for (std::uint32_t p32 : primes_up_to(*table, limit)) {
    const std::uint64_t p = p32;
    const double v = std::fabs(f.lambda(p));
    if (v > m.max_abs_lambda) {
      m.max_abs_lambda = v;
      m.argmax = p;
    }
    mpz_ui_pow_ui(pk1.get_mpz_t(), p, static_cast<unsigned long>(f.weight() - 1));
    sq = f.coefficient(p) * f.coefficient(p);
    if (sq > 4 * pk1) ++m.violations;
  }
  return m;
}

void write_eigenform_csv(std::ostream& os, const EigenForm& f, std::uint64_t limit) {
  if (limit < 1 || limit > f.cutoff()) {
    throw OutOfRange("eigenform dump limit must lie in [1, cutoff]");
  }
  CsvWriter csv(os, {"n", "a_n", "lambda_n"});
  for (std::uint64_t n = 1; n <= limit; ++n) {
    csv.row({std::to_string(n), f.coefficient(n).get_str(), format_real(f.lambda(n))});
  }
}

}  // namespace scs
