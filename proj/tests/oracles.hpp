#pragma once

// Reference implementations used only by the tests. None of these call into
// the library; they trade speed for obviousness.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// sum_{d | n} d^k
inline mpz_class sigma(unsigned long n, unsigned long k) {
  mpz_class s = 0, p;
  for (unsigned long d = 1; d <= n; ++d) {
    if (n % d) continue;
    mpz_ui_pow_ui(p.get_mpz_t(), d, k);
    s += p;
  }
  return s;
}

// 1 + c * sum sigma_{k-1}(n) q^n
inline std::vector<mpz_class> eisenstein(long c, unsigned long k, std::size_t N) {
  std::vector<mpz_class> a(N + 1);
  a[0] = 1;
  for (std::size_t n = 1; n <= N; ++n) a[n] = c * sigma(n, k - 1);
  return a;
}

inline std::vector<mpz_class> convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                       std::size_t N) {
  std::vector<mpz_class> c(N + 1, 0);
  for (std::size_t i = 0; i <= N && i < a.size(); ++i)
    for (std::size_t j = 0; i + j <= N && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// q prod (1 - q^n)^24 by repeated multiplication with (1 - q^n)
inline std::vector<mpz_class> delta(std::size_t N) {
  std::vector<mpz_class> p(N + 1, 0);
  p[0] = 1;
  for (std::size_t n = 1; n <= N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = N; i >= n; --i) p[i] -= p[i - n];
  std::vector<mpz_class> d(N + 1, 0);
  for (std::size_t i = 1; i <= N; ++i) d[i] = p[i - 1];
  return d;
}

// ordered m-tuples of positive integers with product n
inline std::uint64_t tau_m(std::uint64_t n, unsigned m) {
  if (m == 1) return 1;
  std::uint64_t c = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) c += tau_m(n / d, m - 1);
  return c;
}

inline bool has_odd_prime_factor_upto(std::uint64_t n, double z) {
  while (n % 2 == 0 && n > 0) n /= 2;
  for (std::uint64_t d = 3; d * d <= n && static_cast<double>(d) <= z; d += 2)
    if (n % d == 0) return true;
  // n is now 1, a prime, or has all its factors above z
  return n > 1 && static_cast<double>(n) <= z;
}

// Direct scan: n_v in [max(1, 1 - w), floor(floor(x)/v)], n_v = 0 mod a,
// n_v + w = 0 mod a_l, with n_v/a and (n_v + w)/a_l free of odd primes <= z.
inline std::uint64_t sifted_scan(std::uint64_t a, std::uint64_t a_ell, std::int64_t w, std::uint64_t v,
                                 double x, double z) {
  const std::int64_t lo = std::max<std::int64_t>(1, 1 - w);
  const auto hi = static_cast<std::int64_t>(std::floor(x)) / static_cast<std::int64_t>(v);
  const auto A = static_cast<std::int64_t>(a), AL = static_cast<std::int64_t>(a_ell);
  std::uint64_t count = 0;
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (n % A != 0 || ((n + w) % AL + AL) % AL != 0) continue;
    const auto b = static_cast<std::uint64_t>(n / A);
    const auto bl = static_cast<std::uint64_t>((n + w) / AL);
    if (has_odd_prime_factor_upto(b, z) || has_odd_prime_factor_upto(bl, z)) continue;
    ++count;
  }
  return count;
}

// Composite Simpson on [a, b]
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / (2 * panels);
  double s = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

inline cplx simpson_c(const std::function<cplx(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / (2 * panels);
  cplx s = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * (h / 3.0);
}

// K_0 from the power-log series in long double
inline double k0_series(double w) {
  const long double x = w, q = x * x / 4.0L;
  const long double gamma_e = 0.57721566490153286060651209L;
  long double term = 1.0L, harm = 0.0L;
  long double sum = -(std::log(x / 2.0L) + gamma_e);
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    harm += 1.0L / k;
    const long double t = term * (harm - std::log(x / 2.0L) - gamma_e);
    sum += t;
    if (std::fabs(t) < 1e-22L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

// K_{it}(w) = int_0^inf exp(-w cosh u) cos(t u) du by the trapezoid rule
inline double k_it_cosh(double t, double w) {
  double U = 1.0;
  while (w * std::cosh(U) < 800.0) U += 0.5;
  const int n = 40000;
  const double h = U / n;
  double s = 0.5 * std::exp(-w);
  for (int i = 1; i <= n; ++i) {
    const double u = i * h;
    s += std::exp(-w * std::cosh(u)) * std::cos(t * u);
  }
  return s * h;
}

// log Gamma by recurrence up to Re s >= 30 followed by Stirling
inline cplx lgamma_c(cplx s) {
  cplx shift = 0.0;
  while (s.real() < 30.0) {
    shift -= std::log(s);
    s += 1.0;
  }
  const cplx inv = 1.0 / s, inv2 = inv * inv;
  const cplx series = inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 / 1680.0)));
  return shift + (s - 0.5) * std::log(s) - s + 0.5 * std::log(2 * kPi) + series;
}

// exp(1 - 1/(1 - (log u / h)^2)) on (e^-h, e^h)
inline double log_bump(double u, double h = 3.0) {
  if (u <= 0) return 0.0;
  const double r = std::log(u) / h;
  if (std::fabs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

// exp(1 - 1/(1 - (2t - 3)^2)) on (1, 2)
inline double bump(double t) {
  const double r = 2.0 * t - 3.0;
  if (std::fabs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

// Ramanujan sum c_q(n)
inline double ramanujan_sum(std::uint64_t q, std::int64_t n) {
  double s = 0.0;
  for (std::uint64_t d = 1; d <= q; ++d)
    if (gcd(d, q) == 1) s += std::cos(2 * kPi * static_cast<double>(n) * static_cast<double>(d) / q);
  return s;
}

// l-th Fourier coefficient of sum_{Gamma_inf \ Gamma} psi(Im gamma z), from the
// Bruhat decomposition: sum_c c_c(l) int psi(y / (c^2 (x^2 + y^2))) e(-l x) dx.
inline double a_ell_geometric(std::int64_t ell, double y, double h = 3.0) {
  const double lo = std::exp(-h), hi = std::exp(h);
  double total = 0.0;
  for (std::uint64_t c = 1; static_cast<double>(c * c) * y * lo <= 1.0; ++c) {
    const double cc = static_cast<double>(c * c);
    const double x_lo = std::sqrt(std::max(0.0, y / (cc * hi) - y * y));
    const double x_hi = std::sqrt(std::max(0.0, y / (cc * lo) - y * y));
    if (x_hi <= x_lo) continue;
    auto f = [&](double x) { return log_bump(y / (cc * (x * x + y * y)), h) * std::cos(2 * kPi * ell * x); };
    total += ramanujan_sum(c, ell) * 2.0 * simpson(f, x_lo, x_hi, 4000);
  }
  return total;
}

// G(s) = int_1^2 g(y) y^{s-1} dy for the canonical bump
inline cplx mellin_bump(cplx s) {
  return simpson_c([&](double y) { return bump(y) * std::pow(cplx(y, 0.0), s - 1.0); }, 1.0, 2.0, 600);
}

// W_{n,l}(Y) from the contour representation
//   pref (1/2 pi i) int_(sigma) G(-s) (Y/(4 pi m))^s Gamma(s+k-1)/Gamma(k-1) ds,  m = n + l/2.
inline double w_contour(std::uint64_t n, std::int64_t ell, double Y, int k, double sigma = 2.0) {
  const double m = static_cast<double>(n) + 0.5 * static_cast<double>(ell);
  const double nn = static_cast<double>(n) * (static_cast<double>(n) + static_cast<double>(ell));
  const double pref = std::pow(std::sqrt(nn) / m, k - 1);
  const double lg = std::lgamma(static_cast<double>(k - 1));
  const double r = Y / (4 * kPi * m);
  auto f = [&](double t) {
    const cplx s(sigma, t);
    return mellin_bump(-s) * std::exp(s * std::log(r) + lgamma_c(s + static_cast<double>(k - 1)) - lg);
  };
  const cplx I = simpson_c(f, -80.0, 80.0, 1600);
  return pref * I.real() / (2 * kPi);
}

}  // namespace oracle
