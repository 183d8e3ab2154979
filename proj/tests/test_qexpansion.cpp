#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scs/common.hpp"
#include "scs/qexpansion.hpp"

using namespace scs;

TEST_CASE("eisenstein series match divisor sums") {
  const auto e4 = eisenstein_qexp(4, 2);
  CHECK(e4.coeffs == std::vector<mpz_class>{1, 240, 2160});
  const auto e6 = eisenstein_qexp(6, 1);
  CHECK(e6.coeffs == std::vector<mpz_class>{1, -504});
  CHECK(eisenstein_qexp(8, 1).coeffs == std::vector<mpz_class>{1, 480});

  const std::size_t N = 60;
  struct Case {
    int k;
    long c;
  };
  for (auto [k, c] : {Case{4, 240}, Case{6, -504}, Case{8, 480}, Case{10, -264}, Case{14, -24}}) {
    CAPTURE(k);
    CHECK(eisenstein_qexp(k, N).coeffs == oracle::eisenstein(c, static_cast<unsigned long>(k), N));
  }
}

TEST_CASE("E8 is the square of E4") {
  const auto e4 = eisenstein_qexp(4, 40);
  CHECK(oracle::convolve(e4.coeffs, e4.coeffs, 40) == eisenstein_qexp(8, 40).coeffs);
}

TEST_CASE("unsupported Eisenstein weight") {
  CHECK_THROWS_AS(eisenstein_qexp(12, 5), InvalidArgument);
  CHECK_THROWS_AS(eisenstein_qexp(2, 5), InvalidArgument);
}

TEST_CASE("multiplication agrees with the naive convolution") {
  std::vector<mpz_class> a, b;
  mpz_class x = 7;
  for (int i = 0; i < 90; ++i) {
    x = (x * 1103515245 + 12345) % 1000000007;
    a.push_back(i % 3 == 0 ? mpz_class(-x * x * x) : mpz_class(x));
    b.push_back(i % 5 == 0 ? mpz_class(0) : mpz_class(x - 500000000));
  }
  for (std::size_t n : {0u, 1u, 17u, 89u, 150u}) {
    CAPTURE(n);
    CHECK(multiply_truncated(a, b, n) == oracle::convolve(a, b, n));
    CHECK(multiply_naive(a, b, n) == oracle::convolve(a, b, n));
  }
}

TEST_CASE("delta against the eta product") {
  const auto d = delta_qexp(200);
  CHECK(d[0] == 0);
  CHECK(d[1] == 1);
  CHECK(d[2] == -24);
  CHECK(d[3] == 252);
  CHECK(d[6] == d[2] * d[3]);
  CHECK(d.coeffs == oracle::delta(200));
  CHECK(delta_from_eisenstein(200).coeffs == d.coeffs);
}

TEST_CASE("eigenform coefficients at n = 2") {
  CHECK(eigenform(16, 2).coefficient(2) == 216);
  const auto d = oracle::delta(10);
  for (auto [k, c] : {std::pair{16, 240L}, {18, -504L}, {20, 480L}, {22, -264L}, {26, -24L}}) {
    CAPTURE(k);
    const auto e = oracle::eisenstein(c, static_cast<unsigned long>(k - 12), 10);
    const auto f = eigenform(k, 10);
    const auto prod = oracle::convolve(d, e, 10);
    for (std::uint64_t n = 1; n <= 10; ++n) CHECK(f.coefficient(n) == prod[n]);
  }
}

TEST_CASE("unsupported eigenform weight") {
  CHECK_THROWS_AS(eigenform(24, 10), Unsupported);
  CHECK_THROWS_AS(eigenform(14, 10), Unsupported);
  CHECK_FALSE(is_supported_weight(24));
  CHECK(is_supported_weight(26));
}

TEST_CASE("lambda normalization") {
  const auto f = eigenform(12, 1000);
  CHECK(f.lambda(1) == 1.0);
  CHECK(f.lambda(2) == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
  CHECK(f.lambda(2) == doctest::Approx(-0.530330085889911).epsilon(1e-12));
  CHECK(f.lambda(6) == doctest::Approx(f.lambda(2) * f.lambda(3)).epsilon(1e-13));
  CHECK_THROWS_AS(f.lambda(1001), OutOfRange);
  CHECK_THROWS_AS(f.lambda(0), OutOfRange);
}

TEST_CASE("log-domain lambda agrees with rational evaluation") {
  for (int k : {12, 26}) {
    const auto f = eigenform(k, 1000);
    for (std::uint64_t n = 1; n <= 1000; ++n) {
      // a(n)^2 / n^{k-1} as an exact rational, square-rooted in double
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), n, static_cast<unsigned long>(k - 1));
      const mpq_class sq(f.coefficient(n) * f.coefficient(n), den);
      const double mag = std::sqrt(sq.get_d());
      const double expect = sgn(f.coefficient(n)) < 0 ? -mag : mag;
      if (expect == 0.0) {
        CHECK(f.lambda(n) == 0.0);
      } else if (std::fabs(f.lambda(n) - expect) > 1e-12 * std::fabs(expect)) {
        FAIL("lambda mismatch at n=", n, " k=", k);
      }
    }
  }
}

TEST_CASE("hecke relations hold exactly") {
  const auto d = eigenform(12, 1000);
  CHECK(hecke_verify(d).empty());
  // a(2)^2 = a(4) + 2^11 a(1)
  CHECK(d.coefficient(2) * d.coefficient(2) == d.coefficient(4) + 2048);
  for (int k : {16, 18, 20, 22, 26}) {
    CAPTURE(k);
    CHECK(hecke_verify(eigenform(k, 3000)).empty());
  }
}

TEST_CASE("hecke_verify reports a tampered table") {
  auto q = delta_qexp(100);
  q.coeffs[6] += 1;
  const EigenForm bad(q);
  const auto v = hecke_verify(bad);
  REQUIRE_FALSE(v.empty());
  bool multiplicativity = false;
  for (const auto& e : v) multiplicativity |= e.kind == HeckeViolation::Kind::Multiplicativity;
  CHECK(multiplicativity);
}

TEST_CASE("deligne margin") {
  const auto f = eigenform(20, 5000);
  const auto m = deligne_margin(f, 5000);
  CHECK(m.violations == 0);
  CHECK(m.max_abs_lambda <= 2.0);
  CHECK(m.max_abs_lambda > 1.5);
  CHECK(std::fabs(f.lambda(m.argmax)) == m.max_abs_lambda);
}
