#pragma once

// Gamma, zeta, the Eisenstein data theta / phi / phi_l, K-Bessel functions
// of imaginary order, bump functions and their Mellin transforms, the
// Fourier coefficients a_l(y) of an incomplete Eisenstein series, and the
// weight W_{n,l}(Y).

#include <complex>
#include <cstdint>
#include <vector>

namespace scs {

using cplx = std::complex<double>;

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes, weights;
};
const GaussLegendre& gauss_legendre(unsigned n);

/// Lanczos approximation (g = 7, 9 terms) with the reflection formula.
cplx gamma(cplx s);
/// log Gamma: Stirling series for Re s >= 10, Lanczos otherwise. Only
/// exp(log_gamma) is meaningful; the branch of the imaginary part is not fixed.
cplx log_gamma(cplx s);
double log_gamma(double x);

/// Riemann zeta by Euler-Maclaurin with 10 Bernoulli corrections.
cplx zeta(cplx s);

/// theta(s) = pi^{-s} Gamma(s) zeta(2s).
cplx theta_s(cplx s);
/// phi(s) = theta(1 - s) / theta(s).
cplx varphi_s(cplx s);
/// phi_l(s) = (2 / theta(s)) sum_{ab = l} (a/b)^{s - 1/2}.
cplx varphi_ell(std::uint64_t ell, cplx s);

/// K_{it}(w) for w > 0, |t| <= 50, from
///   K_{it}(w) = pi^{-1/2} Gamma(1/2 + it) (w/2)^{-it} int_0^inf (1 + v^2)^{-it-1/2} cos(vw) dv.
double bessel_k_it(double t, double w);
/// K_{it}(w) = int_0^inf exp(-w cosh u) cos(tu) du; loses relative accuracy
/// once exp(-pi|t|/2) approaches rounding level.
double bessel_k_it_cosh(double t, double w);
/// K_0 from its power-log series in long double.
double bessel_k0_series(double w);

/// I(t, w) = int_0^inf (1 + v^2)^{-1/2 - it} cos(vw) dv, so that
/// K_{it}(w) / Gamma(1/2 + it) = pi^{-1/2} (w/2)^{-it} I(t, w). The integral
/// is taken after four integrations by parts; `abs_tol` bounds the
/// truncated tail, `rel_tol` stops early relative to the running value.
cplx basset_integral(double t, double w, double abs_tol, double rel_tol = 1e-13);

struct BesselBound {
  double ratio = 0.0;  // |K| / [|Gamma(1/2+it)| ((1+|t|)/w)^A (1 + (1+|t|)/w)^eps]
  double constant = 0.0;
  bool holds = false;
};
/// The recorded constant is kBesselBoundConstant.
constexpr double kBesselBoundConstant = 4.0;
BesselBound bessel_bound_check(double t, double w, int A, double eps);

/// Nonnegative smooth bump with compact support.
///   Canonical: g(t) = exp(1 - 1/(1 - (2t - 3)^2)) on (1, 2).
///   LogScale:  g(y) = exp(1 - 1/(1 - (log y / h)^2)) on (e^{-h}, e^{h}).
class BumpFunction {
 public:
  enum class Kind { Canonical, LogScale };
  static BumpFunction canonical() { return BumpFunction(Kind::Canonical, 0.0); }
  static BumpFunction log_scale(double h = 3.0);

  Kind kind() const { return kind_; }
  double lo() const;
  double hi() const;
  /// Location of the peak value 1.
  double peak() const { return kind_ == Kind::Canonical ? 1.5 : 1.0; }
  double operator()(double t) const;
  /// log g(t); -inf outside the support.
  double log_value(double t) const;

 private:
  BumpFunction(Kind k, double h) : kind_(k), h_(h) {}
  Kind kind_;
  double h_;
};

/// G(s) = int_0^inf g(y) y^{s-1} dy, computed in u = log y by composite
/// Gauss-Legendre with panel count growing with |Im s|.
class MellinTransform {
 public:
  explicit MellinTransform(BumpFunction g, unsigned base_panels = 48)
      : g_(g), base_panels_(base_panels) {}
  const BumpFunction& bump() const { return g_; }
  cplx operator()(cplx s) const;
  /// G(sigma + it) for every t in ts on one grid fine enough for max |t|.
  std::vector<cplx> on_line(double sigma, const std::vector<double>& ts) const;

 private:
  BumpFunction g_;
  unsigned base_panels_;
};

struct AEllResult {
  double value = 0.0;  // a_l(y) is real
  double T = 0.0;      // truncation point of the t-integral
  std::size_t nodes = 0;
};

/// a_l(y) = (y/pi)^{1/2} int pi^{it} Psi(-1/2 - it) / (Gamma(1/2+it) zeta(1+2it))
///          (sum_{ab=|l|} (a/b)^{it}) K_{it}(2 pi |l| y) dt.
/// T is taken where a sampled envelope of |Psi(-1/2-it)| makes the tail
/// smaller than tol; NumericalError if that needs T > t_max.
AEllResult a_ell_y(const MellinTransform& psi, std::int64_t ell, double y, double tol = 1e-10,
                   double t_max = 400.0);

/// W_{n,l}(Y) = (n(n+l))^{(k-1)/2} (4 pi)^{k-1} / Gamma(k-1)
///              int g(Yy) y^{k-2} exp(-4 pi (n + l/2) y) dy,
/// integrated over t = Yy in the support of g, in log domain.
double w_weight(std::uint64_t n, std::int64_t ell, double Y, int k, const BumpFunction& g,
                unsigned panels = 64);

struct WMainTerm {
  double prefactor = 0.0;  // (sqrt(n(n+l)) / (n + l/2))^{k-1}
  double main = 0.0;       // prefactor * g(Y(k-1) / (4 pi (n + l/2)))
  double envelope = 0.0;   // k^eps (Y / (n + l/2))^{1+eps}
};
WMainTerm w_main_term(std::uint64_t n, std::int64_t ell, double Y, int k, const BumpFunction& g,
                      double eps = 0.1);

struct GammaRatio {
  double error = 0.0;       // |Gamma(s+k-1) / (Gamma(k-1) (k-1)^s) - 1|
  double normalized = 0.0;  // error * k / (|s| + 1)^2
};
GammaRatio gamma_ratio_check(double k, cplx s);

}  // namespace scs
