#include "scs/specfun.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "scs/arith.hpp"
#include "scs/common.hpp"

namespace scs {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I1{0.0, 1.0};

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// B_2, B_4, ..., B_20
constexpr double kBernoulli[10] = {1.0 / 6,          -1.0 / 30,  1.0 / 42,        -1.0 / 30,
                                   5.0 / 66,         -691.0 / 2730, 7.0 / 6,      -3617.0 / 510,
                                   43867.0 / 798,    -174611.0 / 330};

bool near_nonpositive_integer(cplx s, double tol) {
  if (s.real() > 0.5) return false;
  const double r = std::round(s.real());
  return std::abs(s - cplx(r, 0.0)) < tol;
}

void check_theta_pole(cplx s, const char* who) {
  constexpr double tol = 1e-8;
  if (std::abs(s - 0.5) < tol || near_nonpositive_integer(s, tol)) {
    throw NumericalError(std::string(who) + ": argument within 1e-8 of a pole");
  }
}

cplx lanczos_series(cplx z) {
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  return x;
}

// d^4/dv^4 (1 + v^2)^{-alpha}
cplx f4(double v, cplx alpha, cplx c2, cplx c3, cplx c4) {
  const double u = 1.0 + v * v;
  const double q = v * v / u;
  const cplx head = std::exp(-(alpha + 2.0) * std::log(u));
  return head * (12.0 * c2 - 48.0 * c3 * q + 16.0 * c4 * q * q);
}

}  // namespace

const GaussLegendre& gauss_legendre(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, GaussLegendre> cache;
  if (n == 0) throw InvalidArgument("gauss_legendre: n must be positive");
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (unsigned j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

cplx gamma(cplx s) {
  if (s.real() < 0.5) return kPi / (std::sin(kPi * s) * gamma(1.0 - s));
  const cplx z = s - 1.0;
  const cplx t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * lanczos_series(z);
}

cplx log_gamma(cplx s) {
  if (s.real() >= 10.0) {
    cplx series = 0.0;
    const cplx inv = 1.0 / s;
    const cplx inv2 = inv * inv;
    cplx p = inv;
    for (int j = 1; j <= 8; ++j) {
      series += kBernoulli[j - 1] / (2.0 * j * (2.0 * j - 1.0)) * p;
      p *= inv2;
    }
    return (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * kPi) + series;
  }
  if (s.real() < 0.5) return std::log(kPi) - std::log(std::sin(kPi * s)) - log_gamma(1.0 - s);
  const cplx z = s - 1.0;
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_series(z));
}

double log_gamma(double x) { return std::lgamma(x); }

cplx zeta(cplx s) {
  if (std::abs(s - 1.0) < 1e-8) throw NumericalError("zeta: argument within 1e-8 of the pole");
  const int N = 20 + static_cast<int>(std::ceil(std::abs(s)));
  cplx sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double lnN = std::log(static_cast<double>(N));
  const cplx Ns = std::exp(-s * lnN);  // N^{-s}
  sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
  // B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
  cplx fac = s * Ns / static_cast<double>(N) / 2.0;
  for (int j = 1; j <= 10; ++j) {
    sum += kBernoulli[j - 1] * fac;
    fac *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j) /
           ((2.0 * j + 1.0) * (2.0 * j + 2.0) * static_cast<double>(N) * N);
  }
  return sum;
}

cplx theta_s(cplx s) {
  check_theta_pole(s, "theta_s");
  return std::exp(-s * std::log(kPi)) * gamma(s) * zeta(2.0 * s);
}

cplx varphi_s(cplx s) {
  check_theta_pole(s, "varphi_s");
  check_theta_pole(1.0 - s, "varphi_s");
  return theta_s(1.0 - s) / theta_s(s);
}

cplx varphi_ell(std::uint64_t ell, cplx s) {
  if (ell == 0) throw InvalidArgument("varphi_ell: l must be positive");
  check_theta_pole(s, "varphi_ell");
  cplx sum = 0.0;
  for (std::uint64_t a : divisors(ell)) {
    const double ratio = static_cast<double>(a) / static_cast<double>(ell / a);
    sum += std::exp((s - 0.5) * std::log(ratio));
  }
  return 2.0 / theta_s(s) * sum;
}

cplx basset_integral(double t, double w, double abs_tol, double rel_tol) {
  if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("basset_integral: w must be positive");
  const cplx alpha(0.5, t);
  const cplx c2 = alpha * (alpha + 1.0);
  const cplx c3 = c2 * (alpha + 2.0);
  const cplx c4 = c3 * (alpha + 3.0);
  const auto& gl = gauss_legendre(20);
  const double at = std::fabs(t);
  const double w4 = w * w * w * w;
  // past v_min the tail bound below is meaningful
  const double v_min = 2.0 + (at + 5.0) / w;
  constexpr std::size_t kMaxPanels = 5'000'000;

  cplx sum = 0.0;
  double v = 0.0;
  for (std::size_t panel = 0;; ++panel) {
    if (panel == kMaxPanels) throw NumericalError("basset_integral: panel limit reached");
    const double freq = at * (v <= 1.0 ? 1.0 : 2.0 * v / (1.0 + v * v));
    const double h = std::min(kPi / (w + freq), 0.5 * std::max(1.0, v));
    const double mid = v + 0.5 * h;
    cplx part = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = mid + 0.5 * h * gl.nodes[i];
      part += gl.weights[i] * f4(x, alpha, c2, c3, c4) * std::cos(x * w);
    }
    sum += 0.5 * h * part;
    v += h;
    if (v < v_min) continue;
    // one more integration by parts bounds the tail by |F''''(V)|/w times
    // (1 + the size of F^(5)/F'''' relative to w)
    const double tail = std::abs(f4(v, alpha, c2, c3, c4)) / w * (1.0 + 2.0 * (at + 5.0) / (v * w));
    if (tail < std::max(abs_tol * w4, rel_tol * std::abs(sum))) break;
  }
  return sum / w4;
}

double bessel_k_it(double t, double w) {
  if (!(w > 0.0)) throw InvalidArgument("bessel_k_it: w must be positive");
  if (!(std::fabs(t) <= 50.0)) throw OutOfRange("bessel_k_it: |t| must be <= 50");
  const cplx I = basset_integral(t, w, 1e-20, 1e-13);
  const cplx k = gamma(cplx(0.5, t)) * std::exp(-I1 * t * std::log(w / 2.0)) * I / std::sqrt(kPi);
  return k.real();
}

double bessel_k_it_cosh(double t, double w) {
  if (!(w > 0.0)) throw InvalidArgument("bessel_k_it_cosh: w must be positive");
  const double U = std::acosh(1.0 + 45.0 / w);
  const double h0 = std::min(0.125, kPi / (4.0 * std::fabs(t) + 1.0));
  const auto panels = static_cast<std::size_t>(std::ceil(U / h0));
  const double h = U / static_cast<double>(panels);
  const auto& gl = gauss_legendre(20);
  CompensatedSum sum;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double u = mid + 0.5 * h * gl.nodes[i];
      sum.add(0.5 * h * gl.weights[i] * std::exp(-w * std::cosh(u)) * std::cos(t * u));
    }
  }
  return sum.value();
}

double bessel_k0_series(double w) {
  if (!(w > 0.0)) throw InvalidArgument("bessel_k0_series: w must be positive");
  using ld = long double;
  const ld x = w;
  const ld q = x * x / 4;
  constexpr ld euler_gamma = 0.577215664901532860606512090082402431L;
  ld term = 1, i0 = 1, rest = 0, harmonic = 0;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<ld>(k) * k);
    harmonic += 1.0L / k;
    i0 += term;
    rest += term * harmonic;
    if (term * harmonic < 1e-22L * rest) break;
  }
  return static_cast<double>(-(std::log(x / 2) + euler_gamma) * i0 + rest);
}

BesselBound bessel_bound_check(double t, double w, int A, double eps) {
  if (A < 0) throw InvalidArgument("bessel_bound_check: A must be >= 0");
  if (!(eps >= 0.0)) throw InvalidArgument("bessel_bound_check: eps must be >= 0");
  const double k = std::fabs(bessel_k_it(t, w));
  const double r = (1.0 + std::fabs(t)) / w;
  const double denom = std::abs(gamma(cplx(0.5, t))) * std::pow(r, A) * std::pow(1.0 + r, eps);
  BesselBound out;
  out.ratio = k / denom;
  out.constant = kBesselBoundConstant;
  out.holds = std::isfinite(out.ratio) && out.ratio <= out.constant;
  return out;
}

BumpFunction BumpFunction::log_scale(double h) {
  if (!(h > 0.0)) throw InvalidArgument("log_scale bump: half-width must be positive");
  return BumpFunction(Kind::LogScale, h);
}

double BumpFunction::lo() const { return kind_ == Kind::Canonical ? 1.0 : std::exp(-h_); }
double BumpFunction::hi() const { return kind_ == Kind::Canonical ? 2.0 : std::exp(h_); }

double BumpFunction::log_value(double t) const {
  double x;
  if (kind_ == Kind::Canonical) {
    x = 2.0 * t - 3.0;
  } else {
    if (!(t > 0.0)) return -std::numeric_limits<double>::infinity();
    x = std::log(t) / h_;
  }
  if (!(std::fabs(x) < 1.0)) return -std::numeric_limits<double>::infinity();
  return 1.0 - 1.0 / (1.0 - x * x);
}

double BumpFunction::operator()(double t) const { return std::exp(log_value(t)); }

cplx MellinTransform::operator()(cplx s) const {
  const double a = std::log(g_.lo());
  const double b = std::log(g_.hi());
  const double len = b - a;
  const auto panels = base_panels_ + static_cast<unsigned>(std::ceil(std::fabs(s.imag()) * len / (3.0 * kPi)));
  const double h = len / panels;
  const auto& gl = gauss_legendre(20);
  cplx sum = 0.0;
  for (unsigned p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    cplx part = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double u = mid + 0.5 * h * gl.nodes[i];
      const double lg = g_.log_value(std::exp(u));
      if (std::isinf(lg)) continue;
      part += gl.weights[i] * std::exp(lg + s * u);
    }
    sum += 0.5 * h * part;
  }
  return sum;
}

std::vector<cplx> MellinTransform::on_line(double sigma, const std::vector<double>& ts) const {
  double tmax = 0.0;
  for (double t : ts) tmax = std::max(tmax, std::fabs(t));
  const double a = std::log(g_.lo());
  const double b = std::log(g_.hi());
  const double len = b - a;
  const auto panels = base_panels_ + static_cast<unsigned>(std::ceil(tmax * len / (3.0 * kPi)));
  const double h = len / panels;
  const auto& gl = gauss_legendre(20);
  std::vector<double> us, cs;
  for (unsigned p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double u = mid + 0.5 * h * gl.nodes[i];
      const double lg = g_.log_value(std::exp(u));
      if (std::isinf(lg)) continue;
      us.push_back(u);
      cs.push_back(0.5 * h * gl.weights[i] * std::exp(lg + sigma * u));
    }
  }
  std::vector<cplx> out(ts.size());
  parallel_chunks(ts.size(), [&](std::size_t j) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i) sum += cs[i] * std::polar(1.0, ts[j] * us[i]);
    out[j] = sum;
  });
  return out;
}

AEllResult a_ell_y(const MellinTransform& psi, std::int64_t ell, double y, double tol, double t_max) {
  if (ell == 0) throw InvalidArgument("a_ell_y: l must be nonzero");
  if (!(y > 0.0) || !std::isfinite(y)) throw InvalidArgument("a_ell_y: y must be positive");
  if (!(tol > 0.0) || !(t_max > 0.0)) throw InvalidArgument("a_ell_y: tol and t_max must be positive");
  const std::uint64_t L = ell < 0 ? static_cast<std::uint64_t>(-ell) : static_cast<std::uint64_t>(ell);
  const double w = 2.0 * kPi * static_cast<double>(L) * y;
  const auto divs = divisors(L);
  const double taul = static_cast<double>(divs.size());
  const double front = std::sqrt(y / kPi);

  // Envelope of the integrand: |Psi| times a slowly growing allowance for
  // |K/Gamma| and 1/|zeta(1+2it)|.
  // |K_{it}(w) / Gamma(1/2+it)| falls off like t^{-1/2} once t exceeds w;
  // 1/zeta(1+2it) grows at most like log t.
  auto allowance = [&](double t) {
    return 2.0 * (1.0 + std::log1p(1.0 / w)) * (1.0 + std::log(2.0 + t)) /
           std::sqrt(kPi * (1.0 + t / (1.0 + w)));
  };
  constexpr double step = 0.25;
  const auto samples = static_cast<std::size_t>(std::ceil(t_max / step)) + 1;
  std::vector<double> dens(samples);
  // Psi is itself a quadrature; values this far below Psi(-1/2) are noise
  const double noise = 1e-13 * std::abs(psi(cplx(-0.5, 0.0)));
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) * step;
    const double m = std::abs(psi(cplx(-0.5, -t)));
    dens[i] = m < noise ? 0.0 : front * taul * m * allowance(t);
  }
  if (dens.back() > 0.0) {
    // mass beyond t_max, extrapolating the local decay rate of the last 10 units
    const std::size_t back = std::min<std::size_t>(samples - 1, 40);
    const double rate = std::log(dens[samples - 1 - back] / dens.back()) / (back * step);
    const double beyond = rate > 0.0 && std::isfinite(rate) ? 4.0 * dens.back() / rate
                                                            : std::numeric_limits<double>::infinity();
    if (!(beyond < 0.1 * tol)) {
      throw NumericalError("a_ell_y: tail bound unattainable at the requested tolerance");
    }
  }
  // smallest T whose two-sided tail (suffix sum) is below tol / 2
  double tail = 0.0;
  std::size_t cut = samples;
  for (std::size_t i = samples; i-- > 0;) {
    tail += 2.0 * dens[i] * step;
    if (tail >= 0.5 * tol) break;
    cut = i;
  }
  constexpr double h = 1.0;
  const double T = std::max(h, std::ceil(static_cast<double>(cut) * step / h) * h);
  const auto panels = static_cast<std::size_t>(std::llround(T / h));
  const auto& gl = gauss_legendre(20);

  const std::size_t n = panels * gl.nodes.size();
  std::vector<double> ts(n);
  for (std::size_t p = 0; p < panels; ++p) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      ts[p * gl.nodes.size() + i] = (static_cast<double>(p) + 0.5) * h + 0.5 * h * gl.nodes[i];
    }
  }
  std::vector<double> neg(n);
  for (std::size_t j = 0; j < n; ++j) neg[j] = -ts[j];
  const auto psis = psi.on_line(-0.5, neg);
  std::vector<cplx> values(n);
  parallel_chunks(panels, [&](std::size_t p) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = ts[p * gl.nodes.size() + i];
      const cplx Psi = psis[p * gl.nodes.size() + i];
      const cplx z = zeta(cplx(1.0, 2.0 * t));
      cplx D = 0.0;
      for (std::uint64_t a : divs) {
        D += std::exp(I1 * t * std::log(static_cast<double>(a) / static_cast<double>(L / a)));
      }
      const cplx outer = std::exp(I1 * t * std::log(kPi) - I1 * t * std::log(w / 2.0)) * Psi * D / z /
                         std::sqrt(kPi);
      const double scale = 2.0 * front * std::abs(outer) * T;
      const double itol = std::min(1e-3, 0.05 * tol / std::max(scale, 1e-300));
      const cplx Iv = basset_integral(t, w, itol, 1e-14);
      values[p * gl.nodes.size() + i] = 0.5 * h * gl.weights[i] * outer * Iv;
    }
  });
  CompensatedSum re;
  for (const auto& v : values) re.add(v.real());
  AEllResult out;
  out.value = 2.0 * front * re.value();
  out.T = T;
  out.nodes = n;
  return out;
}

double w_weight(std::uint64_t n, std::int64_t ell, double Y, int k, const BumpFunction& g,
                unsigned panels) {
  if (n == 0 || static_cast<std::int64_t>(n) + ell < 1) {
    throw InvalidArgument("w_weight: need n >= 1 and n + l >= 1");
  }
  if (!(Y >= 1.0)) throw InvalidArgument("w_weight: Y must be >= 1");
  if (k < 12) throw InvalidArgument("w_weight: k must be >= 12");
  if (panels == 0) throw InvalidArgument("w_weight: panels must be positive");
  const double nd = static_cast<double>(n);
  const double nl = static_cast<double>(static_cast<std::int64_t>(n) + ell);
  const double m = nd + 0.5 * static_cast<double>(ell);
  const double log_pref = 0.5 * (k - 1) * (std::log(nd) + std::log(nl)) +
                          (k - 1) * std::log(4.0 * kPi) - log_gamma(static_cast<double>(k - 1));
  const auto& gl = gauss_legendre(20);
  const double a = g.lo(), b = g.hi();
  const double h = (b - a) / panels;
  std::vector<double> logs, weights;
  logs.reserve(panels * gl.nodes.size());
  for (unsigned p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = mid + 0.5 * h * gl.nodes[i];
      const double lg = g.log_value(t);
      if (std::isinf(lg)) continue;
      logs.push_back(lg + (k - 2) * std::log(t / Y) - 4.0 * kPi * m * t / Y - std::log(Y));
      weights.push_back(0.5 * h * gl.weights[i]);
    }
  }
  if (logs.empty()) return 0.0;
  const double shift = *std::max_element(logs.begin(), logs.end());
  CompensatedSum sum;
  for (std::size_t i = 0; i < logs.size(); ++i) sum.add(weights[i] * std::exp(logs[i] - shift));
  if (!(sum.value() > 0.0)) return 0.0;
  const double total = log_pref + shift + std::log(sum.value());
  if (total > 700.0) throw NumericalError("w_weight: result overflows");
  return std::exp(total);
}

WMainTerm w_main_term(std::uint64_t n, std::int64_t ell, double Y, int k, const BumpFunction& g,
                      double eps) {
  if (n == 0 || static_cast<std::int64_t>(n) + ell < 1) {
    throw InvalidArgument("w_main_term: need n >= 1 and n + l >= 1");
  }
  if (!(Y >= 1.0)) throw InvalidArgument("w_main_term: Y must be >= 1");
  if (k < 12) throw InvalidArgument("w_main_term: k must be >= 12");
  const double nd = static_cast<double>(n);
  const double nl = static_cast<double>(static_cast<std::int64_t>(n) + ell);
  const double m = nd + 0.5 * static_cast<double>(ell);
  WMainTerm out;
  out.prefactor = ell == 0 ? 1.0 : std::exp((k - 1) * (0.5 * (std::log(nd) + std::log(nl)) - std::log(m)));
  out.main = out.prefactor * g(Y * (k - 1) / (4.0 * kPi * m));
  out.envelope = std::pow(static_cast<double>(k), eps) * std::pow(Y / m, 1.0 + eps);
  return out;
}

GammaRatio gamma_ratio_check(double k, cplx s) {
  if (!(k > 1.0)) throw InvalidArgument("gamma_ratio_check: k must exceed 1");
  GammaRatio out;
  const double km1 = k - 1.0;
  if (s.imag() == 0.0 && s.real() >= 0.0 && s.real() <= 1000.0 && s.real() == std::floor(s.real())) {
    // Gamma(s + k - 1) / Gamma(k - 1) = prod_{j < s} (k - 1 + j)
    double prod = 1.0;
    for (int j = 0; j < static_cast<int>(s.real()); ++j) prod *= (km1 + j) / km1;
    out.error = std::fabs(prod - 1.0);
  } else {
    const cplx lr = log_gamma(s + km1) - log_gamma(cplx(km1, 0.0)) - s * std::log(km1);
    out.error = std::abs(std::exp(lr) - 1.0);
  }
  const double scale = std::abs(s) + 1.0;
  out.normalized = out.error * k / (scale * scale);
  return out;
}

}  // namespace scs
