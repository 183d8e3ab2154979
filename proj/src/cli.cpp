#include "scs/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "scs/arith.hpp"
#include "scs/common.hpp"
#include "scs/equidist.hpp"
#include "scs/largesieve.hpp"
#include "scs/qexpansion.hpp"
#include "scs/report.hpp"
#include "scs/shifted.hpp"
#include "scs/specfun.hpp"

namespace scs {

namespace {

constexpr double kPi = std::numbers::pi;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// JSON value for a CSV cell: finite reals and short integers become numbers,
// everything else stays text.
nlohmann::json cell(const std::string& s) {
  if (s.empty()) return s;
  const bool integral = s.find_first_not_of("-0123456789") == std::string::npos;
  if (integral && s.size() <= 15) return std::stoll(s);
  if (integral) return s;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() + s.size() && std::isfinite(v)) return v;
  return s;
}

void emit(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    CsvWriter w(os, t.header);
    for (const auto& r : t.rows) w.row(r);
    return;
  }
  auto arr = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = cell(r[i]);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

struct Output {
  std::string path;
  std::string format = "csv";
};

void add_output(CLI::App* app, Output& o) {
  app->add_option("--out", o.path, "Output file (stdout when omitted)");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

template <class T>
void require_nonempty(const std::vector<T>& v, const char* flag) {
  if (v.empty()) throw InvalidArgument(std::string("empty grid: ") + flag + " needs at least one value");
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

// ---- eigenform -----------------------------------------------------------

struct EigenformArgs {
  int weight = 12;
  std::uint64_t cutoff = 10;
};

Table cmd_eigenform(const EigenformArgs& a) {
  if (a.cutoff == 0) throw InvalidArgument("--cutoff must be >= 1");
  const auto f = eigenform(a.weight, a.cutoff);
  Table t{{"n", "a_n", "lambda_n"}, {}};
  for (std::uint64_t n = 1; n <= a.cutoff; ++n) {
    t.rows.push_back({std::to_string(n), f.coefficient(n).get_str(), format_real(f.lambda(n))});
  }
  return t;
}

// ---- shifted --------------------------------------------------------------

struct ShiftedArgs {
  int weight = 0;
  std::string function;
  std::vector<double> x;
  std::vector<std::int64_t> ell{1};
  std::vector<double> epsilon{0.5};
  bool sieve_bound = false;
};

Table cmd_shifted(const ShiftedArgs& a, std::vector<std::string>& violations) {
  require_nonempty(a.x, "--x");
  require_nonempty(a.ell, "--ell");
  require_nonempty(a.epsilon, "--epsilon");
  if (a.weight != 0 && !a.function.empty()) throw InvalidArgument("give --weight or --function, not both");
  std::int64_t max_shift = 0;
  for (auto l : a.ell) {
    if (l == 0) throw InvalidArgument("--ell must be nonzero");
    max_shift = std::max(max_shift, std::abs(l));
  }
  double max_x = 0.0;
  for (double x : a.x) {
    if (!(x >= 16.0) || x > 1e9) throw InvalidArgument("--x must lie in [16, 1e9]");
    max_x = std::max(max_x, x);
  }
  for (double e : a.epsilon) {
    if (!(e > 0.0 && e < 1.0)) throw InvalidArgument("--epsilon must lie in (0, 1)");
  }

  std::unique_ptr<ArithmeticFunction> fn;
  if (a.weight != 0) {
    const auto cutoff = static_cast<std::size_t>(std::floor(max_x)) + static_cast<std::size_t>(max_shift) + 1;
    auto f = std::make_shared<const EigenForm>(eigenform(a.weight, cutoff));
    fn = std::make_unique<ArithmeticFunction>(ArithmeticFunction::eigenform_abs(f));
  } else {
    const std::string name = a.function.empty() ? "tau2" : a.function;
    if (name == "one") {
      fn = std::make_unique<ArithmeticFunction>(ArithmeticFunction::one());
    } else if (name.rfind("tau", 0) == 0 && name.size() == 4 && name[3] >= '1' && name[3] <= '9') {
      fn = std::make_unique<ArithmeticFunction>(ArithmeticFunction::tau_m(static_cast<unsigned>(name[3] - '0')));
    } else {
      throw InvalidArgument("--function must be one of tau1..tau9, one");
    }
  }

  Table t{shifted_csv_header(), {}};
  t.header.insert(t.header.begin(), "function");
  t.header.push_back("overlap");
  t.header.push_back("sieve_bound");
  for (double x : a.x) {
    for (auto l : a.ell) {
      for (double e : a.epsilon) {
        const auto r = theorem2_report(*fn, *fn, x, e, l, a.sieve_bound);
        auto row = shifted_csv_row(r);
        row.insert(row.begin(), fn->name());
        row.push_back(format_real(r.overlap));
        row.push_back(format_real(r.sieve_bound));
        t.rows.push_back(std::move(row));
        PartitionSums parts{r.s_total, r.s_big, r.s_small, r.overlap};
        if (parts.identity_residual() > 1e-9) {
          violations.push_back("partition identity fails at x=" + format_real(x));
        }
        if (a.sieve_bound && !(r.s_small <= r.sieve_bound)) {
          violations.push_back("s_small exceeds the sieve-side bound at x=" + format_real(x));
        }
      }
    }
  }
  return t;
}

// ---- sievecheck -----------------------------------------------------------

struct SieveArgs {
  std::uint64_t count = 200;
  std::uint64_t seed = 42;
  std::uint64_t max_n = 100000;
  double max_z = 50.0;
  std::string system;
};

void sieve_row(Table& t, const std::string& id, const OmegaSystem& sys, double Q,
               std::vector<std::string>& violations) {
  const mpq_class H = big_h(Q, sys);
  const double bound = ls_bound(sys.N(), Q, H);
  const std::uint64_t brute = sift_bruteforce(sys);
  const bool holds = static_cast<double>(brute) <= bound;
  if (!holds) violations.push_back("large-sieve inequality fails for instance " + id);
  const auto& c = sys.context;
  t.rows.push_back({id, std::to_string(c.a), std::to_string(c.a_ell), std::to_string(c.w),
                    std::to_string(c.v), format_real(c.z), std::to_string(sys.N()),
                    std::to_string(sys.primes.size()), format_real(Q), format_real(H.get_d()),
                    std::to_string(brute), format_real(bound), bool_text(holds)});
}

Table cmd_sievecheck(const SieveArgs& a, std::vector<std::string>& violations) {
  Table t{{"instance", "a", "a_ell", "w", "v", "z", "N", "primes", "Q", "H", "brute", "bound", "holds"}, {}};
  if (!a.system.empty()) {
    std::ifstream in(a.system);
    if (!in) throw InvalidArgument("cannot read " + a.system);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
    const auto sys = omega_from_json(j);
    const double N = static_cast<double>(std::max<std::uint64_t>(sys.N(), 1));
    sieve_row(t, "file:Q=N^1/4", sys, std::max(1.0, std::pow(N, 0.25)), violations);
    sieve_row(t, "file:Q=N^1/2", sys, std::max(1.0, std::sqrt(N)), violations);
    return t;
  }
  if (a.count == 0) throw InvalidArgument("--count must be >= 1");
  std::mt19937_64 rng(a.seed);
  RandomSystemLimits limits{a.max_n, a.max_z};
  for (std::uint64_t i = 0; i < a.count; ++i) {
    const auto sys = random_admissible_system(rng, limits);
    const double N = static_cast<double>(sys.N());
    const double Q = std::max(1.0, i % 2 == 0 ? std::pow(N, 0.25) : std::sqrt(N));
    sieve_row(t, std::to_string(i), sys, Q, violations);
  }
  return t;
}

// ---- mk -------------------------------------------------------------------

struct MkArgs {
  std::vector<int> weight;
  std::uint64_t cutoff = 100000;
  std::uint64_t k_proxy = 0;
};

Table cmd_mk(const MkArgs& a, std::vector<std::string>& violations) {
  require_nonempty(a.weight, "--weight");
  Table t{corollary3_csv_header(), {}};
  for (int k : a.weight) {
    const std::uint64_t proxy = a.k_proxy ? a.k_proxy : static_cast<std::uint64_t>(k);
    const auto f = eigenform(k, std::max(a.cutoff, proxy));
    const auto r = corollary3_report(f, proxy, a.cutoff);
    if (!r.ems.holds) violations.push_back("EMS sum inequality fails for weight " + std::to_string(k));
    t.rows.push_back(corollary3_csv_row(r));
  }
  return t;
}

// ---- specfun --------------------------------------------------------------

struct SpecArgs {
  std::vector<double> t, w, sigma, y, Y, k;
  std::vector<int> weight;
  std::vector<std::int64_t> ell;
  int A = 0;
  double epsilon = 0.1;
  double tol = 1e-10;
};

Table spec_bessel(const SpecArgs& a) {
  require_nonempty(a.t, "--t");
  require_nonempty(a.w, "--w");
  Table t{{"t", "w", "value", "bound_ratio", "holds"}, {}};
  for (double tt : a.t) {
    for (double w : a.w) {
      const double v = bessel_k_it(tt, w);
      const auto b = bessel_bound_check(tt, w, a.A, a.epsilon);
      t.rows.push_back({format_real(tt), format_real(w), format_real(v), format_real(b.ratio), bool_text(b.holds)});
    }
  }
  return t;
}

Table spec_theta(const SpecArgs& a) {
  require_nonempty(a.t, "--t");
  const std::vector<double> sigmas = a.sigma.empty() ? std::vector<double>{0.5} : a.sigma;
  Table t{{"sigma", "t", "theta_re", "theta_im", "phi_re", "phi_im", "abs_phi"}, {}};
  for (double s : sigmas) {
    for (double tt : a.t) {
      const cplx z(s, tt);
      const cplx th = theta_s(z);
      const cplx ph = varphi_s(z);
      t.rows.push_back({format_real(s), format_real(tt), format_real(th.real()), format_real(th.imag()),
                        format_real(ph.real()), format_real(ph.imag()), format_real(std::abs(ph))});
    }
  }
  return t;
}

Table spec_wweight(const SpecArgs& a) {
  require_nonempty(a.weight, "--weight");
  require_nonempty(a.Y, "--Y");
  const std::vector<std::int64_t> ells = a.ell.empty() ? std::vector<std::int64_t>{0} : a.ell;
  const auto g = BumpFunction::canonical();
  Table t{{"k", "Y", "ell", "n", "w_weight", "main", "envelope", "normalized_error"}, {}};
  for (int k : a.weight) {
    for (double Y : a.Y) {
      for (auto l : ells) {
        const double scale = Y * (k - 1) / (4.0 * kPi);
        const double half = 0.5 * static_cast<double>(l);
        const auto lo = std::max<std::int64_t>({1, 1 - l, static_cast<std::int64_t>(std::floor(scale / 2.0 - half)) - 1});
        const auto hi = static_cast<std::int64_t>(std::ceil(scale - half)) + 1;
        for (std::int64_t n = lo; n <= hi; ++n) {
          const auto un = static_cast<std::uint64_t>(n);
          const double W = w_weight(un, l, Y, k, g);
          const auto m = w_main_term(un, l, Y, k, g);
          t.rows.push_back({std::to_string(k), format_real(Y), std::to_string(l), std::to_string(n), format_real(W),
                            format_real(m.main), format_real(m.envelope),
                            format_real(std::fabs(W - m.main) / m.envelope)});
        }
      }
    }
  }
  return t;
}

Table spec_gammaratio(const SpecArgs& a) {
  require_nonempty(a.k, "--k");
  require_nonempty(a.sigma, "--sigma");
  const std::vector<double> ts = a.t.empty() ? std::vector<double>{0.0} : a.t;
  Table t{{"k", "sigma", "t", "error", "normalized"}, {}};
  for (double k : a.k) {
    for (double s : a.sigma) {
      for (double tt : ts) {
        const auto r = gamma_ratio_check(k, cplx(s, tt));
        t.rows.push_back({format_real(k), format_real(s), format_real(tt), format_real(r.error),
                          format_real(r.normalized)});
      }
    }
  }
  return t;
}

Table spec_aell(const SpecArgs& a) {
  require_nonempty(a.ell, "--ell");
  require_nonempty(a.y, "--y");
  const MellinTransform psi(BumpFunction::log_scale());
  Table t{{"ell", "y", "a_ell", "T", "nodes"}, {}};
  for (auto l : a.ell) {
    for (double y : a.y) {
      const auto r = a_ell_y(psi, l, y, a.tol);
      t.rows.push_back({std::to_string(l), format_real(y), format_real(r.value), format_real(r.T),
                        std::to_string(r.nodes)});
    }
  }
  return t;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shifted convolution sums, the large sieve, and automorphic quantities"};
  app.require_subcommand(1);

  Output o_eig, o_shift, o_sieve, o_mk, o_spec;

  EigenformArgs ea;
  auto* eig = app.add_subcommand("eigenform", "Dump n, a_f(n), lambda_f(n)");
  eig->add_option("--weight", ea.weight, "Weight in {12,16,18,20,22,26}")->required();
  eig->add_option("--cutoff", ea.cutoff, "Largest n");
  add_output(eig, o_eig);

  ShiftedArgs sa;
  auto* shift = app.add_subcommand("shifted", "Shifted convolution sum report");
  shift->add_option("--weight", sa.weight, "Use |lambda_f| of the eigenform of this weight");
  shift->add_option("--function", sa.function, "tau2, tau3, ..., or one (default tau2)");
  shift->add_option("--x", sa.x, "Values of x")->delimiter(',')->required();
  shift->add_option("--ell", sa.ell, "Shifts")->delimiter(',');
  shift->add_option("--epsilon", sa.epsilon, "Values of epsilon")->delimiter(',');
  shift->add_flag("--sieve-bound", sa.sieve_bound, "Also compute the sieve-side bound");
  add_output(shift, o_shift);

  SieveArgs va;
  auto* sieve = app.add_subcommand("sievecheck", "Large-sieve inequality on random systems");
  sieve->add_option("--count", va.count, "Number of random systems");
  sieve->add_option("--seed", va.seed, "RNG seed");
  sieve->add_option("--max-n", va.max_n, "Largest range length N");
  sieve->add_option("--max-z", va.max_z, "Largest sieving limit z");
  sieve->add_option("--system", va.system, "Check one system read from a JSON file");
  add_output(sieve, o_sieve);

  MkArgs ma;
  auto* mkc = app.add_subcommand("mk", "M_k(f), L(1, sym^2 f) and the EMS sums");
  mkc->add_option("--weight", ma.weight, "Weights")->delimiter(',')->required();
  mkc->add_option("--cutoff", ma.cutoff, "Prime cutoff for the Euler products");
  mkc->add_option("--k-proxy", ma.k_proxy, "Replace k in prod_{p<=k} and log k");
  add_output(mkc, o_mk);

  SpecArgs pa;
  auto* spec = app.add_subcommand("specfun", "Special-function grids");
  spec->require_subcommand(1);
  add_output(spec, o_spec);
  auto* v_bessel = spec->add_subcommand("bessel", "K_{it}(w) and its bound ratio");
  v_bessel->add_option("--t", pa.t)->delimiter(',');
  v_bessel->add_option("--w", pa.w)->delimiter(',');
  v_bessel->add_option("--A", pa.A);
  v_bessel->add_option("--epsilon", pa.epsilon);
  auto* v_theta = spec->add_subcommand("theta", "theta(s) and phi(s) on a grid");
  v_theta->add_option("--sigma", pa.sigma)->delimiter(',');
  v_theta->add_option("--t", pa.t)->delimiter(',');
  auto* v_w = spec->add_subcommand("wweight", "W_{n,l}(Y) against its main term");
  v_w->add_option("--weight", pa.weight)->delimiter(',');
  v_w->add_option("--Y", pa.Y)->delimiter(',');
  v_w->add_option("--ell", pa.ell)->delimiter(',');
  auto* v_gr = spec->add_subcommand("gammaratio", "Gamma(s+k-1)/(Gamma(k-1)(k-1)^s) - 1");
  v_gr->add_option("--k", pa.k)->delimiter(',');
  v_gr->add_option("--sigma", pa.sigma)->delimiter(',');
  v_gr->add_option("--t", pa.t)->delimiter(',');
  auto* v_a = spec->add_subcommand("aell", "a_l(y) of an incomplete Eisenstein series");
  v_a->add_option("--ell", pa.ell)->delimiter(',');
  v_a->add_option("--y", pa.y)->delimiter(',');
  v_a->add_option("--tol", pa.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  std::vector<std::string> violations;
  Table table;
  const Output* o = nullptr;
  try {
    if (eig->parsed()) {
      table = cmd_eigenform(ea);
      o = &o_eig;
    } else if (shift->parsed()) {
      table = cmd_shifted(sa, violations);
      o = &o_shift;
    } else if (sieve->parsed()) {
      table = cmd_sievecheck(va, violations);
      o = &o_sieve;
    } else if (mkc->parsed()) {
      table = cmd_mk(ma, violations);
      o = &o_mk;
    } else {
      o = &o_spec;
      if (v_bessel->parsed()) table = spec_bessel(pa);
      else if (v_theta->parsed()) table = spec_theta(pa);
      else if (v_w->parsed()) table = spec_wweight(pa);
      else if (v_gr->parsed()) table = spec_gammaratio(pa);
      else table = spec_aell(pa);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const PropertyViolation& e) {
    err << "property violation: " << e.what() << '\n';
    return kExitProperty;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  std::ostringstream buf;
  emit(table, o->format, buf);
  if (o->path.empty()) {
    out << buf.str();
  } else {
    std::ofstream file(o->path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << buf.str()) || !file.flush()) {
      err << "error: cannot write " << o->path << '\n';
      return kExitValidation;
    }
  }
  if (!violations.empty()) {
    for (const auto& v : violations) err << "property violation: " << v << '\n';
    return kExitProperty;
  }
  return kExitOk;
}

}  // namespace scs
