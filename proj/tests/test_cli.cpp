#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scs/cli.hpp"
#include "scs/report.hpp"
#include "scs/shifted.hpp"

using namespace scs;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "scs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("eigenform dump") {
  auto r = run({"eigenform", "--weight", "12", "--cutoff", "10"});
  CHECK(r.code == kExitOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 11);
  CHECK(l[0] == "n,a_n,lambda_n");
  CHECK(l[2].rfind("2,-24,", 0) == 0);

  r = run({"eigenform", "--weight", "12", "--cutoff", "1"});
  CHECK(lines(r.out) == std::vector<std::string>{"n,a_n,lambda_n", "1,1,1"});

  r = run({"eigenform", "--weight", "24", "--cutoff", "10"});
  CHECK(r.code == kExitValidation);
  CHECK(r.out.empty());
  CHECK(r.err.find("24") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitValidation);
  CHECK(run({"frobnicate"}).code == kExitValidation);
  CHECK(run({"specfun", "bessel", "--w", "1"}).code == kExitValidation);
  CHECK(run({"specfun", "theta"}).code == kExitValidation);
  CHECK(run({"shifted", "--x", "1000", "--ell", "0"}).code == kExitValidation);
  CHECK(run({"eigenform", "--weight", "12", "--format", "xml"}).code == kExitValidation);
  CHECK(run({"specfun", "theta", "--sigma", "0.5", "--t", "0"}).code == kExitValidation);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("shifted report row") {
  const auto r = run({"shifted", "--function", "tau2", "--x", "1000", "--ell", "1", "--epsilon", "0.5"});
  REQUIRE(r.code == kExitOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  const auto t2 = ArithmeticFunction::tau_m(2);
  const auto rep = theorem2_report(t2, t2, 1000, 0.5, 1);
  auto row = shifted_csv_row(rep);
  std::string expect = "tau2";
  for (const auto& f : row) expect += "," + f;
  CHECK(l[1].rfind(expect, 0) == 0);
}

TEST_CASE("sievecheck run") {
  const auto a = run({"sievecheck", "--count", "200", "--seed", "42"});
  CHECK(a.code == kExitOk);
  const auto l = lines(a.out);
  REQUIRE(l.size() == 201);
  for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i].substr(l[i].rfind(',') + 1) == "true");
  const auto b = run({"sievecheck", "--count", "200", "--seed", "42"});
  CHECK(a.out == b.out);
  const auto c = run({"sievecheck", "--count", "200", "--seed", "43"});
  CHECK(a.out != c.out);
}

TEST_CASE("corrupted system gives exit 2") {
  const std::string path = "cli_corrupt_system.json";
  {
    std::ofstream f(path);
    f << R"({"context":{"a":1,"a_ell":1,"w":1,"v":1,"r":0,"x":1000,"z":5},"m_lo":1,"m_hi":1000,
             "omega":[{"p":3,"classes":[1,1]},{"p":5,"classes":[2,2,2,2]}]})";
  }
  const auto r = run({"sievecheck", "--system", path});
  CHECK(r.code == kExitProperty);
  CHECK(r.err.find("property violation") != std::string::npos);
  std::remove(path.c_str());
  CHECK(run({"sievecheck", "--system", "no_such_file.json"}).code == kExitValidation);
}

TEST_CASE("json output and --out") {
  const std::string path = "cli_mk.json";
  const auto r = run({"mk", "--weight", "12", "--cutoff", "5000", "--format", "json", "--out", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["weight"] == 12);
  CHECK(j[0]["R_k"] == "unavailable");
  CHECK(j[0]["M_k"].is_number());
  std::remove(path.c_str());

  const auto e = run({"eigenform", "--weight", "26", "--cutoff", "30", "--format", "json"});
  const auto k = nlohmann::json::parse(e.out);
  CHECK(k[29]["a_n"].is_string());  // too wide for a double
  CHECK(k[0]["a_n"] == 1);
}

TEST_CASE("specfun verbs") {
  auto r = run({"specfun", "bessel", "--t", "0,1", "--w", "0.5,1"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 5);
  CHECK(lines(r.out)[0] == "t,w,value,bound_ratio,holds");
  r = run({"specfun", "theta", "--t", "1,5"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 3);
  r = run({"specfun", "gammaratio", "--k", "100,1000", "--sigma", "1", "--t", "0,1"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 5);
  r = run({"specfun", "wweight", "--weight", "50", "--Y", "1", "--ell", "0"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() > 2);
  r = run({"specfun", "aell", "--ell", "1", "--y", "2", "--tol", "1e-8"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 2);
}

TEST_CASE("repeated commands are byte-identical") {
  const std::vector<std::vector<std::string>> cmds{
      {"eigenform", "--weight", "22", "--cutoff", "50"},
      {"shifted", "--weight", "12", "--x", "5000", "--ell", "1,2", "--epsilon", "0.1,0.5", "--sieve-bound"},
      {"mk", "--weight", "16", "--cutoff", "3000"},
      {"specfun", "wweight", "--weight", "100", "--Y", "1", "--ell", "1"},
      {"sievecheck", "--count", "20", "--seed", "7", "--format", "json"}};
  for (const auto& c : cmds) {
    const auto a = run(c);
    const auto b = run(c);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }
}
