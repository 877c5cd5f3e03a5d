#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "radix/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = radix::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& piece) { return text.find(piece) != std::string::npos; }

}  // namespace

TEST_CASE("eval") {
  auto r = run({"eval", "--builtin", "ramanujan", "-n", "3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "value: 2.2360679774997896964"));
  CHECK(contains(run({"eval", "--builtin", "golden", "-n", "1"}).out, "value: 1\n"));
  CHECK(contains(run({"eval", "--a", "n", "--r", "n", "-n", "1"}).out, "value: 1\n"));
  CHECK(contains(run({"eval", "--a", "1", "--r", "2", "-n", "2", "--precision", "64"}).out, "precision_bits: 64"));
  CHECK(contains(run({"eval", "--a", "n", "--p", "1/2", "-n", "1"}).out, "value: 1\n"));
  CHECK(contains(run({"eval", "--builtin", "ex-nested-n", "-n", "1", "--offset", "1/2"}).out, "value: 1.5\n"));
}

TEST_CASE("eval formats") {
  const auto json = nlohmann::json::parse(run({"eval", "--builtin", "golden", "-n", "3", "--format", "json"}).out);
  CHECK(json["depth"] == 3);
  CHECK(json["value"]["precision_bits"] == 128);
  CHECK(json["value"]["decimal"].get<std::string>().rfind("1.553773974", 0) == 0);
  const auto csv = run({"eval", "--builtin", "golden", "-n", "3", "--format", "csv"}).out;
  CHECK(csv.rfind("depth,value,precision_bits,rounding_bound\n3,1.553773974", 0) == 0);
}

TEST_CASE("eval across a zero radicand") {
  // a = (1, 0, 3, ...), r = 2: depth 2 is sqrt(1 + 0) = 1
  const auto r = run({"eval", "--a", "(n-2)^2*n/(n+0)", "--r", "2", "-n", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "value: 1\n"));
}

TEST_CASE("spec files") {
  const std::string path = "radix_cli_test_spec.json";
  {
    std::ofstream f(path);
    f << R"({"kind":"radical","a":"1","b":"n","r":"2","label":"ramanujan"})";
  }
  CHECK(contains(run({"eval", "--spec", path, "-n", "3"}).out, "value: 2.2360679774997896964"));
  {
    std::ofstream f(path);
    f << R"({"kind":"radical","a":"1+"})";
  }
  CHECK(run({"eval", "--spec", path, "-n", "3"}).code == 2);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK(run({"eval", "--spec", path, "-n", "3"}).code == 2);
  std::remove(path.c_str());
  CHECK(run({"eval", "--spec", "/nonexistent/spec.json", "-n", "3"}).code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run({"eval", "--a", "n +", "-n", "2"}).code == 2);
  CHECK(run({"eval", "--builtin", "nope", "-n", "2"}).code == 2);
  CHECK(run({"eval", "-n", "2"}).code == 2);
  CHECK(run({"eval", "--a", "1", "--builtin", "golden"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"eval", "--a", "n-3", "-n", "2"}).code == 3);
  CHECK(run({"eval", "--a", "1", "-n", "2", "--precision", "8"}).code == 3);
  CHECK(run({"eval", "--a", "1/(n-1)", "-n", "2"}).code == 3);
  CHECK(run({"gaps", "--builtin", "golden", "--methods", "bogus"}).code == 2);
  CHECK(run({"gaps", "--builtin", "golden", "--methods", "power_form"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("gaps") {
  const auto r = run({"gaps", "--builtin", "golden", "--methods", "polya_szego", "--n-max", "4"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "n,approximant,true_gap,polya_szego,polya_szego/true_gap");
  for (int n = 1; n <= 4; ++n) {
    std::getline(lines, row);
    const std::string expected[] = {"0.5", "0.25", "0.125", "0.0625"};
    CHECK(contains(row, "," + expected[n - 1] + ","));
  }

  const auto ram = run({"gaps", "--builtin", "ramanujan", "--methods", "weighted_ps", "--n-max", "5"});
  CHECK(contains(ram.out, "\n5,"));
  CHECK(contains(ram.out, ",22.5,"));

  const auto all = run({"gaps", "--builtin", "ex-nested-n", "-n", "3"});
  CHECK(contains(all.out, "n,approximant,true_gap,identity,herschfeld_general,polya_szego,"));

  // deterministic output
  CHECK(run({"gaps", "--builtin", "ramanujan", "-n", "6"}).out == run({"gaps", "--builtin", "ramanujan", "-n", "6"}).out);
  const auto json = nlohmann::json::parse(run({"gaps", "--builtin", "golden", "-n", "2", "--format", "json"}).out);
  CHECK(json["rows"].size() == 2);
}

TEST_CASE("limit") {
  const auto ram = run({"limit", "--builtin", "ramanujan", "--tol", "1e-9"});
  CHECK(ram.code == 0);
  CHECK(contains(ram.out, "value: 2.9999999999"));
  CHECK(contains(ram.out, "certified: true"));
  const auto golden = run({"limit", "--builtin", "golden", "--tol", "1e-12"});
  CHECK(golden.code == 0);
  CHECK(contains(golden.out, "value: 1.618033988749"));
  const auto divergent = run({"limit", "--a", "2^(2^n*n)", "--r", "2", "--tol", "1e-3"});
  CHECK(divergent.code == 4);
  CHECK(contains(divergent.out, "certified: false"));
  CHECK(run({"limit", "--a", "2^(2^n*n)", "--r", "2", "--tol", "1e-3", "--allow-uncertified"}).code == 0);
  CHECK(run({"limit", "--builtin", "golden", "--strategy", "nope"}).code == 2);
  CHECK(run({"limit", "--builtin", "golden", "--strategy", "summed_partial", "--n-max", "20"}).code == 4);
}

TEST_CASE("diagnose") {
  const auto c = run({"diagnose", "--a", "3^(2^n)", "--horizon", "12", "--format", "csv"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "n,indicator,running_sup,alpha,"));
  CHECK(contains(c.out, "\n12,3,3,"));
  CHECK(contains(c.out, "# verdict: looks_convergent"));
  CHECK(contains(run({"diagnose", "--a", "2^(2^n*n)"}).out, "verdict: looks_divergent"));
  CHECK(contains(run({"diagnose", "--a", "n"}).out, "verdict: looks_convergent"));
  const auto json = nlohmann::json::parse(run({"diagnose", "--a", "1", "--format", "json"}).out);
  CHECK(json["alpha"][0]["decimal"] == "-inf");
  CHECK(run({"diagnose", "--a", "1", "--horizon", "4"}).code == 3);
}

TEST_CASE("precision from the environment") {
  setenv("RADIX_PRECISION_BITS", "96", 1);
  CHECK(contains(run({"eval", "--builtin", "golden", "-n", "2"}).out, "precision_bits: 96"));
  CHECK(contains(run({"eval", "--builtin", "golden", "-n", "2", "--precision", "80"}).out, "precision_bits: 80"));
  setenv("RADIX_PRECISION_BITS", "lots", 1);
  CHECK(run({"eval", "--builtin", "golden", "-n", "2"}).code == 2);
  unsetenv("RADIX_PRECISION_BITS");
}
