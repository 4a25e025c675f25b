#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <probstir/special_numbers.hpp>

#include "cli.hpp"

using namespace probstir;
using nlohmann::json;

namespace
{

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(const std::vector<std::string> &args, int expected_code = 0)
{
    const Run r = run(args);
    REQUIRE_MESSAGE(r.code == expected_code, r.err);
    return json::parse(r.out);
}

Rational entry(const json &triangle, long n, long k)
{
    for (const auto &e : triangle["entries"]) {
        if (e[0] == n && e[1] == k) {
            return Rational::parse(e[2].get<std::string>());
        }
    }
    FAIL("missing entry");
    return Rational(0);
}

} // namespace

TEST_CASE("table of classical first-kind numbers")
{
    const json t = run_json({"table", "--family", "s1", "--nmax", "4"});
    CHECK(t["family"] == "s1");
    CHECK(t["rv"] == "none");
    CHECK(t["nmax"] == 4);
    CHECK(t["entries"].size() == 15);
    CHECK(entry(t, 4, 1) == Rational(-6));
    std::vector<std::pair<long, long>> order;
    for (const auto &e : t["entries"]) {
        order.emplace_back(e[0].get<long>(), e[1].get<long>());
    }
    CHECK(std::is_sorted(order.begin(), order.end()));
}

TEST_CASE("probabilistic table for a Bernoulli variable")
{
    const json t = run_json({"table", "--family", "prob-s2", "--rv", "bernoulli:p=1/2", "--lambda", "1/3", "--nmax",
                             "6"});
    CHECK(t["rv"] == "bernoulli");
    CHECK(t["params"]["p"] == "1/2");
    CHECK(t["lambda"] == "1/3");
    const Triangle s2 = triangle(Family::s2_deg, Rational(1, 3), 6);
    for (long n = 0; n <= 6; ++n) {
        for (long k = 0; k <= n; ++k) {
            CHECK(entry(t, n, k) == Rational(1, 2).pow(k) * s2(n, k));
        }
    }
}

TEST_CASE("smallest table")
{
    const json t = run_json({"table", "--family", "lah", "--nmax", "0"});
    REQUIRE(t["entries"].size() == 1);
    CHECK(t["entries"][0] == json::array({0, 0, "1"}));
}

TEST_CASE("serialized rationals round trip")
{
    for (const char *family : {"deg-s1", "deg-s2", "h", "g"}) {
        const json t = run_json({"table", "--family", family, "--lambda", "-2/7", "--nmax", "9"});
        const Triangle expect = triangle(parse_family(family), Rational(-2, 7), 9);
        for (const auto &e : t["entries"]) {
            const std::string text = e[2].get<std::string>();
            const Rational v = Rational::parse(text);
            CHECK(v == expect(e[0].get<std::size_t>(), e[1].get<std::size_t>()));
            CHECK(v.str() == text);
        }
    }
}

TEST_CASE("csv table")
{
    const Run r = run({"table", "--family", "s2", "--nmax", "2", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,k,value\n0,0,1\n1,0,0\n1,1,1\n2,0,0\n2,1,1\n2,2,1\n");
}

TEST_CASE("series of the probabilistic logarithm")
{
    const json s = run_json({"series", "--kind", "prob-log", "--rv", "poisson:alpha=2", "--lambda", "0", "--order",
                             "6"});
    const Series t = Series::variable(6);
    const Series expect = log1p(log1p(t) * Rational(1, 2));
    REQUIRE(s["coefficients"].size() == 7);
    for (const auto &c : s["coefficients"]) {
        CHECK(Rational::parse(c[1].get<std::string>()) == expect.egf(c[0].get<std::size_t>()));
    }
    CHECK_FALSE(s.contains("gamma"));
}

TEST_CASE("daehee series of a unit point mass")
{
    const json s =
        run_json({"series", "--kind", "daehee", "--rv", "pointmass:c=1", "--lambda", "0", "--gamma", "1", "--order", "5"});
    for (const auto &c : s["coefficients"]) {
        const long n = c[0].get<long>();
        const Rational expect = (n % 2 == 0 ? Rational(1) : Rational(-1)) * factorial(n) / Rational(n + 1);
        CHECK(Rational::parse(c[1].get<std::string>()) == expect);
    }
}

TEST_CASE("order zero series")
{
    for (const char *kind : {"daehee", "cauchy"}) {
        const json s = run_json({"series", "--kind", kind, "--rv", "pointmass:c=1", "--lambda", "1/2", "--order", "0"});
        REQUIRE(s["coefficients"].size() == 1);
        CHECK(s["coefficients"][0][1] == "1");
    }
    const json b = run_json({"series", "--kind", "bernoulli", "--lambda", "1/2", "--x", "3", "--order", "3"});
    CHECK(b["rv"] == "none");
    CHECK(b["x"] == "3");
}

TEST_CASE("order default comes from the environment")
{
    setenv("PROBSTIR_ORDER", "3", 1);
    const json t = run_json({"table", "--family", "s1"});
    CHECK(t["nmax"] == 3);
    const json s = run_json({"series", "--kind", "cauchy"});
    CHECK(s["order"] == 3);
    setenv("PROBSTIR_ORDER", "three", 1);
    CHECK(run({"table", "--family", "s1"}).code == exit_parse_error);
    unsetenv("PROBSTIR_ORDER");
    CHECK(run_json({"table", "--family", "s1"})["nmax"] == 32);
}

TEST_CASE("verify a geometric variable")
{
    const json r = run_json({"verify", "--rv", "geometric:p=1/3", "--lambda", "1/2", "--nmax", "10"});
    CHECK(r["passed"] == true);
    CHECK(r["summary"]["fail"] == 0);
    std::set<std::string> ids;
    for (const auto &rec : r["records"]) {
        CHECK(rec["status"] == "pass");
        ids.insert(rec["identity"].get<std::string>());
    }
    CHECK(ids.count("schlomilch-s1") == 1);
    CHECK(ids.count("prob-s2/prob-s1:orthogonality-second-first") == 1);
    CHECK(ids.count("h-at-one") == 1);
}

TEST_CASE("verify over the built-in grid")
{
    const json r = run_json({"verify", "--all-builtin", "--nmax", "3", "--lambda", "1/2", "--lambda", "0"});
    std::set<std::tuple<std::string, std::string, std::string>> keys;
    std::set<std::string> rvs;
    for (const auto &rec : r["records"]) {
        const auto key = std::make_tuple(rec["identity"].get<std::string>(), rec["rv"].get<std::string>(),
                                         rec["lambda"].get<std::string>());
        CHECK(keys.insert(key).second);
        rvs.insert(rec["rv"].get<std::string>());
    }
    CHECK(rvs.size() == 11);  // ten distributions plus the rv-independent limit records
    CHECK(r["passed"] == true);
}

TEST_CASE("verify rejects a zero-mean variable")
{
    const Run r = run({"verify", "--rv", "custom:moments=0,1,0,3,0,15,0,105,0,945"});
    CHECK(r.code == exit_domain_error);
    CHECK(r.err.find("E[Y] = 0") != std::string::npos);
    CHECK(run({"verify"}).code == exit_parse_error);
    CHECK(run({"verify", "--rv", "uniform", "--all-builtin"}).code == exit_parse_error);
    CHECK(run({"verify", "--rv", "custom:moments=1,2", "--nmax", "4"}).code == exit_domain_error);
}

TEST_CASE("verify csv quotes fields")
{
    const Run r = run({"verify", "--rv", "binomial:m=3,p=1/2", "--lambda", "1", "--nmax", "2", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("identity,rv,lambda,nmax,status,checks,n,k,j,lhs,rhs\n", 0) == 0);
    CHECK(r.out.find("\"binomial:m=3,p=1/2\"") != std::string::npos);
}

TEST_CASE("monte carlo command")
{
    const json m = run_json(
        {"mc", "--rv", "poisson:alpha=2", "--lambda", "1/2", "--n", "3", "--j", "2", "--samples", "1000000", "--seed", "7"});
    CHECK(std::abs(std::stod(m["z"].get<std::string>())) <= 5);
    CHECK(m["exact"] == "88");
    CHECK(m["samples"] == 1000000);
    const json pm = run_json({"mc", "--rv", "pointmass:c=1", "--lambda", "1/3", "--n", "3", "--j", "2", "--samples", "1000"});
    CHECK(pm["z"] == "0");
    CHECK(pm["standard_error"] == "0");
    CHECK(run({"mc", "--rv", "custom:moments=1,2"}).code == exit_domain_error);
    CHECK(run({"mc", "--rv", "poisson:alpha=2", "--samples", "10"}).code == exit_parse_error);
    CHECK(run({"mc"}).code == exit_parse_error);
}

TEST_CASE("identical configuration gives identical bytes")
{
    const std::vector<std::string> mc{"mc", "--rv", "gamma:alpha=3/2,beta=2", "--lambda", "-1/3", "--n", "2", "--j", "3",
                                      "--samples", "20000", "--seed", "5"};
    CHECK(run(mc).out == run(mc).out);
    const std::vector<std::string> table{"table", "--family", "prob-g", "--rv", "normal:mu=1,sigma2=2", "--lambda",
                                         "1/2", "--nmax", "6"};
    CHECK(run(table).out == run(table).out);
}

TEST_CASE("malformed input")
{
    CHECK(run({}).code == exit_parse_error);
    CHECK(run({"table"}).code == exit_parse_error);
    CHECK(run({"table", "--family", "nope"}).code == exit_parse_error);
    CHECK(run({"table", "--family", "s1", "--lambda", "1/0"}).code == exit_parse_error);
    CHECK(run({"table", "--family", "s1", "--lambda", "0.5"}).code == exit_parse_error);
    CHECK(run({"table", "--family", "s1", "--bogus"}).code == exit_parse_error);
    CHECK(run({"table", "--family", "s1", "--format", "xml"}).code == exit_parse_error);
    CHECK(run({"table", "--family", "prob-s1"}).code == exit_parse_error);
    CHECK(run({"table", "--family", "s1", "--rv", "uniform"}).code == exit_parse_error);
    CHECK(run({"table", "--family", "prob-s1", "--rv", "poisson:beta=2"}).code == exit_parse_error);
    CHECK(run({"table", "--family", "prob-s1", "--rv", "poisson:alpha=-2"}).code == exit_domain_error);
    CHECK(run({"table", "--family", "s1", "--lambda", "1", "--lambda", "2"}).code == exit_parse_error);
    CHECK(run({"series", "--kind", "euler"}).code == exit_parse_error);
    CHECK(run({"series", "--kind", "cauchy", "--gamma", "1/2", "--rv", "poisson:alpha=2"}).code == exit_domain_error);
    CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("output file")
{
    const auto path = std::filesystem::temp_directory_path() / "probstir_cli_test.csv";
    const Run r = run({"table", "--family", "s2", "--nmax", "1", "--format", "csv", "--output", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "n,k,value\n0,0,1\n1,0,0\n1,1,1\n");
    std::filesystem::remove(path);
}
