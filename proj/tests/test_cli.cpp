#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "replikit/cli.hpp"
#include "replikit/report.hpp"

using namespace replikit;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "replikit");
    std::vector<char*> argv;
    for (auto& a : args)
        argv.push_back(a.data());
    std::ostringstream out, err;
    int code = cli_run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(REPLIKIT_TEST_DATA) + "/" + name; }

long count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

} // namespace

TEST_CASE("cosets")
{
    Run r = run({"cosets", "6", "--kind", "M1"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 9); // 8 rows and a count
    Run j = run({"cosets", "6", "--kind", "S2", "--json"});
    CHECK(j.code == 0);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["reps"].size() == 4);
    CHECK(run({"cosets", "5", "--kind", "M1"}).code == 2);
    CHECK(run({"cosets", "6", "--kind", "X"}).code == 2);
}

TEST_CASE("expand")
{
    Run r = run({"expand", "2A", "--prec", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("4372") != std::string::npos);
    Run j = run({"expand", "1A", "--prec", "3", "--json"});
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["coeffs"]["1"] == "196884/1");
    CHECK(run({"expand", "7Z"}).code == 2);
}

TEST_CASE("precision from the environment")
{
    setenv("REPLIKIT_PREC", "3", 1);
    Run j = run({"expand", "2A", "--json"});
    CHECK(nlohmann::json::parse(j.out)["prec"] == 3);
    setenv("REPLIKIT_PREC", "abc", 1);
    CHECK(run({"expand", "2A"}).code == 2);
    unsetenv("REPLIKIT_PREC");
    Run d = run({"expand", "2A", "--json"});
    CHECK(nlohmann::json::parse(d.out)["prec"] == 60);
}

TEST_CASE("faber")
{
    Run r = run({"faber", "2A", "2", "--check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("t^2 - 8744") != std::string::npos);
}

TEST_CASE("check")
{
    CHECK(run({"check", "--family", data("1a.json"), "--nmax", "6", "--prec", "30"}).code == 0);
    CHECK(run({"check", "--family", data("2a_self.json"), "--nmax", "4", "--prec", "20", "--complete", "--depth",
               "2"})
              .code == 0);
    CHECK(run({"check", "--family", data("4h.json"), "--nmax", "4", "--prec", "20", "--complete", "--depth", "3"})
              .code == 0);
    CHECK(run({"check", "--family", "class:2c", "--nmax", "4", "--prec", "20"}).code == 0);
    Run bad = run({"check", "--family", data("bad.json"), "--nmax", "4", "--prec", "20"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("does not resolve") != std::string::npos);
    CHECK(run({"check", "--family", data("unknown_key.json")}).code == 2);
    CHECK(run({"check", "--family", data("missing.json")}).code == 2);
    CHECK(run({"check", "--family", "self:2B", "--nmax", "4", "--prec", "20"}).code == 1);
    Run table = run({"check", "--class-table"});
    CHECK(table.code == 0);
    CHECK(count_lines(table.out) == 247);
}

TEST_CASE("verify")
{
    CHECK(run({"verify", "op-identity", "--lhs", "T(2^3)*T(2)", "--rhs",
               "T(2^4)+2*T(2^3)*Psi(sqrt2)+2*T(2^2)*Psi(2)"})
              .code == 0);
    CHECK(run({"verify", "op-identity", "--lhs", "T(2)*T(2)", "--rhs", "T(4)"}).code == 1);
    CHECK(run({"verify", "op-identity", "--lhs", "T(2", "--rhs", "T(4)"}).code == 2);
    CHECK(run({"verify", "op-identity", "--lhs", "T(3)*T(3)", "--rhs", "T(9)+3*Psi(3)", "--family", "1A",
               "--terms", "10"})
              .code == 0);
    CHECK(run({"verify", "hecke", "--m", "2,3,12", "--label", "2B", "--terms", "20"}).code == 0);
    CHECK(run({"verify", "decomp", "--a", "1A", "--b", "2A", "--c", "2A", "--terms", "30"}).code == 0);
    CHECK(run({"verify", "sigma2", "--family", "self:2A", "--terms", "20"}).code == 0);
    CHECK(run({"verify", "powersum", "--family", "1A", "--kmax", "2", "--terms", "20"}).code == 0);
    CHECK(run({"verify"}).code == 2);
}

TEST_CASE("extend")
{
    Run r = run({"extend", "--family", data("inline_2a.json"), "--to", "30", "--json"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["1"][5] == "431529984/1");
    Run o = run({"extend", "--family", data("1a.json"), "--to", "40", "--oracle", "--json"});
    CHECK(o.code == 0);
    Report rep = report_from_json(nlohmann::json::parse(o.out));
    CHECK(rep.passed());
}

TEST_CASE("suite subset")
{
    Run r = run({"suite", "--only", "2,10"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 2);
    CHECK(r.out.rfind("[PASS]", 0) == 0);
    CHECK(run({"suite", "--only", "12"}).code == 2);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"cosets"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
