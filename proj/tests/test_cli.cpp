#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "ldwb");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = ldwb::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("ldwb_cli_" + name);
    std::ofstream(path, std::ios::binary | std::ios::trunc) << content;
    return path;
}

std::vector<nlohmann::json> json_lines(const std::string& text)
{
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(nlohmann::json::parse(line));
    }
    return out;
}

}  // namespace

TEST_CASE("term commands")
{
    const auto parsed = run({"term", "parse", "j*k*j"});
    CHECK(parsed.code == 0);
    CHECK(parsed.out == "((j*k)*j)\n");

    const auto expanded = run({"term", "expand", "x1*(x1*x1)"});
    CHECK(expanded.code == 0);
    CHECK(expanded.out == "((x1*x1)*(x1*x1))\n");

    const auto bad = run({"term", "parse", "j*("});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("position 3") != std::string::npos);
    CHECK(bad.err.find("     ^") != std::string::npos);

    const auto walk1 = run({"term", "walk", "x1*(x2*(x3*x3))", "--steps", "2", "--seed", "9"});
    const auto walk2 = run({"term", "walk", "x1*(x2*(x3*x3))", "--steps", "2", "--seed", "9"});
    CHECK(walk1.code == 0);
    CHECK(walk1.out == walk2.out);

    CHECK(run({"term", "parse", "j*q", "--sig", "jk"}).code == 2);
    CHECK(run({"term", "parse", "x*x*x", "--max-term-size", "2"}).code == 2);
}

TEST_CASE("eq command")
{
    const auto equal = run({"eq", "x1*(x1*x1)", "(x1*x1)*(x1*x1)"});
    CHECK(equal.code == 0);
    CHECK(equal.out.rfind("Equal\n", 0) == 0);

    const auto distinct = run({"eq", "x1", "x1*x1"});
    CHECK(distinct.code == 1);
    CHECK(distinct.out.rfind("Distinct\n", 0) == 0);

    const auto unknown = run({"eq", "x1*(x2*(x3*(x4*x5)))",
                              "((((x1*x2)*x1)*((x1*x2)*x3))*(((x1*x2)*x1)*((x1*x2)*(x4*x5))))",
                              "--max-frontier", "10"});
    CHECK(unknown.code == 3);
    CHECK(unknown.out.rfind("Unknown\n", 0) == 0);

    const auto as_json = run({"eq", "j*(k*k)", "(j*k)*(j*k)", "--format", "json"});
    CHECK(as_json.code == 0);
    const auto doc = nlohmann::json::parse(as_json.out);
    CHECK(doc["verdict"] == "Equal");
    CHECK(doc["certificate"]["steps"].size() == 1);

    CHECK(run({"eq", "x1"}).code == 2);
    CHECK(run({"eq", "x1", "x1", "--budget-frontier", "0"}).code == 2);
    CHECK(run({"eq", "x1", "x1", "--format", "xml"}).code == 2);
}

TEST_CASE("laver commands")
{
    const auto period = run({"laver", "period", "-n", "2", "--row", "1"});
    CHECK(period.code == 0);
    CHECK(period.out == "2\n");

    const auto verify = run({"laver", "verify", "-n", "4"});
    CHECK(verify.code == 0);
    CHECK(verify.out == "OK\n");

    CHECK(run({"laver", "gen", "-n", "20"}).code == 2);
    CHECK(run({"laver", "period", "-n", "2", "--row", "9"}).code == 2);

    const auto path = std::filesystem::temp_directory_path() / "ldwb_cli_a3.lavr";
    CHECK(run({"laver", "gen", "-n", "3", "--out", path.string()}).code == 0);
    const auto loaded = run({"laver", "export", "--file", path.string()});
    CHECK(loaded.code == 0);
    CHECK(loaded.out == run({"laver", "export", "-n", "3"}).out);
    CHECK(run({"laver", "verify", "--file", path.string()}).out == "OK\n");
    std::filesystem::remove(path);

    const auto corrupt = write_temp("bad.lavr", "LAVR");
    CHECK(run({"laver", "verify", "--file", corrupt.string()}).code == 2);
    std::filesystem::remove(corrupt);
}

TEST_CASE("laver size cap from the environment")
{
    ::setenv("LDWB_MAX_LAVER_N", "3", 1);
    CHECK(run({"laver", "verify", "-n", "4"}).code == 2);
    ::setenv("LDWB_MAX_LAVER_N", "bogus", 1);
    CHECK(run({"laver", "verify", "-n", "1"}).code == 2);
    ::unsetenv("LDWB_MAX_LAVER_N");
    CHECK(run({"laver", "verify", "-n", "4"}).code == 0);
}

TEST_CASE("classify command")
{
    const auto pairs = write_temp("pairs.jsonl",
                                  "{\"lhs\":\"j*k\",\"rhs\":\"k*j\"}\n"
                                  "{\"lhs\":\"j*k\",\"rhs\":\"j\"}\n"
                                  "\n"
                                  "{\"lhs\":\"j*k\",\"rhs\":\"k*k\"}\n");
    const auto first = run({"classify", pairs.string(), "--format", "json"});
    CHECK(first.code == 0);
    const auto lines = json_lines(first.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0]["verdict"] == "Distinct");
    CHECK(lines[0]["reason"]["kind"] == "ColorMismatch");
    CHECK(lines[1]["verdict"] == "Distinct");
    CHECK(lines[1]["reason"]["kind"] == "RhoRefutation");
    CHECK(lines[2]["verdict"] == "Unknown");
    CHECK(run({"classify", pairs.string(), "--format", "json"}).out == first.out);

    const auto empty = write_temp("empty.jsonl", "");
    const auto none = run({"classify", empty.string()});
    CHECK(none.code == 0);
    CHECK(none.out.empty());

    const auto unknown = write_temp("unknown.jsonl", "{\"lhs\":\"j*q\",\"rhs\":\"j\"}\n");
    const auto bad = run({"classify", unknown.string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("unknown generator 'q'") != std::string::npos);

    const auto malformed = write_temp("malformed.jsonl", "[1,2]\n");
    CHECK(run({"classify", malformed.string()}).code == 2);
    CHECK(run({"classify", "/nonexistent/pairs.jsonl"}).code == 2);

    const auto sig = write_temp("sig.json",
                                R"({"generators":[{"name":"a","color":"proper"},)"
                                R"({"name":"b","color":"nonproper"}]})");
    const auto ab = write_temp("ab.jsonl", "{\"lhs\":\"a*b\",\"rhs\":\"b*a\"}\n");
    const auto custom = run({"classify", ab.string(), "--sig", sig.string(), "--format", "json"});
    CHECK(custom.code == 0);
    CHECK(json_lines(custom.out).at(0)["reason"]["kind"] == "ColorMismatch");

    for (const auto& p : {pairs, empty, unknown, malformed, sig, ab}) {
        std::filesystem::remove(p);
    }
}

TEST_CASE("criteria commands")
{
    const auto found = run({"criteria", "cycles", "--fixture", "idempotent", "--format", "json"});
    CHECK(found.code == 1);
    const auto doc = nlohmann::json::parse(found.out);
    CHECK(doc["verdict"] == "Found");
    CHECK(doc["witness"].size() == 1);
    CHECK(doc["seed"] == 0);
    CHECK(doc.contains("criterion"));

    const auto bounded = run({"criteria", "cycles", "--sig", "mono", "--max-seed", "2",
                              "--max-divisor-size", "3", "--max-chain", "2"});
    CHECK(bounded.code == 3);
    CHECK(bounded.out.rfind("NotFoundWithinBounds\n", 0) == 0);

    const auto qf = run({"criteria", "quasifree", "--sig", "jk"});
    CHECK(qf.code == 3);
    CHECK(qf.out.rfind("NoneWithinBounds\n", 0) == 0);

    const auto violation = run({"criteria", "quasifree", "--sig", "jk", "--fixture", "identified"});
    CHECK(violation.code == 1);
    CHECK(violation.out.rfind("Violation\n", 0) == 0);

    CHECK(run({"criteria", "quasifree", "--sig", "mono"}).code == 2);
    CHECK(run({"criteria", "cycles", "--fixture", "nope"}).code == 2);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"term"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--help"}).out.find("Usage") != std::string::npos);
}

TEST_CASE("output file")
{
    const auto path = std::filesystem::temp_directory_path() / "ldwb_cli_out.txt";
    const auto r = run({"term", "parse", "a*b", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "(a*b)");
    std::filesystem::remove(path);
}
