// Drives the installed CLI binary: seed reproducibility, exit codes, and
// the documented workflow files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const fs::path& dir) {
    fs::path outfile = dir / "cmd.out";
    std::string cmd = "cd " + dir.string() + " && " + GCMCE_CLI_PATH + " " + args + " > " +
                      outfile.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream f(outfile);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "gcmce_cli_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("workflow: demo spec, keys, encrypt, decrypt, attacks") {
    TempDir tmp;
    auto demo = run("demo-spec --kind parity-gc --out demo.gcspec", tmp.path);
    REQUIRE(demo.exit_code == 0);
    CHECK(json::parse(demo.out).at("k") == 12);

    auto kg = run("keygen --spec demo.gcspec --t 1 --seed 11 --out-pub k.pub --out-priv k.priv",
                  tmp.path);
    REQUIRE(kg.exit_code == 0);
    CHECK(json::parse(kg.out).at("seed") == 11);

    auto enc = run("encrypt --pub k.pub --msg 9ab --seed 12 --out ct.txt", tmp.path);
    REQUIRE(enc.exit_code == 0);

    auto dec = run("decrypt --priv k.priv --ct ct.txt", tmp.path);
    REQUIRE(dec.exit_code == 0);
    CHECK(json::parse(dec.out).at("message_hex") == "9ab");

    auto isd = run("attack isd --pub k.pub --ct ct.txt --seed 13", tmp.path);
    REQUIRE(isd.exit_code == 0);
    CHECK(json::parse(isd.out).at("message_hex") == "9ab");

    auto s1 = run("attack step1 --pub k.pub --na 5 --nb 4 --out part.json", tmp.path);
    REQUIRE(s1.exit_code == 0);
    CHECK(json::parse(s1.out).at("blocks").size() == 5);

    auto ns = run("attack nonstruct --pub k.pub --ct ct.txt --na 5 --nb 4 --seed 14", tmp.path);
    REQUIRE(ns.exit_code == 0);
    CHECK(json::parse(ns.out).at("message_hex") == "9ab");

    auto ck = run("spec-check --spec demo.gcspec", tmp.path);
    REQUIRE(ck.exit_code == 0);
    json j = json::parse(ck.out);
    CHECK(j.at("xi_empty_guaranteed") == false);
    CHECK(j.at("occ_equivalent") == "not-applicable");

    // a spec with a repetition outer code gets the opposite advisory: the
    // usable dual set is provably empty and block recovery is not guaranteed
    run("demo-spec --kind rm8 --out rm.gcspec", tmp.path);
    auto ck2 = run("spec-check --spec rm.gcspec", tmp.path);
    REQUIRE(ck2.exit_code == 0);
    json j2 = json::parse(ck2.out);
    CHECK(j2.at("xi_empty_guaranteed") == true);
    CHECK(j2.at("advisory").get<std::string>().find("not guaranteed") != std::string::npos);
}

TEST_CASE("reruns with the same seed are byte-identical") {
    TempDir tmp;
    auto a = run("workfactor --preset appendix-b --trials 200 --codes 4 --seed 77", tmp.path);
    auto b = run("workfactor --preset appendix-b --trials 200 --codes 4 --seed 77", tmp.path);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    run("demo-spec --kind rm8 --out rm.gcspec", tmp.path);
    auto k1 = run("keygen --spec rm.gcspec --t 1 --seed 5 --out-pub a.pub --out-priv a.priv",
                  tmp.path);
    auto k2 = run("keygen --spec rm.gcspec --t 1 --seed 5 --out-pub b.pub --out-priv b.priv",
                  tmp.path);
    REQUIRE(k1.exit_code == 0);
    REQUIRE(k2.exit_code == 0);
    std::ifstream fa(tmp.path / "a.pub"), fb(tmp.path / "b.pub");
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());

    // a different seed changes the public key
    run("keygen --spec rm.gcspec --t 1 --seed 6 --out-pub c.pub --out-priv c.priv", tmp.path);
    std::ifstream fc(tmp.path / "c.pub");
    std::stringstream sc;
    sc << fc.rdbuf();
    CHECK(sa.str() != sc.str());
}

TEST_CASE("simulate subcommand with workers") {
    TempDir tmp;
    auto sim = run("simulate --nb 16 --kb 7 --d 5 --error-num 212 --error-den 2048 "
                   "--trials 500 --codes 4 --seed 3 --workers 2",
                   tmp.path);
    REQUIRE(sim.exit_code == 0);
    json j = json::parse(sim.out);
    CHECK(j.at("trials") == 2000);
    double sum = j.at("p_c").get<double>() + j.at("p_w").get<double>() +
                 j.at("p_f").get<double>();
    CHECK(std::abs(sum - 1.0) < 1e-12);

    // worker count does not change the result
    auto sim1 = run("simulate --nb 16 --kb 7 --d 5 --error-num 212 --error-den 2048 "
                    "--trials 500 --codes 4 --seed 3 --workers 1",
                    tmp.path);
    CHECK(json::parse(sim1.out).at("p_c") == j.at("p_c"));
}

TEST_CASE("exit codes: usage errors are 2, domain errors are 1") {
    TempDir tmp;
    CHECK(run("no-such-command", tmp.path).exit_code == 2);
    CHECK(run("keygen", tmp.path).exit_code == 2);  // missing required options

    auto missing = run("decrypt --priv nothere.priv --ct nothere.ct", tmp.path);
    CHECK(missing.exit_code == 1);
    CHECK(json::parse(missing.out).contains("error"));

    run("demo-spec --kind rm8 --out rm.gcspec", tmp.path);
    auto toobig = run("keygen --spec rm.gcspec --t 9 --out-pub x --out-priv y", tmp.path);
    CHECK(toobig.exit_code == 1);
    CHECK(json::parse(toobig.out).contains("error"));
}
