#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string("'") + SPLITSCAN_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path temp_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("splitscan-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

} // namespace

TEST_CASE("cli: curve report round-trips through JSON") {
    auto r = run_cli("--no-cache zeta --poly 0,-1,0,1 --p 3");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["p"] == 3);
    CHECK(j["L"]["q"] == "3");
    CHECK(j["L"]["g"] == 1);
    CHECK(j["L"]["coeffs"] == json::array({"1", "0", "3"}));
    REQUIRE(j["counts"].size() == 2);
    CHECK(j["counts"][0]["d"] == 1);
    CHECK(j["counts"][0]["points"] == "4");
    CHECK(j["counts"][0]["source"] == "measured");
    CHECK(j["counts"][1]["points"] == "16");
    CHECK(j["counts"][1]["source"] == "predicted");
    CHECK(j["weil_check"] == true);
}

TEST_CASE("cli: exit codes distinguish failure classes") {
    CHECK(run_cli("--no-cache scan --f -1,0,0,0,1 --p 2").exit_code == 2);    // precondition
    CHECK(run_cli("--no-cache zeta --poly -1,0,1 --p 5").exit_code == 2);     // even degree
    CHECK(run_cli("--no-cache zeta --poly 0,-1,0,1").exit_code == 2);         // missing flag
    CHECK(run_cli("--no-cache --bogus-flag").exit_code == 2);                 // parse error
    CHECK(run_cli("--no-cache").exit_code == 2);                              // no subcommand
    CHECK(run_cli("--no-cache monodromy verify-tr --ell 3 --g 3").exit_code == 3); // cap
    CHECK(run_cli("--no-cache theory-bound --g 2 --height 2").exit_code == 2); // B < 3
}

TEST_CASE("cli: csv output for the tabular commands only") {
    auto r = run_cli("--no-cache --format csv scan --f -1,0,0,0,1 --p 13");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "p,good,bad,defect,density\n13,9,4,9,1.00000000\n");

    auto sieve = run_cli("--no-cache --format csv sieve-bound --f -1,0,1 --height 2 --prime-limit 8");
    REQUIRE(sieve.exit_code == 0);
    CHECK(sieve.out.rfind("p,roots,omega,nu,nu_half_ratio\n", 0) == 0);
    CHECK(sieve.out.find("\n3,2,0,3,2.0\n") != std::string::npos);

    CHECK(run_cli("--no-cache --format csv zeta --poly 0,-1,0,1 --p 3").exit_code == 2);
    CHECK(run_cli("--no-cache --format yaml zeta --poly 0,-1,0,1 --p 3").exit_code == 2);
}

TEST_CASE("cli: scan JSON carries the aggregate and per-fiber records") {
    auto r = run_cli("--no-cache scan --f -1,0,0,0,1 --p 7");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["good"] == 5);
    CHECK(j["bad"] == 2);
    CHECK(j["defect"] == 3);
    CHECK(j["omega"] == json::array({0, 2, 5}));
    CHECK(j["csv"] == "7,5,2,3,0.60000000");
    REQUIRE(j["fibers"].size() == 7);
    CHECK(j["fibers"][1]["bad"] == true);
    CHECK(j["fibers"][3]["report"]["verdict"] == "SimpleCandidate");
}

TEST_CASE("cli: symplectic calculators") {
    auto thr = run_cli("--no-cache monodromy threshold --ell 3 --g 2");
    REQUIRE(thr.exit_code == 0);
    json j = json::parse(thr.out);
    CHECK(j["op"] == "threshold");
    CHECK(j["inputs"]["ell"] == 3);
    CHECK(j["value"] == "5");

    auto mink = run_cli("--no-cache monodromy minkowski --g 1");
    REQUIRE(mink.exit_code == 0);
    CHECK(json::parse(mink.out)["value"] == "48");

    auto gb = run_cli("--no-cache monodromy genus-bound --ell 3 --g 1 --m 5");
    REQUIRE(gb.exit_code == 0);
    json jg = json::parse(gb.out);
    CHECK(jg["value"]["display"] == "5/4");
    CHECK(jg["condition_flags"]["positivity"] == true);

    auto bh = run_cli("--no-cache monodromy bh --ell 3 --g 1 --lines '1,0;0,1'");
    REQUIRE(bh.exit_code == 0);
    json jb = json::parse(bh.out);
    CHECK(jb["value"] == true);
    CHECK(jb["condition_flags"]["line_count"] == 2);
    CHECK(jb["condition_flags"]["transvection_threshold"] == "3");

    auto bh_bad = run_cli("--no-cache monodromy bh --ell 3 --g 2 --lines '1,0,0,0;0,1,0,0'");
    REQUIRE(bh_bad.exit_code == 0);
    CHECK(json::parse(bh_bad.out)["value"] == false);

    auto deg = run_cli("--no-cache monodromy degeneration --ell 5 --g 2");
    REQUIRE(deg.exit_code == 0);
    json jd = json::parse(deg.out);
    CHECK(jd["value"]["degeneration_threshold"] == "4");
    CHECK(jd["value"]["group_order"] == "9360000");
    CHECK(jd["value"]["conjugacy_ratio"]["display"] == "31/156"); // (5^3-1)/(5^4-1) reduced
    CHECK(jd["value"]["transvection_threshold"] == "125");

    auto vtr = run_cli("--no-cache monodromy verify-tr --ell 3 --g 1");
    REQUIRE(vtr.exit_code == 0);
    json jv = json::parse(vtr.out);
    CHECK(jv["value"]["max_proper_transvections"] == 2);
    CHECK(jv["value"]["verified"] == true);
    CHECK(jv["condition_flags"]["verified"] == true);
}

TEST_CASE("cli: rational search reports certified and surviving parameters") {
    auto r = run_cli("--no-cache search --f -1,0,1 --height 2 --primes 2");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["height_bound"] == 2);
    CHECK(j["certified"] == 5);
    CHECK(j["surviving"] == 0);
    CHECK(j["excluded"] == json::array({"-1", "1"}));
    CHECK(j["surviving_params"].empty());
    REQUIRE(j["candidates"].size() == 5);
    CHECK(j["candidates"][0]["outcome"] == "CertifiedSimple");
}

TEST_CASE("cli: theory-bound wraps the closed forms") {
    auto r = run_cli("--no-cache theory-bound --g 2 --height 10");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["gamma"] == 24);
    CHECK(j["report"]["label"] == "up to an absolute constant");
    CHECK(j["report"]["theorem_form"].get<double>() > 0.0);
}

TEST_CASE("cli: cache replays byte-identically and verifies") {
    fs::path cache = temp_dir() / "replay.jsonl";
    fs::remove(cache);
    std::string base = "--cache '" + cache.string() + "' ";

    auto first = run_cli(base + "scan --f -1,0,0,0,1 --p 7");
    REQUIRE(first.exit_code == 0);
    CHECK(fs::exists(cache));
    auto second = run_cli(base + "scan --f -1,0,0,0,1 --p 7");
    REQUIRE(second.exit_code == 0);
    CHECK(first.out == second.out);

    auto z = run_cli(base + "zeta --poly 0,-1,0,1 --p 3");
    REQUIRE(z.exit_code == 0);

    auto verify = run_cli(base + "--verify-cache");
    REQUIRE(verify.exit_code == 0);
    json j = json::parse(verify.out);
    CHECK(j["records"] == 2);
    CHECK(j["checked"] == 2);
    CHECK(j["matched"] == 2);
    CHECK(j["mismatched_keys"].empty());
    CHECK(j["unverifiable_keys"].empty());
}

TEST_CASE("cli: cache ignores worker count and --no-cache leaves no file") {
    fs::path cache = temp_dir() / "jobs.jsonl";
    fs::remove(cache);
    std::string base = "--cache '" + cache.string() + "' ";

    // Store with 4 workers, verify replays with 1: payloads must agree.
    auto j4 = run_cli(base + "--jobs 4 scan --f -1,0,0,0,1 --p 13");
    REQUIRE(j4.exit_code == 0);
    auto verify = run_cli(base + "--verify-cache");
    REQUIRE(verify.exit_code == 0);
    json jv = json::parse(verify.out);
    CHECK(jv["checked"] == 1);
    CHECK(jv["matched"] == 1);

    // Same command without the cache, single worker: identical bytes.
    auto j1 = run_cli("--no-cache --jobs 1 scan --f -1,0,0,0,1 --p 13");
    REQUIRE(j1.exit_code == 0);
    auto j4n = run_cli("--no-cache --jobs 4 scan --f -1,0,0,0,1 --p 13");
    REQUIRE(j4n.exit_code == 0);
    CHECK(j1.out == j4n.out);

    fs::path ghost = temp_dir() / "ghost.jsonl";
    fs::remove(ghost);
    auto no_cache = run_cli("--no-cache --cache '" + ghost.string() + "' zeta --poly 0,-1,0,1 --p 3");
    REQUIRE(no_cache.exit_code == 0);
    CHECK_FALSE(fs::exists(ghost));
}
