#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = TRA_CLI_PATH;
const std::string kConfigDir = TRA_CONFIG_DIR;

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("tra_test_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("oscillator spectrum run produces the analytic levels") {
    TempDir tmp("osc");
    int rc = run("spectrum --config " + kConfigDir + "/oscillator.json --out " + tmp.path.string());
    CHECK(rc == 0);
    json j = json::parse(slurp(tmp.path / "oscillator_spectrum.json"));
    REQUIRE(j.contains("eigenvalues"));
    REQUIRE(j.contains("bound_flags"));
    REQUIRE(j.contains("sweep"));
    REQUIRE(j.contains("mode"));
    REQUIRE(j.contains("N"));
    auto eig = j["eigenvalues"].get<std::vector<double>>();
    REQUIRE(eig.size() == 5);
    // eps = 2E/lambda^2 with lambda = 1.2
    double l2 = 1.2 * 1.2;
    for (int m = 0; m < 5; ++m)
        CHECK(std::abs(0.5 * l2 * eig[m] - (2.0 * m + 1.5)) < 1e-8);
    // embedded config and version
    CHECK(j["config"]["version"] == "0.1.0");
}

TEST_CASE("table-3 style comparison block is emitted") {
    TempDir tmp("t3");
    int rc = run("spectrum --config " + kConfigDir + "/shortrange_reference.json --out " +
                 tmp.path.string());
    CHECK(rc == 0);
    json j = json::parse(slurp(tmp.path / "shortrange_reference_spectrum.json"));
    REQUIRE(j.contains("comparison"));
    auto hyp = j["comparison"]["hypotheses"];
    REQUIRE(hyp.size() == 3);
    CHECK(j["comparison"].contains("sweep_stability"));
    CHECK(j["comparison"].contains("best_hypothesis"));
    CHECK(j["eigenvalues"].size() == 20);
}

TEST_CASE("wavefunction run emits CSV and companion JSON") {
    TempDir tmp("wf");
    int rc = run("wavefunction --config " + kConfigDir + "/oscillator.json --state 1 --out " +
                 tmp.path.string());
    CHECK(rc == 0);
    std::string csv = slurp(tmp.path / "oscillator_state1.csv");
    CHECK(csv.find("x,psi\n") != std::string::npos);
    CHECK(csv.find("# version: 0.1.0") != std::string::npos);
    json j = json::parse(slurp(tmp.path / "oscillator_state1.json"));
    CHECK(j["state"] == 1);
    CHECK(j["coefficients"].is_array());

    // invalid state index
    CHECK(run("wavefunction --config " + kConfigDir + "/oscillator.json --state 99 --out " +
              tmp.path.string()) == 1);
}

TEST_CASE("potential sweep reproduces the curve family") {
    TempDir tmp("pot");
    int rc = run("potential --config " + kConfigDir + "/sweep_ur_deep.json --out " + tmp.path.string());
    CHECK(rc == 0);
    int count = 0;
    for (const auto& e : fs::directory_iterator(tmp.path))
        if (e.path().extension() == ".csv") ++count;
    CHECK(count == 6);
    std::string csv = slurp(tmp.path / "sweep_ur_deep_ur1.csv");
    CHECK(csv.find("x,V\n") != std::string::npos);
}

TEST_CASE("malformed configs exit 1 without output") {
    TempDir tmp("bad");
    fs::path bad = tmp.path / "bad.json";
    std::ofstream(bad) << "{ \"problem\": \"oscillator\", \"unknown_key\": 1 }";
    fs::path outdir = tmp.path / "out";
    CHECK(run("spectrum --config " + bad.string() + " --out " + outdir.string()) == 1);
    CHECK(!fs::exists(outdir / "run_spectrum.json"));

    std::ofstream(tmp.path / "junk.json") << "not json";
    CHECK(run("spectrum --config " + (tmp.path / "junk.json").string()) == 1);
}

TEST_CASE("verify subcommand") {
    TempDir tmp("ver");
    CHECK(run("verify --suite consistency-reduction --out " + tmp.path.string()) == 0);
    json j = json::parse(slurp(tmp.path / "run_verify_consistency-reduction.json"));
    CHECK(j["pass"] == true);
    REQUIRE(!j["checks"].empty());
    CHECK(run("verify --suite no-such-suite --out " + tmp.path.string()) == 1);
}

TEST_CASE("identical configs give byte-identical outputs") {
    TempDir a("det_a"), b("det_b");
    REQUIRE(run("spectrum --config " + kConfigDir + "/oscillator.json --out " + a.path.string()) ==
            0);
    REQUIRE(run("spectrum --config " + kConfigDir + "/oscillator.json --out " + b.path.string()) ==
            0);
    CHECK(slurp(a.path / "oscillator_spectrum.json") == slurp(b.path / "oscillator_spectrum.json"));
}

TEST_CASE("flag overrides take precedence over config keys") {
    TempDir tmp("ovr");
    int rc = run("spectrum --config " + kConfigDir + "/oscillator.json --basis-size 12 --out " +
                 tmp.path.string());
    CHECK(rc == 0);
    json j = json::parse(slurp(tmp.path / "oscillator_spectrum.json"));
    CHECK(j["N"] == 12);

    rc = run("spectrum --config " + kConfigDir + "/shortrange_bound.json --mode fixed-basis --out " +
             tmp.path.string());
    CHECK(rc == 0);
    json j2 = json::parse(slurp(tmp.path / "shortrange_bound_spectrum.json"));
    CHECK(j2["mode"] == "fixed-basis");
    CHECK(run("spectrum --config " + kConfigDir + "/oscillator.json --mode bogus") == 1);
}
