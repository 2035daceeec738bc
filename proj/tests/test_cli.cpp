#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <regex>
#include <string>

#include "json.hpp"

#ifndef FOCKLEDGER_CLI_PATH
#error "FOCKLEDGER_CLI_PATH must point at the fockledger binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FOCKLEDGER_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
        out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string strip_runtime(std::string text) {
    return std::regex_replace(text, std::regex("\"runtime_ms\":\\s*\\d+"), "\"runtime_ms\": X");
}

} // namespace

TEST_CASE("state reports the negative binomial statistics") {
    const RunResult r = run_cli("state negbin:xi=0.5,mu=2");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("mean").get<double>() == doctest::Approx(2.0));
    CHECK(j.at("mandel_q").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("state writes the distribution CSV") {
    const std::string path = "/tmp/fockledger_test_dist.csv";
    const RunResult r = run_cli("state fock:n=3 --out " + path);
    CHECK(r.exit_code == 0);
    FILE* f = fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string content;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), f)) content.append(buf.data(), n);
    fclose(f);
    std::remove(path.c_str());
    CHECK(content.rfind("n,p_n\n", 0) == 0);
    CHECK(content.find("3,1") != std::string::npos);
}

TEST_CASE("state rejects out-of-domain parameters with exit 2") {
    const RunResult r = run_cli("state log0:nbar=2.0");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("e-1") != std::string::npos);
}

TEST_CASE("state rejects unknown families with exit 2") {
    CHECK(run_cli("state nosuch:x=1").exit_code == 2);
}

TEST_CASE("apply reports per-step statistics") {
    const RunResult r = run_cli("apply negbin:xi=0.5,mu=2 sub,sub");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0].at("mean").get<double>() == doctest::Approx(3.0));
    CHECK(j[1].at("mean").get<double>() == doctest::Approx(4.0));
    CHECK(j[0].at("mandel_q").get<double>() == doctest::Approx(1.0));
    CHECK(j[1].at("mandel_q").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("apply exits 3 at the failing step") {
    const RunResult r = run_cli("apply fock:n=1 sub,sub");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("step 2") != std::string::npos);
}

TEST_CASE("apply mean after subtracting the vacuum+coherent superposition") {
    const RunResult r = run_cli("apply cohvac:alpha=3,eta=0.1 sub");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j[0].at("mean").get<double>() == doctest::Approx(9.0).epsilon(1e-9));
}

TEST_CASE("verify a single claim group") {
    const RunResult r = run_cli("verify --filter eq7 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("eq7.photon_excess,1,true") != std::string::npos);
}

TEST_CASE("verify with an unmatched filter exits 2") {
    CHECK(run_cli("verify --filter doesnotexist").exit_code == 2);
}

TEST_CASE("verify reports are deterministic apart from runtime_ms") {
    const RunResult a = run_cli("verify --filter eq13 --seed 99 --format json");
    const RunResult b = run_cli("verify --filter eq13 --seed 99 --format json");
    CHECK(a.exit_code == 0);
    CHECK(strip_runtime(a.output) == strip_runtime(b.output));
    CHECK(a.output.find("\"seed\": 99") != std::string::npos);
}

TEST_CASE("verify markdown format renders") {
    const RunResult r = run_cli("verify --filter coshfam --format md");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("| `coshfam.negativity_p1` |") != std::string::npos);
}

TEST_CASE("FOCKLEDGER_MAX_CUTOFF caps adaptive growth") {
    const RunResult r = run_cli("state phase:z=0.97"); // needs cutoff ~1000 at 1e-12
    CHECK(r.exit_code == 0);
    const std::string cmd = "FOCKLEDGER_MAX_CUTOFF=50 " + std::string(FOCKLEDGER_CLI_PATH) +
                            " state phase:z=0.97 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) != 0);
    CHECK(out.find("tail") != std::string::npos);
}
