#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

// End-to-end checks of the command-line tool. The binary path comes from the
// NLAC_CLI environment variable (set by ctest); tests are skipped when absent.

namespace {

const char* cli_path() { return std::getenv("NLAC_CLI"); }

int run(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("cli: sobolev-check on the bundled fixture passes with gagliardo near 16") {
    if (!cli_path()) return;
    REQUIRE(run("sobolev-check --input fixtures/chi_unit_interval.json --out /tmp/nlac_cli_sob") == 0);
    const auto j = read_json("/tmp/nlac_cli_sob/summary.json");
    CHECK(j.at("pass").get<bool>());
    CHECK(std::fabs(j.at("gagliardo").get<double>() - 16.0) < 0.16);
    CHECK(j.contains("config_hash"));
    CHECK(j.contains("error_model"));
}

TEST_CASE("cli: missing config file exits with usage code") {
    if (!cli_path()) return;
    CHECK(run("minimize --config /no/such/config.json") == 1);
}

TEST_CASE("cli: unknown config keys are rejected") {
    if (!cli_path()) return;
    const std::string path = "/tmp/nlac_cli_bad.json";
    std::ofstream(path) << R"({"model": {"n": 1, "s": 0.25, "bogus": 1}})";
    CHECK(run("minimize --config " + path) == 1);
}

TEST_CASE("cli: the density gate rejects s >= 1/2") {
    if (!cli_path()) return;
    CHECK(run("density --n 2 --s 0.6 --out /tmp/nlac_cli_gate") == 1);
}

TEST_CASE("cli: levelset emits the profile table") {
    if (!cli_path()) return;
    REQUIRE(run("levelset --input fixtures/chi_unit_interval.json --out /tmp/nlac_cli_lvl") == 0);
    const auto j = read_json("/tmp/nlac_cli_lvl/summary.json");
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("support_measure").get<double>() == doctest::Approx(1.0));
    std::ifstream csv("/tmp/nlac_cli_lvl/profile.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "k,a_k,d_k");
}

TEST_CASE("cli: grow-constant reports the quartic ladder value") {
    if (!cli_path()) return;
    REQUIRE(run("grow-constant --out /tmp/nlac_cli_grow") == 0);
    const auto j = read_json("/tmp/nlac_cli_grow/summary.json");
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("c_grow").get<double>() == doctest::Approx(0.5));
    CHECK(j.at("wcond").at("pass").get<bool>());
}

TEST_CASE("cli: recursion subcommand runs the default power-law fixture") {
    if (!cli_path()) return;
    REQUIRE(run("recursion --out /tmp/nlac_cli_rec") == 0);
    const auto j = read_json("/tmp/nlac_cli_rec/summary.json");
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("hypothesis").at("pass").get<bool>());
    CHECK(std::fabs(j.at("fitted_exponent").get<double>() -
                    j.at("target_exponent").get<double>()) < 0.05);
}

TEST_CASE("cli: identical config and seed give byte-identical outputs across thread counts") {
    if (!cli_path()) return;
    REQUIRE(run("levelset --input fixtures/chi_unit_interval.json --seed 7 --threads 1 "
                "--out /tmp/nlac_cli_d1") == 0);
    REQUIRE(run("levelset --input fixtures/chi_unit_interval.json --seed 7 --threads 4 "
                "--out /tmp/nlac_cli_d4") == 0);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    CHECK(slurp("/tmp/nlac_cli_d1/profile.csv") == slurp("/tmp/nlac_cli_d4/profile.csv"));
    // Summaries differ only in the recorded thread count.
    auto j1 = read_json("/tmp/nlac_cli_d1/summary.json");
    auto j4 = read_json("/tmp/nlac_cli_d4/summary.json");
    j1.erase("threads");
    j4.erase("threads");
    j1.erase("config_hash");
    j4.erase("config_hash");
    CHECK(j1.dump() == j4.dump());
}
