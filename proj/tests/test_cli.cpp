// Drives the built CLI binary: exit codes, report verdicts, determinism.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

static std::string g_cli;

static int run_cli(const std::string& args) {
    int rc = std::system((g_cli + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

static std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

TEST_CASE("missing config file exits with the config error code") {
    CHECK(run_cli("recognize --config ./no_such_file.json") == 2);
}

TEST_CASE("malformed config exits with the config error code") {
    write_file("cli_bad.json", "{\"no_field_key\": 1}");
    CHECK(run_cli("recognize --config cli_bad.json") == 2);
    write_file("cli_notjson.json", "this is not json");
    CHECK(run_cli("recognize --config cli_notjson.json") == 2);
}

TEST_CASE("recognize job finds an exact rational and reports it") {
    write_file("cli_rec.json",
               "{\"field\": \"Qi\", \"value\": [\"0.1\", \"-0.25\"],"
               " \"denom_bound_bits\": 16}");
    CHECK(run_cli("recognize --config cli_rec.json --out cli_rec_out.json") == 0);
    std::string rep = slurp("cli_rec_out.json");
    CHECK(rep.find("\"verdict\": \"pass\"") != std::string::npos);
    CHECK(rep.find("1/10") != std::string::npos);
    CHECK(rep.find("-1/4") != std::string::npos);
}

TEST_CASE("theta functional equation job passes") {
    write_file("cli_theta.json",
               "{\"field\": \"Qi\", \"t\": \"0.5\", \"mu\": [1], \"samples\": 2}");
    CHECK(run_cli("verify-theta-fe --config cli_theta.json --precision 96 --seed 7") == 0);
}

TEST_CASE("reports are byte-identical at fixed precision and seed") {
    write_file("cli_ek.json",
               "{\"field\": \"Qi\", \"z\": [\"1/3\", \"1/5\"], \"w\": [\"1/2\", 0],"
               " \"mu\": [2], \"s\": [\"1.5\", \"0.25\"]}");
    CHECK(run_cli("ek-eval --config cli_ek.json --precision 96 --out cli_ek_a.json") == 0);
    CHECK(run_cli("ek-eval --config cli_ek.json --precision 96 --out cli_ek_b.json") == 0);
    std::string a = slurp("cli_ek_a.json"), b = slurp("cli_ek_b.json");
    REQUIRE(!a.empty());
    CHECK(a == b);
    // and the report echoes its inputs and fingerprint
    CHECK(a.find("config_fingerprint") != std::string::npos);
    CHECK(a.find("\"precision_bits\": 96") != std::string::npos);
}

TEST_CASE("unknown options exit nonzero") {
    CHECK(run_cli("frobnicate --config cli_rec.json") != 0);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-ekl-cli>\n");
        return 1;
    }
    g_cli = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
