// End-to-end exit-code and output checks for the pwv binary.
// PWV_BIN and PWV_DATA_DIR are injected by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    const std::string command = std::string(PWV_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

const std::string k3_path = std::string(PWV_DATA_DIR) + "/k3.json";

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/pwv_cli_" + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

} // namespace

TEST_CASE("validate: bundled document is accepted") {
    const RunResult r = run("validate " + k3_path);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text == "valid\n");
}

TEST_CASE("validate: missing file exits 1") {
    CHECK(run("validate /nonexistent/file.json").exit_code == 1);
}

TEST_CASE("validate: truncated file exits 1") {
    const std::string path = write_temp("truncated.json", read_file(k3_path).substr(0, 80));
    CHECK(run("validate " + path).exit_code == 1);
}

TEST_CASE("validate: asymmetric cup entry exits 2") {
    std::string text = read_file(k3_path);
    const std::string cup_needle = "\"cup\": [";
    auto pos = text.find(cup_needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, cup_needle.size(), "\"cup\": [[2, 0, 5, 0, \"1\"],");
    const std::string deg_needle = "\"cup_degrees\": [";
    pos = text.find(deg_needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, deg_needle.size(), "\"cup_degrees\": [[2, 2],");
    const std::string path = write_temp("asym.json", text);
    CHECK(run("validate " + path).exit_code == 2);
}

TEST_CASE("analyze: text report with all verdicts true") {
    const RunResult r = run("analyze " + k3_path + " --skip-llv");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("H^2 : 1 20 1") != std::string::npos);
    CHECK(r.stdout_text.find("FALSE") == std::string::npos);
}

TEST_CASE("analyze: json report is byte-identical across runs") {
    const RunResult a = run("analyze " + k3_path + " --skip-llv --format json");
    const RunResult b = run("analyze " + k3_path + " --skip-llv --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
    CHECK(a.stdout_text.find("\"all_verdicts_true\": true") != std::string::npos);
}

TEST_CASE("analyze: swap-eta-beta still verifies") {
    const RunResult r = run("analyze " + k3_path + " --skip-llv --swap-eta-beta --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"swap_eta_beta\": true") != std::string::npos);
}

TEST_CASE("analyze: explicit seed rho") {
    const RunResult r =
        run("analyze " + k3_path +
            " --skip-llv --format json --seed-rho 0,0,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"rho_source\": \"flag\"") != std::string::npos);
}

TEST_CASE("analyze: beta with nonzero square exits 3") {
    std::string text = read_file(k3_path);
    const std::string needle = "\"beta\": [\n    \"1\",\n    \"0\",";
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), "\"beta\": [\n    \"1\",\n    \"1\",");
    const std::string path = write_temp("badbeta.json", text);
    CHECK(run("analyze " + path).exit_code == 3);
}
