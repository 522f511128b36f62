#include <doctest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string("'") + CLI_PATH + "' " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (size_t got = std::fread(buf, 1, sizeof buf, pipe))
        r.output.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("cli constructs and classifies the reference case") {
    auto r = run_cli("construct quadratic 5 --no-timing");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"family\":\"quadratic\"") != std::string::npos);
    CHECK(r.output.find("\"classification\":\"E8\"") != std::string::npos);
    CHECK(r.output.find("\"det\":\"1\"") != std::string::npos);

    auto text = run_cli("--format text construct quadratic 5 --no-timing");
    CHECK(text.exit_code == 0);
    CHECK(text.output.find("E8") != std::string::npos);
}

TEST_CASE("cli reports precondition failures on exit code 1") {
    auto r = run_cli("construct quadratic 12 --no-timing");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("not squarefree") != std::string::npos);

    auto blocked = run_cli("construct quadratic 17 --no-timing");
    CHECK(blocked.exit_code == 1);
    CHECK(blocked.output.find("precondition") != std::string::npos);

    CHECK(run_cli("").exit_code == 1);       // a subcommand is required
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli analyzes a gram file") {
    auto r = run_cli(std::string("analyze '") + FIXTURE_DIR +
                     "/bw16_m20.gram' --no-timing");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"classification\":\"BarnesWall16\"") != std::string::npos);
    CHECK(r.output.find("\"min_norm\":4") != std::string::npos);
}

TEST_CASE("cli census reports the discriminant counts") {
    auto r = run_cli("census --X 100 --no-timing");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"count_d2\":15") != std::string::npos);
    CHECK(r.output.find("\"count_even\":2") != std::string::npos);
    CHECK(r.output.find("\"even_pell_solvable\":2") != std::string::npos);
}

TEST_CASE("cli quadratic scan emits one verified entry per squarefree member") {
    auto r = run_cli("scan quadratic --smax 25 --no-timing");
    CHECK(r.exit_code == 0);
    CHECK(count_occurrences(r.output, "\"classification\":\"E8\"") == 12);
    CHECK(r.output.find("\"skipped\":\"not_squarefree\"") != std::string::npos);
}
