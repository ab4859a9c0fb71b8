// End-to-end runs of the command-line front end: byte determinism, verdicts,
// exit codes, and witness replay through the report files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#ifndef OBSLAB_CLI_PATH
#error "OBSLAB_CLI_PATH must point at the front-end binary"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(OBSLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string& stem) {
    return std::filesystem::temp_directory_path() /
           (stem + "." + std::to_string(static_cast<long>(getpid())) + ".tmp");
}

}  // namespace

TEST_CASE("identical invocations produce identical bytes") {
    for (const char* args :
         {"cohomology --fixture c4 --degree 2 --format json",
          "cohomology --fixture c4 --degree 2 --format text",
          "delta-mod --fixture heis2 --format json",
          "heisenberg --k 2 --nu injective --format json"}) {
        RunResult a = run_cli(args);
        RunResult b = run_cli(args);
        CAPTURE(args);
        CHECK(a.code == 0);
        CHECK(a.code == b.code);
        CHECK(!a.out.empty());
        CHECK(a.out == b.out);
    }
}

TEST_CASE("reports parse as JSON and carry the schema") {
    RunResult r = run_cli("delta-hjr --fixture c4 --format json");
    REQUIRE(r.code == 0);
    nlohmann::ordered_json rep = nlohmann::ordered_json::parse(r.out);
    CHECK(rep["command"] == "delta-hjr");
    CHECK(rep["inputs"].is_object());
    CHECK(rep["results"].contains("witnesses"));
    CHECK(rep["timing"].is_null());
    CHECK(rep["verdict"].is_string());
}

TEST_CASE("heisenberg verdicts distinguish the two class maps") {
    RunResult inj = run_cli("heisenberg --k 2 --nu injective --format json");
    CHECK(inj.code == 0);
    CHECK(inj.out.find("OBSTRUCTED") != std::string::npos);
    CHECK(inj.out.find("\"necessary_condition\": false") != std::string::npos);

    RunResult zero = run_cli("heisenberg --k 2 --nu zero --format json");
    CHECK(zero.code == 0);
    CHECK(zero.out.find("SPLIT") != std::string::npos);
    CHECK(zero.out.find("\"necessary_condition\": true") != std::string::npos);
}

TEST_CASE("emitted witnesses replay through oracle-compare") {
    RunResult emitted = run_cli("delta-hjr --fixture c4 --format json");
    REQUIRE(emitted.code == 0);
    std::filesystem::path path = temp_file("obslab_replay");
    {
        std::ofstream out(path);
        out << emitted.out;
    }
    RunResult replay =
        run_cli("oracle-compare --fixture c4 --replay " + path.string() + " --format json");
    std::filesystem::remove(path);
    CHECK(replay.code == 0);
    CHECK(replay.out.find("\"verdict\": \"verified\"") != std::string::npos);
    nlohmann::ordered_json rep = nlohmann::ordered_json::parse(replay.out);
    CHECK(rep["results"]["witnesses_total"].get<int>() >= 1);
    CHECK(rep["results"]["witnesses_total"] == rep["results"]["witnesses_verified"]);
}

TEST_CASE("dual-route agreement on a flow given by shorthand") {
    RunResult r = run_cli("oracle-compare --group cyclic:3 --module Z3 --format json");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"verdict\": \"agree\"") != std::string::npos);
}

TEST_CASE("problem files drive the same pipelines") {
    std::filesystem::path path = temp_file("obslab_problem");
    {
        std::ofstream out(path);
        out << "group cyclic 4\n"
               "module 2\n"
               "torus 1\n"
               "subgroup L 0 2\n"
               "chi lamH 1 1 1\n"
               "chi lamH 1 3 1\n";
    }
    RunResult r = run_cli("delta-mod --problem " + path.string() + " --format json");
    std::filesystem::remove(path);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"verdict\"") != std::string::npos);
}

TEST_CASE("input failures exit with the input code") {
    CHECK(run_cli("cohomology --fixture nope --format json").code == 2);
    CHECK(run_cli("heisenberg --k 2 --modulus 4 --format json").code == 2);
    CHECK(run_cli("totally-unknown-subcommand").code == 2);
    RunResult r = run_cli("cohomology --fixture nope --format json");
    CHECK(r.out.find("\"error\"") != std::string::npos);
}
