#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "majorize/io.hpp"

using namespace majorize;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(MAJORIZE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const char* name) { return std::string(MAJORIZE_FIXTURES) + "/" + name; }

fs::path temp_file(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / ("majorize_cli_" + name);
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("check-exact and certify exit codes") {
    const auto p = fixture("dichotomy_p.json"), q = fixture("dichotomy_q.json");
    auto r = run("check-exact " + p + " " + q);
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["status"] == "FEASIBLE");
    CHECK(j["witness"].is_array());
    CHECK(run("check-exact " + q + " " + p).code == 1);
    CHECK(run("certify " + p + " " + q).code == 0);
    CHECK(run("certify " + q + " " + p).code == 1);
    CHECK(run("certify " + p + " " + p).code == 2);
    CHECK(run("certify --regime minimal " + p + " " + q).code == 65);
    CHECK(run("certify --grid-resolution 1 " + p + " " + q).code == 64);
    CHECK(run("certify").code == 64);
    CHECK(run("certify /nonexistent.json " + q).code == 65);
}

TEST_CASE("output is byte-identical across runs") {
    const auto p = fixture("dichotomy_p.json"), q = fixture("dichotomy_q.json");
    CHECK(run("certify " + p + " " + q).out == run("certify " + p + " " + q).out);
    CHECK(run("search " + p + " " + q).out == run("search " + p + " " + q).out);
}

TEST_CASE("divergence table matches the library bit for bit") {
    const auto p = fixture("dichotomy_p.json"), q = fixture("dichotomy_q.json");
    auto r = run("divergence " + p + " " + q + " --alpha 0,0.5,1,2,inf");
    REQUIRE(r.code == 0);
    const auto P = load_experiment(p), Q = load_experiment(q);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "alpha,D_P,D_Q,margin");
    int rows = 0;
    for (double a : {0.0, 0.5, 1.0, 2.0, kInf}) {
        REQUIRE(std::getline(in, line));
        const double dp = renyi(P.column(0), P.column(1), a), dq = renyi(Q.column(0), Q.column(1), a);
        CHECK(line == format_double(a) + "," + format_double(dp) + "," + format_double(dq) + "," +
                           format_double(extended_difference(dp, dq)));
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("search, classify and thermal") {
    const auto p = fixture("dichotomy_p.json"), q = fixture("dichotomy_q.json");
    auto s = run("search " + p + " " + q);
    CHECK(s.code == 0);
    CHECK(json::parse(s.out)["large_sample"]["n_found"] == 1);
    auto c = run("classify " + p);
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["is_power_universal"] == true);
    CHECK(run("classify " + q).code == 1);
    auto t = temp_file("thermal.json",
                       R"({"energies": [1, 2], "beta": 0.69314718055994531, "rho": [1, 0], "sigma": [0.6, 0.4]})");
    auto tv = run("thermal " + t.string());
    CHECK(tv.code == 0);
    CHECK(json::parse(tv.out)["case"] == "RHO_NOT_FULL_RANK");
    auto bad = temp_file("thermal_bad.json",
                         R"({"energies": [1, 2], "beta": 1, "rho": [0.5, 0.5], "sigma": [1, 0]})");
    CHECK(run("thermal " + bad.string()).code == 1);
}

TEST_CASE("canonicalize round trip through JSON and CSV") {
    auto in = temp_file("raw.json", R"({"labels": ["a", "b"], "columns": [[0, 0.25, 0.75], [0, 0.5, 0.5]]})");
    auto r = run("canonicalize " + in.string());
    REQUIRE(r.code == 0);
    auto once = temp_file("once.json", r.out);
    CHECK(run("canonicalize " + once.string()).out == r.out);
    CHECK(load_experiment(once.string()) == load_experiment(in.string()));
    auto csv = run("canonicalize --format csv " + in.string());
    auto csv_file = temp_file("once.csv", csv.out);
    CHECK(load_experiment(csv_file.string()) == load_experiment(in.string()));
    auto sq = run("canonicalize --power 2 " + in.string());
    CHECK(json::parse(sq.out)["columns"][0].size() == 4);
}
