// End-to-end command-line tests: exit codes, JSON schema stability, golden
// outputs for the deterministic subcommands, and render artifacts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// Run the installed binary with the given arguments, capturing stdout.
RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + "'" + SYMDYN_CLI_PATH +
                      "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    return std::string(std::istreambuf_iterator<char>(f), {});
}

const std::set<std::string> kReportKeys = {"name", "n",   "pass",      "witness",
                                           "lhs",  "rhs", "elapsed_ms"};

std::set<std::string> keys_of(const json& j) {
    std::set<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.insert(it.key());
    return out;
}

}  // namespace

TEST_CASE("verify runs the full suite and reports machine-readable passes") {
    RunResult r = run("verify --n 3 --json");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(keys_of(j) ==
          std::set<std::string>{"command", "params", "defaults", "reports", "pass"});
    CHECK(j["command"] == "verify");
    CHECK(j["params"]["n"] == 3);
    CHECK(j["defaults"]["eps_attr"] == 1e-8);
    CHECK(j["defaults"]["max_iter"] == 500);
    CHECK(j["defaults"]["seed"] == 1);
    CHECK(j["pass"] == true);
    REQUIRE(j["reports"].size() == 11);
    for (const json& rep : j["reports"]) {
        CHECK(keys_of(rep) == kReportKeys);
        CHECK(rep["pass"] == true);
    }
}

TEST_CASE("verify filters to a single named check, with aliases") {
    RunResult r = run("verify --n 4 --check equivariance --json");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["reports"].size() == 1);
    CHECK(j["reports"][0]["name"] == "equivariance");

    r = run("verify --n 4 --check critical-factorization --json");
    CHECK(r.code == 0);
    j = json::parse(r.out);
    REQUIRE(j["reports"].size() == 1);
    CHECK(j["reports"][0]["name"] == "critical-determinant-factorization");

    r = run("verify --n 4 --check no-such-check");
    CHECK(r.code == 2);
}

TEST_CASE("usage errors and refusals exit with code 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("verify").code == 2);                   // missing --n
    CHECK(run("verify --n 99").code == 2);            // out of range
    CHECK(run("verify --n 2").code == 2);
    CHECK(run("verify --n 4 --bogus-flag").code == 2);
    CHECK(run("verify --n 7 --check critical-factorization").code == 2);
    CHECK(run("verify --n 7 --check uniqueness").code == 2);  // unavailable
    CHECK(run("render").code == 2);                   // neither preset nor config
    CHECK(run("render --preset g4 --res banana").code == 2);
    CHECK(run("render --preset nope").code == 2);
    CHECK(run("coverage --n 3 --samples 0").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("the family printout matches the frozen golden") {
    RunResult r = run("map --n 3 --json");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["n"] == 3);
    CHECK(j["degree"] == 4);
    CHECK(j["scale"] == "6");
    REQUIRE(j["components"].size() == 2);
    CHECK(j["components"][0] == "-1 * u1^4 + 2 * u1^3 u2");
    CHECK(j["components"][1] == "2 * u1 u2^3 - 1 * u2^4");
}

TEST_CASE("orbit sizes print with matching predictions") {
    RunResult r = run("orbits --n 5 --json");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    REQUIRE(j["rows"].size() == 4);
    const long want[4] = {5, 10, 10, 5};
    for (int k = 0; k < 4; ++k) {
        CHECK(j["rows"][k]["k"] == k + 1);
        CHECK(j["rows"][k]["size"] == want[k]);
        CHECK(j["rows"][k]["predicted"] == std::to_string(want[k]));
        CHECK(j["rows"][k]["match"] == true);
    }
}

TEST_CASE("coverage emits the documented schema and is thread-independent") {
    RunResult a = run("coverage --n 3 --samples 300 --seed 2024 --threads 1 --json");
    RunResult b = run("coverage --n 3 --samples 300 --seed 2024 --threads 3 --json");
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    json ja = json::parse(a.out), jb = json::parse(b.out);
    for (const char* key :
         {"resolved_fraction", "histogram", "unresolved", "underflow",
          "resolved", "mean_iterations", "max_iterations"}) {
        CAPTURE(key);
        CHECK(ja.contains(key));
    }
    CHECK(ja["resolved_fraction"].get<double>() >= 0.99);
    // Identical statistics regardless of the worker count.
    ja["params"].erase("threads");
    jb["params"].erase("threads");
    CHECK(ja == jb);
    // A different seed gives a different (but valid) sample set.
    RunResult c = run("coverage --n 3 --samples 300 --seed 77 --threads 1 --json");
    json jc = json::parse(c.out);
    CHECK(jc["resolved_fraction"].get<double>() >= 0.99);
}

TEST_CASE("the line-chart comparison fails on exactly one chart") {
    RunResult all = run("check-1d --json");
    CHECK(all.code == 1);
    json j = json::parse(all.out);
    CHECK(j["pass"] == false);
    REQUIRE(j["reports"].size() == 3);
    CHECK(j["reports"][0]["name"] == "g5CP1");
    CHECK(j["reports"][0]["pass"] == true);
    CHECK(j["reports"][1]["name"] == "g6CP1Z2");
    CHECK(j["reports"][1]["pass"] == true);
    CHECK(j["reports"][2]["name"] == "g6CP1Z1");
    CHECK(j["reports"][2]["match"] == false);
    CHECK(j["reports"][2]["derived"]["den"] == j["reports"][2]["reference"]["den"]);

    RunResult one = run("check-1d --name g5CP1 --json");
    CHECK(one.code == 0);
    json j1 = json::parse(one.out);
    CHECK(j1["reports"][0]["derived"]["num"] == "4*z^5 + 20*z^3");
    CHECK(j1["reports"][0]["derived"]["den"] == "15*z^4 + 10*z^2 - 1");
}

TEST_CASE("the cubic-chart and planar comparisons pass") {
    RunResult h = run("check-halley --json");
    CHECK(h.code == 0);
    json jh = json::parse(h.out);
    CHECK(jh["derived_equals_halley"] == true);
    CHECK(jh["reference_is_negated"] == true);
    CHECK(jh["derived"]["num"] == "z^4 + 2*z");
    CHECK(jh["derived"]["den"] == "2*z^3 + 1");

    RunResult p = run("check-planar --json");
    CHECK(p.code == 0);
    json jp = json::parse(p.out);
    REQUIRE(jp["reports"].size() == 2);
    CHECK(jp["reports"][0]["n"] == 4);
    CHECK(jp["reports"][0]["pass"] == true);
    CHECK(jp["reports"][1]["n"] == 5);
    CHECK(jp["reports"][1]["pass"] == true);

    RunResult p4 = run("check-planar --n 4 --json");
    CHECK(p4.code == 0);
    CHECK(json::parse(p4.out)["reports"].size() == 1);
}

TEST_CASE("render writes deterministic PPM files and honors the config flow") {
    RunResult a = run("render --preset g5CP1 --res 32x32 --out cli_a.ppm --json");
    CHECK(a.code == 0);
    json ja = json::parse(a.out);
    CHECK(ja["resolved"].get<int>() + ja["unresolved"].get<int>() +
              ja["underflow"].get<int>() ==
          32 * 32);
    std::string bytes_a = slurp("cli_a.ppm");
    CHECK(bytes_a.substr(0, 11) == "P6\n32 32\n25");
    CHECK(bytes_a.size() == std::string("P6\n32 32\n255\n").size() + 32 * 32 * 3);

    RunResult b = run("render --preset g5CP1 --res 32x32 --out cli_b.ppm --threads 3");
    CHECK(b.code == 0);
    CHECK(slurp("cli_b.ppm") == bytes_a);
    RunResult c = run("render --preset g5CP1 --res 32x32 --out cli_c.ppm",
                      "SYMDYN_THREADS=2");
    CHECK(c.code == 0);
    CHECK(slurp("cli_c.ppm") == bytes_a);

    // Config generation, then rendering from the config, reproduces the bytes.
    RunResult dump = run("render --preset g5CP1 --res 32x32 --dump-config cli_job.json");
    CHECK(dump.code == 0);
    json job = json::parse(slurp("cli_job.json"));
    CHECK(job["name"] == "g5CP1");
    CHECK(job["chart"] == "complex_line");
    CHECK(job["resolution"][0] == 32);
    RunResult d = run("render --config cli_job.json --out cli_d.ppm");
    CHECK(d.code == 0);
    CHECK(slurp("cli_d.ppm") == bytes_a);

    // A corrupt config is a usage error.
    std::ofstream bad("cli_bad.json");
    bad << "{\"name\": \"x\"}";
    bad.close();
    CHECK(run("render --config cli_bad.json --out cli_e.ppm").code == 2);

    for (const char* f : {"cli_a.ppm", "cli_b.ppm", "cli_c.ppm", "cli_d.ppm",
                          "cli_job.json", "cli_bad.json"})
        std::remove(f);
}
