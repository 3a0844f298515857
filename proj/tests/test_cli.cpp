#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "densegas/runner.hpp"

namespace fs = std::filesystem;
using namespace densegas;

namespace {

std::string cli() {
    const char* p = std::getenv("DENSEGAS_CLI");
    REQUIRE(p != nullptr);
    return p;
}

fs::path configs() {
    const char* p = std::getenv("DENSEGAS_CONFIGS");
    REQUIRE(p != nullptr);
    return p;
}

fs::path scratch() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / ("densegas_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Result {
    int status;
    std::string out, err;
};

Result invoke(const std::string& args) {
    const fs::path out = scratch() / "stdout", err = scratch() / "stderr";
    const std::string cmd = cli() + " " + args + " > " + out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

std::vector<ordered_json> lines(const fs::path& report) {
    std::vector<ordered_json> v;
    std::istringstream in(slurp(report));
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) v.push_back(ordered_json::parse(line));
    return v;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

const char* kCheap = R"({
  "model": {"type": "enskog", "sigma": 0.5, "chi": {"type": "constant", "value": 1.0}},
  "quadrature": {"r3_points_per_axis": 8, "sphere_rule_order": 18, "segment_points": 3, "qmc_samples": 256},
  "checks": [
    {"name": "c/transform", "kind": "collision_transform", "samples": 500, "seed": 1},
    {"name": "b/kernel", "kind": "kernel_assumptions", "kernel": {"type": "fornasier", "range": 1, "speed": 2}, "samples": 500, "seed": 2},
    {"name": "a/moments", "kind": "moments", "grid": {"lo": [-1, -1, -1], "hi": [1, 1, 1], "n": 2}}
  ]
})";

}  // namespace

TEST_CASE("empty check list is a config error") {
    const auto p = write("empty.json", R"({"checks": []})");
    const auto r = invoke("verify " + p.string() + " --out " + (scratch() / "e.jsonl").string());
    CHECK(r.status == 2);
    CHECK(r.err.find("checks must be non-empty") != std::string::npos);
}

TEST_CASE("unknown key is named in the config error") {
    const auto p = write("typo.json", R"({"checks": [{"name": "t", "kind": "collision_transform", "sampels": 10}]})");
    const auto r = invoke("verify " + p.string());
    CHECK(r.status == 2);
    CHECK(r.err.find("checks[0].sampels") != std::string::npos);
}

TEST_CASE("non-finite integrand is a numerical failure") {
    const auto p = write("nonfinite.json", R"({
      "model": {"type": "enskog", "sigma": 0.5, "chi": {"type": "constant", "value": 1.0}},
      "distribution": {"family": "gaussian_maxwellian", "temperature": 1e-310},
      "quadrature": {"r3_points_per_axis": 8, "sphere_rule_order": 18, "segment_points": 3},
      "checks": [{"name": "nf", "kind": "divergence", "moment": "mass", "points": [{"x": [0, 0, 0], "v": [0, 0, 0]}]}]})");
    const fs::path report = scratch() / "nf.jsonl";
    const auto r = invoke("verify " + p.string() + " --out " + report.string());
    CHECK(r.status == 3);
    CHECK(r.err.find("'nf'") != std::string::npos);
    const auto js = lines(report);
    REQUIRE(!js.empty());
    CHECK(js.back()["status"] == 3);
}

TEST_CASE("smoke config passes with one line per descriptor and a summary") {
    const fs::path report = scratch() / "smoke.jsonl";
    const auto r = invoke("verify " + (configs() / "enskog_smoke.json").string() + " --out " + report.string());
    CHECK(r.status == 0);
    CHECK(r.err.find("3/3 checks passed") != std::string::npos);
    const auto js = lines(report);
    REQUIRE(js.size() == 4);
    for (int i = 0; i < 3; ++i) CHECK(js[i]["pass"].get<bool>());
    CHECK(js[3]["summary"].get<bool>());
    CHECK(js[3]["passed"] == 3);
}

TEST_CASE("reports are identical across runs and thread counts apart from timing") {
    const auto p = write("cheap.json", kCheap);
    auto strip = [](std::vector<ordered_json> v) {
        for (auto& j : v) j.erase("wall_time");
        return v;
    };
    std::vector<std::vector<ordered_json>> runs;
    for (const std::string& t : {"1", "2", "1"}) {
        const fs::path report = scratch() / ("cheap_" + t + ".jsonl");
        REQUIRE(invoke("verify " + p.string() + " --quiet --threads " + t + " --out " + report.string()).status == 0);
        runs.push_back(strip(lines(report)));
    }
    CHECK(runs[0] == runs[1]);
    CHECK(runs[0] == runs[2]);
    CHECK(runs[0][0]["check"] == "c/transform");
}

TEST_CASE("concurrent checks are sorted by name") {
    const auto p = write("cheap.json", kCheap);
    const fs::path report = scratch() / "sorted.jsonl";
    REQUIRE(invoke("verify " + p.string() + " --parallel 2 --out " + report.string()).status == 0);
    const auto js = lines(report);
    REQUIRE(js.size() == 4);
    CHECK(js[0]["check"] == "a/moments");
    CHECK(js[1]["check"] == "b/kernel");
    CHECK(js[2]["check"] == "c/transform");
}

TEST_CASE("export-csv") {
    const auto p = write("cheap.json", kCheap);
    const fs::path report = scratch() / "export.jsonl";
    REQUIRE(invoke("verify " + p.string() + " --quiet --out " + report.string()).status == 0);
    const std::string header = "check,moment,model,lhs,rhs,residual,tolerance,pass\n";

    const auto all = invoke("export-csv " + report.string());
    CHECK(all.status == 0);
    CHECK(all.out.rfind(header, 0) == 0);
    CHECK(count_lines(all.out) == 1 + static_cast<int>(lines(report).size()) - 1);

    const auto kind = invoke("export-csv " + report.string() + " --select kind:kernel_assumptions");
    CHECK(count_lines(kind.out) == 2);
    const auto failed = invoke("export-csv " + report.string() + " --select failed");
    CHECK(failed.out == header);

    const auto empty = write("empty.jsonl", "");
    const auto e = invoke("export-csv " + empty.string());
    CHECK(e.status == 0);
    CHECK(e.out == header);

    CHECK(invoke("export-csv " + report.string() + " --select bogus").status == 2);
    CHECK(invoke("export-csv " + (scratch() / "missing.jsonl").string()).status == 2);

    std::istringstream in(slurp(report));
    std::ostringstream csv;
    CHECK(export_csv(in, csv, "passed") == 3);
}

TEST_CASE("overrides") {
    const auto p = write("cheap.json", kCheap);
    const fs::path report = scratch() / "override.jsonl";
    REQUIRE(invoke("verify " + p.string() + " --quiet --seed 99 --qmc-samples 512 --out " + report.string()).status == 0);
    const auto js = lines(report);
    REQUIRE(js.size() == 4);
    CHECK(js[0]["details"]["seed"] == 99);
    CHECK(js[1]["details"]["seed"] == 99);
    CHECK(js[2]["quadrature"]["qmc_seed"] == 99);
    CHECK(js[2]["quadrature"]["qmc_samples"] == 512);
}

TEST_CASE("validate-kernel") {
    const auto r = invoke("validate-kernel --type fornasier --range 1 --speed 2 --samples 1000");
    CHECK(r.status == 0);
    const auto j = ordered_json::parse(r.out);
    CHECK(j["pass"].get<bool>());
    CHECK(invoke("validate-kernel --type nope").status == 2);
    CHECK(invoke("validate-kernel --range -1").status == 2);
}

TEST_CASE("moments subcommand writes a CSV grid") {
    const auto p = write("mom.json", R"({"quadrature": {"r3_points_per_axis": 12}, "checks": [{"name": "x", "kind": "collision_transform"}]})");
    const auto r = invoke("moments " + p.string() + " --lo -1 -1 -1 --hi 1 1 1 --n 2");
    CHECK(r.status == 0);
    CHECK(count_lines(r.out) == 9);
    CHECK(r.out.rfind("x1,x2,x3,rho,", 0) == 0);
    const auto m = write("momc.json", R"({"model": {"type": "boltzmann"}, "checks": [{"name": "x", "kind": "collision_transform"}]})");
    CHECK(invoke("moments " + m.string() + " --corrections").status == 2);
}

TEST_CASE("missing subcommand or config file") {
    CHECK(invoke("").status == 2);
    CHECK(invoke("verify " + (scratch() / "nope.json").string()).status == 2);
}
