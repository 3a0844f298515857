// Runs the shipped configs through the CLI and prints one PASS/FAIL line per criterion.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Run {
    int status = -1;
    double seconds = 0.0;
    std::vector<json> lines;  // summary line last
    std::string report;       // raw text
};

std::string env(const char* name) {
    const char* p = std::getenv(name);
    if (!p) throw std::runtime_error(std::string(name) + " is not set");
    return p;
}

fs::path scratch() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / ("densegas_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run verify(const std::string& config, const std::string& extra = "", const std::string& tag = "") {
    const fs::path report = scratch() / (config + tag + ".jsonl");
    const std::string cmd = env("DENSEGAS_CLI") + " verify " + (fs::path(env("DENSEGAS_CONFIGS")) / (config + ".json")).string() +
                            " --quiet --out " + report.string() + " " + extra + " 2> " + (scratch() / "stderr").string();
    Run r;
    const auto t0 = std::chrono::steady_clock::now();
    const int raw = std::system(cmd.c_str());
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(report);
    std::stringstream s;
    s << in.rdbuf();
    r.report = s.str();
    std::istringstream lines(r.report);
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) r.lines.push_back(json::parse(line));
    return r;
}

std::vector<json> checks(const Run& r) {
    std::vector<json> v;
    for (const auto& j : r.lines)
        if (!j.contains("summary")) v.push_back(j);
    return v;
}

struct Verdict {
    bool pass = true;
    std::ostringstream why;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            why << " [" << what << "]";
        }
    }
};

std::string fmt(double s) {
    std::ostringstream o;
    o.precision(3);
    o << s << " s";
    return o.str();
}

// every line passes, exit 0, runtime under budget
void all_pass(Verdict& v, const Run& r, double budget, const std::string& label) {
    v.require(r.status == 0, label + " exit " + std::to_string(r.status));
    v.require(!checks(r).empty(), label + " empty report");
    for (const auto& j : checks(r)) v.require(j.value("pass", false), j.value("check", std::string("?")) + " failed");
    v.require(r.seconds < budget, label + " took " + fmt(r.seconds));
    v.why << " " << label << " " << fmt(r.seconds);
}

int count_kind(const Run& r, const std::string& kind) {
    int n = 0;
    for (const auto& j : checks(r)) n += j.value("kind", std::string()) == kind;
    return n;
}

Verdict simple(const std::string& config, double budget) {
    Verdict v;
    all_pass(v, verify(config), budget, config);
    return v;
}

Verdict strong_form(const std::vector<std::string>& configs, const std::string& model) {
    Verdict v;
    double total = 0.0;
    std::map<std::string, long> points;
    int refinements = 0;
    for (const auto& c : configs) {
        const Run r = verify(c);
        all_pass(v, r, 1800.0, c);
        total += r.seconds;
        for (const auto& j : checks(r)) {
            v.require(j.value("model", std::string()) == model, j.value("check", std::string()) + " model");
            if (j["kind"] == "divergence") {
                const auto& subs = j["details"].value("subchecks", json::array());
                for (const auto& s : subs) ++points[s.value("moment", std::string())];
                if (subs.empty()) ++points[j.value("moment", std::string())];
            }
            if (j["kind"] == "refinement") {
                ++refinements;
                const auto order = j["details"]["observed_order"];
                v.require(order.is_string() ? order == "inf" : order.get<double>() >= 1.0, "refinement order");
            }
        }
    }
    for (const char* m : {"mass", "momentum1", "momentum2", "momentum3", "energy"})
        v.require(points[m] >= 10, std::string(m) + " has " + std::to_string(points[m]) + " points");
    v.require(refinements >= 1, "no refinement study");
    v.require(total < 1800.0, "total " + fmt(total));
    return v;
}

Verdict weak_form() {
    Verdict v;
    const Run r = verify("weak_form");
    v.require(r.status == 0 || r.status == 1, "exit " + std::to_string(r.status));
    long runs = 0, failures = 0;
    std::map<std::string, int> combos;
    for (const auto& j : checks(r)) {
        const auto& d = j["details"];
        runs += d.value("subchecks_total", 1L);
        failures += d.value("failures", j.value("pass", false) ? 0L : 1L);
        ++combos[j.value("model", std::string())];
    }
    v.require(runs == 80, std::to_string(runs) + " runs");
    v.require(failures <= 1, std::to_string(failures) + " runs beyond 3 sigma");
    v.require(combos["enskog"] == 2 && combos["povzner"] == 2, "model x test function coverage");
    v.require(r.seconds < 3600.0, "took " + fmt(r.seconds));
    v.why << " " << failures << "/" << runs << " beyond 3 sigma, " << fmt(r.seconds);
    return v;
}

Verdict reproducibility() {
    std::vector<std::string> configs{"reproducibility", "enskog_smoke", "transform", "kernels",
                                     "entropy", "moments", "enskog_refinement"};
    if (std::getenv("DENSEGAS_ACCEPTANCE_FULL"))
        configs.insert(configs.end(), {"annihilation", "global_conservation", "enskog_strong_form", "povzner_strong_form",
                                       "weak_form"});
    auto strip = [](const Run& r) {
        std::string out;
        for (json j : r.lines) {
            j.erase("wall_time");
            out += j.dump() + "\n";
        }
        return out;
    };
    Verdict v;
    for (const auto& c : configs) {
        std::string first;
        for (const std::string t : {"1", "2", "8"}) {
            const Run r = verify(c, "--threads " + t, "_t" + t);
            v.require(!r.lines.empty(), c + " produced no report");
            const std::string s = strip(r);
            if (t == "1") first = s;
            else v.require(s == first, c + " differs at " + t + " threads");
        }
    }
    v.why << " " << configs.size() << " configs at 1, 2, 8 threads";
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int criterion = 0;
    app.add_option("--criterion", criterion, "criterion number 1..10")->required()->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::map<int, std::function<Verdict()>> table{
        {1, [] { return simple("transform", 5.0); }},
        {2, [] { return simple("kernels", 5.0); }},
        {3, [] { return simple("annihilation", 120.0); }},
        {4, [] { return strong_form({"enskog_strong_form", "enskog_refinement"}, "enskog"); }},
        {5, [] { return strong_form({"povzner_strong_form"}, "povzner"); }},
        {6, weak_form},
        {7, [] { return simple("global_conservation", 1200.0); }},
        {8, [] { return simple("entropy", 600.0); }},
        {9, [] { return simple("moments", 600.0); }},
        {10, reproducibility},
    };
    Verdict v;
    try {
        v = table.at(criterion)();
    } catch (const std::exception& e) {
        v.require(false, e.what());
    }
    std::cout << "criterion " << criterion << ": " << (v.pass ? "PASS" : "FAIL") << v.why.str() << std::endl;
    std::error_code ec;
    fs::remove_all(scratch(), ec);
    return v.pass ? 0 : 1;
}
