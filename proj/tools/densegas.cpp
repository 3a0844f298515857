// densegas: run verification configs, validate kernels, tabulate moment fields.
#include <omp.h>

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "densegas/moments.hpp"
#include "densegas/runner.hpp"

using namespace densegas;

namespace {

struct Common {
    std::string config;
    long qmc_samples = 0;
    long long seed = -1;
    double h = 0.0;
    std::string out;
    int threads = 0;
};

ConfigOverrides overrides(const Common& c) {
    ConfigOverrides o;
    if (c.qmc_samples > 0) o.qmc_samples = c.qmc_samples;
    if (c.seed >= 0) o.seed = static_cast<std::uint64_t>(c.seed);
    if (c.h > 0.0) o.h = c.h;
    if (!c.out.empty()) o.output = c.out;
    return o;
}

int config_error(const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
}

std::ostream* open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return &std::cout;
    file.open(path);
    if (!file) throw ConfigError("--out", "cannot open '" + path + "'");
    return &file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conservative-form checks for the Enskog and Povzner collision operators"};
    app.require_subcommand(1);
    Common common;
    int parallel = 1;
    bool quiet = false;

    auto* verify = app.add_subcommand("verify", "run the checks of a config file and write a JSONL report");
    verify->set_help_flag("--help", "print this help and exit");
    verify->add_option("config", common.config, "config file")->required();
    verify->add_option("--qmc-samples", common.qmc_samples, "override quadrature.qmc_samples");
    verify->add_option("--seed", common.seed, "override quadrature.qmc_seed and check seeds");
    verify->add_option("--h", common.h, "override the finite-difference step");
    verify->add_option("--out", common.out, "override the report path");
    verify->add_option("--parallel", parallel, "checks run concurrently (report sorted by check name)");
    verify->add_option("--threads", common.threads, "OpenMP threads per check");
    verify->add_flag("--quiet", quiet, "no progress lines");

    std::string kernel_type = "smooth_bump";
    double range = 1.0, speed = 4.0;
    long samples = 10000;
    unsigned long kseed = 1;
    auto* vk = app.add_subcommand("validate-kernel", "sample the kernel assumptions and print a report");
    vk->add_option("--type", kernel_type, "smooth_bump | fornasier");
    vk->add_option("--range", range, "spatial range (R or delta)");
    vk->add_option("--speed", speed, "speed scale (s0 or Theta)");
    vk->add_option("--samples", samples, "number of samples");
    vk->add_option("--seed", kseed, "sample seed");

    std::vector<double> lo, hi;
    int grid_n = 5;
    bool corrections = false;
    auto* mom = app.add_subcommand("moments", "tabulate rho, u, P, q (and collisional corrections) over an x-grid as CSV");
    mom->add_option("config", common.config, "config file (distribution, model, quadrature)")->required();
    mom->add_option("--lo", lo, "grid corner")->expected(3);
    mom->add_option("--hi", hi, "grid corner")->expected(3);
    mom->add_option("--n", grid_n, "points per axis");
    mom->add_flag("--corrections", corrections, "add stress and energy correction columns");
    mom->add_option("--out", common.out, "CSV path (default stdout)");
    mom->add_option("--threads", common.threads, "OpenMP threads");

    std::string report_path, selector = "all";
    auto* ex = app.add_subcommand("export-csv", "flatten a JSONL report to CSV");
    ex->add_option("report", report_path, "JSONL report")->required();
    ex->add_option("--select", selector, "all | passed | failed | kind:<kind>");
    ex->add_option("--out", common.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    if (common.threads > 0) omp_set_num_threads(common.threads);

    if (*verify) {
        RunConfig rc;
        try {
            rc = load_run_config(common.config, overrides(common));
        } catch (const ConfigError& e) {
            return config_error(e);
        }
        RunOptions opt;
        opt.parallel = parallel;
        if (!quiet) opt.log = &std::cerr;
        RunSummary s;
        try {
            s = run(rc, opt);
        } catch (const ConfigError& e) {
            return config_error(e);
        }
        if (s.status == kExitNumerical) std::cerr << "numerical failure in check '" << s.failing_check << "': " << s.message << "\n";
        if (s.status == kExitConfig) std::cerr << "config error in check '" << s.failing_check << "': " << s.message << "\n";
        std::cerr << s.passed << "/" << s.total << " checks passed, report: " << rc.output << "\n";
        return s.status;
    }

    if (*vk) {
        PovznerKernelSpec k;
        try {
            k = parse_kernel({{"type", kernel_type}, {"range", range}, {"speed", speed}}, "kernel");
        } catch (const ConfigError& e) {
            return config_error(e);
        }
        const VerificationReport r = validate_kernel(k, samples, kseed);
        std::cout << to_json(r).dump(2) << "\n";
        return r.pass ? kExitPass : kExitFailed;
    }

    if (*mom) {
        try {
            std::ifstream in(common.config);
            if (!in) throw ConfigError("", "cannot open config file '" + common.config + "'");
            const auto j = ordered_json::parse(in);
            const DistributionSpec f = j.contains("distribution") ? parse_distribution(j["distribution"], "distribution") : DistributionSpec{};
            const QuadratureSpec q = j.contains("quadrature") ? parse_quadrature(j["quadrature"], "quadrature") : QuadratureSpec{};
            std::optional<CollisionModel> m;
            if (corrections) {
                if (!j.contains("model")) throw ConfigError("model", "--corrections needs a model");
                m = parse_model(j["model"], f, "model");
                if (m->kind == CollisionModel::Kind::boltzmann) throw ConfigError("model", "--corrections needs enskog or povzner");
            }
            const Vec3 a = lo.empty() ? f.center - Vec3{1, 1, 1} : Vec3{lo[0], lo[1], lo[2]};
            const Vec3 b = hi.empty() ? f.center + Vec3{1, 1, 1} : Vec3{hi[0], hi[1], hi[2]};
            if (grid_n < 1) throw ConfigError("--n", "must be >= 1");
            std::ofstream file;
            write_moments_csv(*open_out(common.out, file), f, m ? &*m : nullptr, x_grid(a, b, grid_n), q);
        } catch (const ConfigError& e) {
            return config_error(e);
        } catch (const nlohmann::json::exception& e) {
            return config_error(e);
        } catch (const NodeFailure& e) {
            std::cerr << "numerical failure: " << e.what() << "\n";
            return kExitNumerical;
        }
        return kExitPass;
    }

    if (*ex) {
        std::ifstream in(report_path);
        if (!in) {
            std::cerr << "cannot open report '" << report_path << "'\n";
            return kExitConfig;
        }
        try {
            std::ofstream file;
            export_csv(in, *open_out(common.out, file), selector);
        } catch (const ConfigError& e) {
            return config_error(e);
        } catch (const nlohmann::json::exception& e) {
            return config_error(e);
        }
        return kExitPass;
    }
    return kExitPass;
}
