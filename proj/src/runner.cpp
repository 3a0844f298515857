#include "densegas/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "densegas/geometry.hpp"
#include "densegas/moments.hpp"

namespace densegas {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double ratio(double residual, double tolerance) {
    if (std::abs(residual) <= tolerance) return tolerance > 0.0 ? std::abs(residual) / tolerance : 0.0;
    return tolerance > 0.0 ? std::min(std::abs(residual) / tolerance, std::numeric_limits<double>::max())
                           : std::numeric_limits<double>::max();
}

// Sub-report as nested in an aggregate: no timing, no repeated quadrature echo.
ordered_json nested(const VerificationReport& r) {
    ordered_json j = to_json(r);
    j.erase("quadrature");
    j.erase("wall_time");
    return j;
}

VerificationReport aggregate(const CheckDescriptor& c, std::vector<VerificationReport> subs) {
    if (subs.size() == 1 && c.allowed_failures == 0) {
        VerificationReport r = std::move(subs.front());
        r.check = c.name;
        return r;
    }
    VerificationReport r;
    r.check = c.name;
    r.kind = subs.empty() ? c.kind : subs.front().kind;
    r.model = subs.empty() ? c.model.name() : subs.front().model;
    r.moment = subs.empty() ? "" : subs.front().moment;
    int failures = 0;
    double worst = -1.0;
    ordered_json arr = ordered_json::array();
    for (const auto& s : subs) {
        if (s.moment != r.moment) r.moment = "multiple";
        if (!s.pass) ++failures;
        const double q = ratio(s.residual, s.tolerance);
        if (q > worst) {
            worst = q;
            r.lhs = s.lhs;
            r.rhs = s.rhs;
            r.lhs_error = s.lhs_error;
            r.rhs_error = s.rhs_error;
        }
        r.wall_time += s.wall_time;
        arr.push_back(nested(s));
    }
    r.residual = failures;
    r.tolerance = c.allowed_failures;
    r.decide();
    r.quadrature = to_json(c.quadrature);
    r.details = {{"subchecks_total", subs.size()},
                 {"failures", failures},
                 {"allowed_failures", c.allowed_failures},
                 {"worst_ratio", worst},
                 {"residual_meaning", "number of failing sub-checks"},
                 {"subchecks", arr}};
    return r;
}

std::vector<VerificationReport> divergence_subs(const CheckDescriptor& c) {
    std::vector<VerificationReport> out;
    for (const auto& p : c.points) {
        auto rs = check_divergence_moments(c.model, c.distribution, c.moments, p.x, p.v, c.h, c.quadrature, c.tolerance);
        for (auto& r : rs) out.push_back(std::move(r));
    }
    return out;
}

std::vector<VerificationReport> refinement_subs(const CheckDescriptor& c) {
    std::vector<VerificationReport> out;
    for (const auto& p : c.points)
        out.push_back(refinement_study(c.model, c.distribution, c.moments.front(), p.x, p.v, c.h, c.quadrature, c.min_order));
    return out;
}

std::vector<VerificationReport> weakform_subs(const CheckDescriptor& c) {
    std::vector<VerificationReport> out;
    for (const auto& mo : c.moments)
        for (int r = 0; r < c.replicates; ++r) {
            QuadratureSpec q = c.quadrature;
            q.qmc_seed = c.quadrature.qmc_seed + static_cast<std::uint64_t>(r);
            auto rep = check_weakform(c.model, c.distribution, mo, *c.phi, q, c.n_sigma);
            rep.details["replicate"] = r;
            out.push_back(std::move(rep));
        }
    return out;
}

VerificationReport entropy_check(const CheckDescriptor& c) {
    VerificationReport r = entropy_production_povzner(c.model, c.distribution, c.floor, c.quadrature, c.n_sigma);
    const double D = r.lhs, se = r.lhs_error;
    const double bad = r.details.value("pointwise_violations", 0L) > 0 ? std::numeric_limits<double>::max() : 0.0;
    if (c.expect == "zero") {
        r.residual = std::min(std::abs(D) + bad, std::numeric_limits<double>::max());
        r.tolerance = c.n_sigma * se + r.details.value("rounding_floor", 0.0);
        r.details["residual_meaning"] = "|D|; DBL_MAX if the pointwise bound fails";
    } else if (c.expect == "negative") {
        r.residual = std::min(std::max(0.0, D + c.min_sigmas * se) + bad, std::numeric_limits<double>::max());
        r.tolerance = 0.0;
        r.details["min_sigmas"] = c.min_sigmas;
        r.details["residual_meaning"] = "max(0, D + min_sigmas stderr); DBL_MAX if the pointwise bound fails";
    }
    r.details["expect"] = c.expect;
    r.decide();
    return r;
}

VerificationReport transform_check(const CheckDescriptor& c) {
    const auto t0 = Clock::now();
    const TransformSuiteResult s = transform_property_suite(c.samples, c.seed);
    constexpr double kProperty = 1e-13, kJacobian = 1e-8;
    const double prop = std::max({s.involution_error, s.momentum_error, s.energy_error, s.rotation_energy_error,
                                  s.rotation_group_error, s.rotation_quarter_error});
    const double jac = std::max(s.jacobian_error, s.rotation_jacobian_error);
    VerificationReport r;
    r.check = c.name;
    r.kind = "collision_transform";
    r.moment = "";
    r.model = "";
    r.lhs = s.jacobian_det;
    r.rhs = -1.0;
    r.residual = std::max(prop / kProperty, jac / kJacobian);
    r.tolerance = 1.0;
    r.decide();
    r.details = {{"samples", s.samples},
                 {"seed", c.seed},
                 {"involution_error", s.involution_error},
                 {"momentum_error", s.momentum_error},
                 {"energy_error", s.energy_error},
                 {"rotation_energy_error", s.rotation_energy_error},
                 {"rotation_group_error", s.rotation_group_error},
                 {"rotation_quarter_error", s.rotation_quarter_error},
                 {"jacobian_det", s.jacobian_det},
                 {"jacobian_error", s.jacobian_error},
                 {"rotation_jacobian_error", s.rotation_jacobian_error},
                 {"property_tolerance", kProperty},
                 {"jacobian_tolerance", kJacobian},
                 {"residual_meaning", "max(property error / property tolerance, jacobian error / jacobian tolerance)"}};
    r.wall_time = seconds_since(t0);
    return r;
}

std::vector<VerificationReport> annihilation_subs(const CheckDescriptor& c) {
    std::vector<VerificationReport> out;
    for (const auto& p : c.points) {
        const auto t0 = Clock::now();
        const auto e = eval_model(c.model, c.distribution, c.distribution, p.x, p.v, c.quadrature);
        VerificationReport r;
        r.check = c.name;
        r.kind = "annihilation";
        r.moment = "";
        r.model = c.model.name();
        r.lhs = e.value;
        r.lhs_error = e.error_estimate;
        r.residual = e.value;
        r.tolerance = e.error_estimate;
        r.decide();
        r.quadrature = to_json(c.quadrature);
        r.details = {{"x", {p.x.x1, p.x.x2, p.x.x3}}, {"v", {p.v.x1, p.v.x2, p.v.x3}}, {"nodes_used", e.nodes_used}};
        r.wall_time = seconds_since(t0);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<VerificationReport> moments_subs(const CheckDescriptor& c) {
    std::vector<VerificationReport> out;
    const double c1 = c.tolerance.c1;
    for (const Vec3& x : x_grid(c.grid_lo, c.grid_hi, c.grid_n)) {
        const auto t0 = Clock::now();
        const MomentResult num = compute_moments(c.distribution, x, c.quadrature);
        const MomentFields an = analytic_moments(c.distribution, x);
        double worst = 0.0, wl = 0.0, wr = 0.0, we = 0.0;
        std::string worst_entry;
        auto cmp = [&](const std::string& name, double a, double b, double err) {
            const double q = ratio(a - b, c1 * err + c.atol);
            if (q > worst || worst_entry.empty()) {
                worst = q;
                wl = a;
                wr = b;
                we = err;
                worst_entry = name;
            }
        };
        cmp("rho", num.fields.rho, an.rho, num.rho_error);
        for (int i = 0; i < 3; ++i) cmp("u" + std::to_string(i + 1), num.fields.u[i], an.u[i], num.u_error[i]);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                cmp("P" + std::to_string(i + 1) + std::to_string(j + 1), num.fields.P(i, j), an.P(i, j), num.P_error(i, j));
        for (int i = 0; i < 3; ++i) cmp("q" + std::to_string(i + 1), num.fields.q[i], an.q[i], num.q_error[i]);
        VerificationReport r;
        r.check = c.name;
        r.kind = "moments";
        r.moment = worst_entry;
        r.model = "";
        r.lhs = wl;
        r.rhs = wr;
        r.lhs_error = we;
        r.residual = worst;
        r.tolerance = 1.0;
        r.decide();
        r.quadrature = to_json(c.quadrature);
        r.details = {{"x", {x.x1, x.x2, x.x3}},
                     {"c1", c1},
                     {"atol", c.atol},
                     {"nodes_used", num.nodes_used},
                     {"residual_meaning", "max over rho, u, P, q entries of |numeric - analytic| / (c1 error + atol)"}};
        r.wall_time = seconds_since(t0);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<VerificationReport> corrections_subs(const CheckDescriptor& c) {
    std::vector<VerificationReport> out;
    const double c1 = c.tolerance.c1;
    for (const auto& p : c.points) {
        const auto t0 = Clock::now();
        const CollisionCorrections cc = collision_corrections(c.model, c.distribution, p.x, c.quadrature);
        double worst = 0.0, wv = 0.0, we = 0.0;
        ordered_json stress = ordered_json::array(), energy = ordered_json::array();
        auto cmp = [&](double v, double e) {
            const double q = ratio(v, c1 * e + c.atol);
            if (q >= worst) {
                worst = q;
                wv = v;
                we = e;
            }
        };
        for (int l = 0; l < 3; ++l) {
            ordered_json row = ordered_json::array();
            for (int j = 0; j < 3; ++j) {
                cmp(cc.stress_correction(l, j), cc.stress_error(l, j));
                row.push_back(cc.stress_correction(l, j));
            }
            stress.push_back(row);
            cmp(cc.energy_correction[l], cc.energy_error[l]);
            energy.push_back(cc.energy_correction[l]);
        }
        VerificationReport r;
        r.check = c.name;
        r.kind = "corrections";
        r.moment = "";
        r.model = c.model.name();
        r.lhs = wv;
        r.rhs = 0.0;
        r.lhs_error = we;
        r.residual = worst;
        r.tolerance = 1.0;
        r.decide();
        r.quadrature = to_json(c.quadrature);
        r.details = {{"x", {p.x.x1, p.x.x2, p.x.x3}},
                     {"stress_correction", stress},
                     {"energy_correction", energy},
                     {"c1", c1},
                     {"atol", c.atol},
                     {"nodes_used", cc.nodes_used},
                     {"residual_meaning", "max over entries of |entry| / (c1 error + atol)"}};
        r.wall_time = seconds_since(t0);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

VerificationReport run_check(const CheckDescriptor& c) {
    const std::string& k = c.kind;
    VerificationReport r;
    if (k == "divergence") r = aggregate(c, divergence_subs(c));
    else if (k == "refinement") r = aggregate(c, refinement_subs(c));
    else if (k == "weakform") r = aggregate(c, weakform_subs(c));
    else if (k == "annihilation") r = aggregate(c, annihilation_subs(c));
    else if (k == "moments") r = aggregate(c, moments_subs(c));
    else if (k == "corrections") r = aggregate(c, corrections_subs(c));
    else if (k == "global_conservation") r = check_global_conservation(c.model, c.distribution, c.quadrature, c.rel_floor, c.n_sigma);
    else if (k == "entropy") r = entropy_check(c);
    else if (k == "collision_transform") r = transform_check(c);
    else if (k == "kernel_assumptions") r = validate_kernel(c.model.kernel, c.samples, c.seed);
    else throw ConfigError("kind", "unknown check kind '" + k + "'");
    r.check = c.name;
    return r;
}

namespace {

std::string line_of(const VerificationReport& r) { return to_json(r).dump(); }

struct Outcome {
    bool done = false;
    VerificationReport report;
    int status = kExitPass;
    std::string message;
};

Outcome guarded(const CheckDescriptor& c) {
    Outcome o;
    try {
        o.report = run_check(c);
        o.done = true;
    } catch (const NodeFailure& e) {
        o.status = kExitNumerical;
        o.message = e.what();
    } catch (const ConfigError& e) {
        o.status = kExitConfig;
        o.message = e.what();
    } catch (const std::invalid_argument& e) {
        o.status = kExitConfig;
        o.message = e.what();
    } catch (const std::exception& e) {
        o.status = kExitNumerical;
        o.message = e.what();
    }
    return o;
}

}  // namespace

RunSummary run(const RunConfig& config, const RunOptions& options, std::ostream& report) {
    const auto t0 = Clock::now();
    RunSummary s;
    const std::size_t n = config.checks.size();
    std::vector<Outcome> outcomes(n);
    std::mutex mu;

    auto record = [&](std::size_t i, Outcome&& o) {
        std::lock_guard<std::mutex> lock(mu);
        if (options.log) {
            if (o.done)
                *options.log << (o.report.pass ? "PASS " : "FAIL ") << config.checks[i].name << "  residual=" << o.report.residual
                             << " tolerance=" << o.report.tolerance << " (" << std::fixed << std::setprecision(1)
                             << o.report.wall_time << std::defaultfloat << std::setprecision(6) << " s)\n";
            else
                *options.log << "ERROR " << config.checks[i].name << ": " << o.message << "\n";
            options.log->flush();
        }
        outcomes[i] = std::move(o);
    };

    std::atomic<bool> stop{false};
    if (options.parallel <= 1) {
        for (std::size_t i = 0; i < n && !stop; ++i) {
            Outcome o = guarded(config.checks[i]);
            if (o.done) {
                report << line_of(o.report) << "\n";
                report.flush();
            } else {
                stop = true;
            }
            record(i, std::move(o));
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                if (stop) return;
                const std::size_t i = next++;
                if (i >= n) return;
                Outcome o = guarded(config.checks[i]);
                if (!o.done) stop = true;
                record(i, std::move(o));
            }
        };
        std::vector<std::thread> pool;
        const int workers = std::min<int>(options.parallel, static_cast<int>(n));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        std::vector<const VerificationReport*> done;
        for (const auto& o : outcomes)
            if (o.done) done.push_back(&o.report);
        std::sort(done.begin(), done.end(), [](auto* a, auto* b) { return a->check < b->check; });
        for (const auto* r : done) report << line_of(*r) << "\n";
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Outcome& o = outcomes[i];
        if (o.done) {
            ++s.total;
            (o.report.pass ? s.passed : s.failed)++;
        } else if (!o.message.empty() && s.failing_check.empty()) {
            s.status = o.status;
            s.failing_check = config.checks[i].name;
            s.message = o.message;
        }
    }
    if (s.failing_check.empty()) s.status = s.failed > 0 ? kExitFailed : kExitPass;
    s.wall_time = seconds_since(t0);

    ordered_json sum;
    sum["summary"] = true;
    sum["total"] = s.total;
    sum["passed"] = s.passed;
    sum["failed"] = s.failed;
    if (!s.failing_check.empty()) {
        sum["error"] = s.message;
        sum["failing_check"] = s.failing_check;
        sum["status"] = s.status;
    }
    sum["wall_time"] = s.wall_time;
    report << sum.dump() << "\n";
    report.flush();
    return s;
}

RunSummary run(const RunConfig& config, const RunOptions& options) {
    std::ofstream out(config.output);
    if (!out) throw ConfigError("output", "cannot open '" + config.output + "' for writing");
    return run(config, options, out);
}

int export_csv(std::istream& report, std::ostream& csv, const std::string& selector) {
    std::function<bool(const VerificationReport&)> keep;
    if (selector == "all") keep = [](const VerificationReport&) { return true; };
    else if (selector == "passed") keep = [](const VerificationReport& r) { return r.pass; };
    else if (selector == "failed") keep = [](const VerificationReport& r) { return !r.pass; };
    else if (selector.rfind("kind:", 0) == 0) {
        const std::string kind = selector.substr(5);
        keep = [kind](const VerificationReport& r) { return r.kind == kind; };
    } else {
        throw ConfigError("select", "unknown selector '" + selector + "' (all, passed, failed, kind:<kind>)");
    }
    auto quoted = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    };
    csv << "check,moment,model,lhs,rhs,residual,tolerance,pass\n" << std::setprecision(17);
    int rows = 0;
    std::string line;
    while (std::getline(report, line)) {
        if (line.empty()) continue;
        const auto j = ordered_json::parse(line);
        if (j.contains("summary")) continue;
        const VerificationReport r = report_from_json(j);
        if (!keep(r)) continue;
        csv << quoted(r.check) << ',' << quoted(r.moment) << ',' << quoted(r.model) << ',' << r.lhs << ',' << r.rhs << ','
            << r.residual << ',' << r.tolerance << ',' << (r.pass ? "true" : "false") << "\n";
        ++rows;
    }
    return rows;
}

}  // namespace densegas
