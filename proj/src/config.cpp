#include "densegas/config.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace densegas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join(const std::string& prefix, const std::string& k) { return prefix.empty() ? k : prefix + "." + k; }

void require_object(const ordered_json& j, const std::string& key) {
    if (!j.is_object()) throw ConfigError(key, "expected an object");
}

void reject_unknown(const ordered_json& j, const std::string& key, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError(join(key, it.key()), "unknown key");
}

double number(const ordered_json& j, const std::string& key) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
    }
    throw ConfigError(key, "expected a number");
}

long integer(const ordered_json& j, const std::string& key) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) throw ConfigError(key, "expected an integer");
    return j.get<long>();
}

std::string text(const ordered_json& j, const std::string& key) {
    if (!j.is_string()) throw ConfigError(key, "expected a string");
    return j.get<std::string>();
}

Vec3 vec3(const ordered_json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(key, "expected an array of 3 numbers");
    return {number(j[0], key + "[0]"), number(j[1], key + "[1]"), number(j[2], key + "[2]")};
}

Mat3 mat3(const ordered_json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(key, "expected a 3x3 array");
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        const Vec3 r = vec3(j[i], key + "[" + std::to_string(i) + "]");
        for (int k = 0; k < 3; ++k) m(i, k) = r[k];
    }
    return m;
}

template <class F>
void get(const ordered_json& j, const std::string& prefix, const char* name, F&& assign) {
    if (j.contains(name)) assign(j.at(name), join(prefix, name));
}

// Runs validate() and reports a failure against key.
template <class T>
void validated(const T& spec, const std::string& key) {
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
}

ordered_json merged(ordered_json base, const ordered_json& patch, const std::string& key) {
    require_object(patch, key);
    if (base.is_null()) base = ordered_json::object();
    base.merge_patch(patch);
    return base;
}

}  // namespace

ordered_json to_json(const DistributionSpec& f) {
    auto arr = [](const Vec3& v) { return ordered_json::array({v.x1, v.x2, v.x3}); };
    ordered_json j;
    j["family"] = to_string(f.family);
    j["center"] = arr(f.center);
    j["spatial_width"] = f.uniform_in_x() ? ordered_json("inf") : ordered_json(f.spatial_width);
    j["amplitude"] = f.amplitude;
    j["bulk_velocity"] = arr(f.bulk_velocity);
    j["temperature"] = f.temperature;
    if (f.family == Family::perturbed_maxwellian) {
        j["perturbation_direction"] = arr(f.perturbation_direction);
        j["perturbation_strength"] = f.perturbation_strength;
    }
    return j;
}

DistributionSpec parse_distribution(const ordered_json& j, const std::string& key) {
    require_object(j, key);
    reject_unknown(j, key,
                   {"family", "center", "spatial_width", "amplitude", "bulk_velocity", "temperature", "perturbation_direction",
                    "perturbation_strength"});
    DistributionSpec f;
    get(j, key, "family", [&](const ordered_json& v, const std::string& k) {
        const auto s = text(v, k);
        if (s == "gaussian_maxwellian") f.family = Family::gaussian_maxwellian;
        else if (s == "perturbed_maxwellian") f.family = Family::perturbed_maxwellian;
        else throw ConfigError(k, "unknown family '" + s + "'");
    });
    get(j, key, "center", [&](const ordered_json& v, const std::string& k) { f.center = vec3(v, k); });
    get(j, key, "spatial_width", [&](const ordered_json& v, const std::string& k) { f.spatial_width = number(v, k); });
    get(j, key, "amplitude", [&](const ordered_json& v, const std::string& k) { f.amplitude = number(v, k); });
    get(j, key, "bulk_velocity", [&](const ordered_json& v, const std::string& k) { f.bulk_velocity = vec3(v, k); });
    get(j, key, "temperature", [&](const ordered_json& v, const std::string& k) { f.temperature = number(v, k); });
    get(j, key, "perturbation_direction", [&](const ordered_json& v, const std::string& k) { f.perturbation_direction = vec3(v, k); });
    get(j, key, "perturbation_strength", [&](const ordered_json& v, const std::string& k) { f.perturbation_strength = number(v, k); });
    validated(f, key);
    return f;
}

PovznerKernelSpec parse_kernel(const ordered_json& j, const std::string& key) {
    require_object(j, key);
    reject_unknown(j, key, {"type", "range", "speed"});
    if (!j.contains("type")) throw ConfigError(join(key, "type"), "missing");
    PovznerKernelSpec k;
    const auto t = text(j["type"], join(key, "type"));
    if (t == "smooth_bump") k.kind = PovznerKernelSpec::Kind::smooth_bump;
    else if (t == "fornasier") k.kind = PovznerKernelSpec::Kind::fornasier;
    else throw ConfigError(join(key, "type"), "unknown kernel '" + t + "'");
    get(j, key, "range", [&](const ordered_json& v, const std::string& kk) { k.range = number(v, kk); });
    get(j, key, "speed", [&](const ordered_json& v, const std::string& kk) { k.speed = number(v, kk); });
    validated(k, key);
    return k;
}

CollisionModel parse_model(const ordered_json& j, const DistributionSpec& f, const std::string& key) {
    require_object(j, key);
    if (!j.contains("type")) throw ConfigError(join(key, "type"), "missing");
    const auto t = text(j["type"], join(key, "type"));
    CollisionModel m;
    if (t == "boltzmann") {
        reject_unknown(j, key, {"type"});
        m = CollisionModel::boltzmann();
    } else if (t == "enskog") {
        reject_unknown(j, key, {"type", "sigma", "chi"});
        if (!j.contains("sigma")) throw ConfigError(join(key, "sigma"), "missing");
        const double sigma = number(j["sigma"], join(key, "sigma"));
        ChiSpec chi = ChiSpec::constant(1.0);
        get(j, key, "chi", [&](const ordered_json& c, const std::string& k) {
            require_object(c, k);
            reject_unknown(c, k, {"type", "value", "sigma"});
            const auto ct = c.contains("type") ? text(c["type"], join(k, "type")) : std::string("constant");
            if (ct == "constant") {
                chi = ChiSpec::constant(c.contains("value") ? number(c["value"], join(k, "value")) : 1.0);
            } else if (ct == "enskog_asymptotic") {
                chi = ChiSpec::asymptotic(c.contains("sigma") ? number(c["sigma"], join(k, "sigma")) : sigma, f);
            } else {
                throw ConfigError(join(k, "type"), "unknown chi '" + ct + "'");
            }
        });
        m = CollisionModel::enskog(sigma, chi);
    } else if (t == "povzner") {
        reject_unknown(j, key, {"type", "kernel"});
        if (!j.contains("kernel")) throw ConfigError(join(key, "kernel"), "missing");
        m = CollisionModel::povzner(parse_kernel(j["kernel"], join(key, "kernel")));
    } else {
        throw ConfigError(join(key, "type"), "unknown model '" + t + "'");
    }
    validated(m, key);
    return m;
}

QuadratureSpec parse_quadrature(const ordered_json& j, const std::string& key, QuadratureSpec q) {
    require_object(j, key);
    reject_unknown(j, key,
                   {"r3_points_per_axis", "r3_truncation_radius_sigmas", "sphere_rule_order", "segment_points", "qmc_samples",
                    "qmc_seed", "execution"});
    get(j, key, "r3_points_per_axis", [&](const ordered_json& v, const std::string& k) { q.r3_points_per_axis = static_cast<int>(integer(v, k)); });
    get(j, key, "r3_truncation_radius_sigmas", [&](const ordered_json& v, const std::string& k) { q.r3_truncation_radius_sigmas = number(v, k); });
    get(j, key, "sphere_rule_order", [&](const ordered_json& v, const std::string& k) { q.sphere_rule_order = static_cast<int>(integer(v, k)); });
    get(j, key, "segment_points", [&](const ordered_json& v, const std::string& k) { q.segment_points = static_cast<int>(integer(v, k)); });
    get(j, key, "qmc_samples", [&](const ordered_json& v, const std::string& k) { q.qmc_samples = integer(v, k); });
    get(j, key, "qmc_seed", [&](const ordered_json& v, const std::string& k) { q.qmc_seed = static_cast<std::uint64_t>(integer(v, k)); });
    get(j, key, "execution", [&](const ordered_json& v, const std::string& k) {
        const auto s = text(v, k);
        if (s == "serial") q.execution = Execution::serial;
        else if (s == "parallel") q.execution = Execution::parallel;
        else throw ConfigError(k, "expected 'serial' or 'parallel'");
    });
    validated(q, key);
    return q;
}

TestFunctionSpec parse_test_function(const ordered_json& j, const std::string& key) {
    require_object(j, key);
    if (!j.contains("type")) throw ConfigError(join(key, "type"), "missing");
    const auto t = text(j["type"], join(key, "type"));
    TestFunctionSpec phi;
    if (t == "constant") {
        reject_unknown(j, key, {"type", "value"});
        phi = TestFunctionSpec::constant(j.contains("value") ? number(j["value"], join(key, "value")) : 1.0);
    } else if (t == "compact_bump") {
        reject_unknown(j, key, {"type", "center_x", "center_v", "radius_x", "radius_v"});
        Vec3 cx{}, cv{};
        double rx = 1.0, rv = 1.0;
        get(j, key, "center_x", [&](const ordered_json& v, const std::string& k) { cx = vec3(v, k); });
        get(j, key, "center_v", [&](const ordered_json& v, const std::string& k) { cv = vec3(v, k); });
        get(j, key, "radius_x", [&](const ordered_json& v, const std::string& k) { rx = number(v, k); });
        get(j, key, "radius_v", [&](const ordered_json& v, const std::string& k) { rv = number(v, k); });
        phi = TestFunctionSpec::bump(cx, cv, rx, rv);
    } else if (t == "gaussian_poly") {
        reject_unknown(j, key,
                       {"type", "center_x", "center_v", "width_x", "width_v", "c0", "lin_x", "lin_v", "quad_x", "quad_v", "quad_xv"});
        get(j, key, "center_x", [&](const ordered_json& v, const std::string& k) { phi.center_x = vec3(v, k); });
        get(j, key, "center_v", [&](const ordered_json& v, const std::string& k) { phi.center_v = vec3(v, k); });
        get(j, key, "width_x", [&](const ordered_json& v, const std::string& k) { phi.width_x = number(v, k); });
        get(j, key, "width_v", [&](const ordered_json& v, const std::string& k) { phi.width_v = number(v, k); });
        get(j, key, "c0", [&](const ordered_json& v, const std::string& k) { phi.c0 = number(v, k); });
        get(j, key, "lin_x", [&](const ordered_json& v, const std::string& k) { phi.lin_x = vec3(v, k); });
        get(j, key, "lin_v", [&](const ordered_json& v, const std::string& k) { phi.lin_v = vec3(v, k); });
        get(j, key, "quad_x", [&](const ordered_json& v, const std::string& k) { phi.quad_x = mat3(v, k); });
        get(j, key, "quad_v", [&](const ordered_json& v, const std::string& k) { phi.quad_v = mat3(v, k); });
        get(j, key, "quad_xv", [&](const ordered_json& v, const std::string& k) { phi.quad_xv = mat3(v, k); });
    } else {
        throw ConfigError(join(key, "type"), "unknown test function '" + t + "'");
    }
    validated(phi, key);
    return phi;
}

namespace {

const std::set<std::string> kKinds = {"divergence", "refinement", "weakform", "global_conservation", "entropy",
                                      "collision_transform", "kernel_assumptions", "annihilation", "moments", "corrections"};

std::vector<Moment> parse_moments(const CheckDescriptor& c, const ordered_json& j, const std::string& key) {
    auto one = [&](const ordered_json& v, const std::string& k) {
        try {
            return parse_moment(text(v, k));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(k, e.what());
        }
    };
    std::vector<Moment> out;
    if (j.contains("moment") && j.contains("moments")) throw ConfigError(join(key, "moments"), "give either moment or moments");
    if (j.contains("moment")) out.push_back(one(j["moment"], join(key, "moment")));
    if (j.contains("moments")) {
        const auto& ms = j["moments"];
        const auto k = join(key, "moments");
        if (ms.is_string() && ms.get<std::string>() == "all") return all_moments();
        if (!ms.is_array() || ms.empty()) throw ConfigError(k, "expected \"all\" or a non-empty array");
        for (std::size_t i = 0; i < ms.size(); ++i) out.push_back(one(ms[i], k + "[" + std::to_string(i) + "]"));
    }
    if (out.empty() && (c.kind == "divergence" || c.kind == "refinement" || c.kind == "weakform"))
        throw ConfigError(join(key, "moment"), "missing");
    return out;
}

// Deterministic points around (x0, u0): x0 + x_spread L z, u0 + v_spread sqrt(T) z with z standard normal.
std::vector<PhasePoint> sample_points(const DistributionSpec& f, const ordered_json& j, const std::string& key) {
    require_object(j, key);
    reject_unknown(j, key, {"count", "seed", "x_spread", "v_spread"});
    long count = 1;
    std::uint64_t seed = 1;
    double xs = 0.5, vs = 1.0;
    get(j, key, "count", [&](const ordered_json& v, const std::string& k) { count = integer(v, k); });
    get(j, key, "seed", [&](const ordered_json& v, const std::string& k) { seed = static_cast<std::uint64_t>(integer(v, k)); });
    get(j, key, "x_spread", [&](const ordered_json& v, const std::string& k) { xs = number(v, k); });
    get(j, key, "v_spread", [&](const ordered_json& v, const std::string& k) { vs = number(v, k); });
    if (count < 1) throw ConfigError(join(key, "count"), "must be >= 1");
    std::mt19937_64 rng(seed);
    auto z = [&] { return normal_quantile((static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53); };
    const double L = f.uniform_in_x() ? 1.0 : f.spatial_width;
    const double st = f.thermal_speed();
    std::vector<PhasePoint> pts;
    for (long i = 0; i < count; ++i) {
        PhasePoint p;
        p.x = f.center + xs * L * Vec3{z(), z(), z()};
        p.v = f.bulk_velocity + vs * st * Vec3{z(), z(), z()};
        pts.push_back(p);
    }
    return pts;
}

CheckDescriptor parse_check(const ordered_json& top, const ordered_json& j, const std::string& key, const ConfigOverrides& o) {
    require_object(j, key);
    reject_unknown(j, key,
                   {"name", "kind", "model", "distribution", "quadrature", "tolerance", "moment", "moments", "points", "sample_points",
                    "h", "min_order", "phi", "replicates", "allowed_failures", "n_sigma", "rel_floor", "floor", "expect",
                    "min_sigmas", "samples", "seed", "atol", "grid", "kernel", "comment"});
    CheckDescriptor c;
    if (!j.contains("name")) throw ConfigError(join(key, "name"), "missing");
    c.name = text(j["name"], join(key, "name"));
    if (c.name.empty()) throw ConfigError(join(key, "name"), "must be non-empty");
    if (!j.contains("kind")) throw ConfigError(join(key, "kind"), "missing");
    c.kind = text(j["kind"], join(key, "kind"));
    if (!kKinds.count(c.kind)) throw ConfigError(join(key, "kind"), "unknown check kind '" + c.kind + "'");

    ordered_json dist = top.contains("distribution") ? top["distribution"] : ordered_json::object();
    if (j.contains("distribution")) dist = merged(dist, j["distribution"], join(key, "distribution"));
    c.distribution = parse_distribution(dist, j.contains("distribution") ? join(key, "distribution") : "distribution");

    const bool needs_model = c.kind != "collision_transform" && c.kind != "moments" &&
                             !(c.kind == "kernel_assumptions" && j.contains("kernel"));
    if (j.contains("model")) c.model = parse_model(j["model"], c.distribution, join(key, "model"));
    else if (top.contains("model")) c.model = parse_model(top["model"], c.distribution, "model");
    else if (needs_model) throw ConfigError(join(key, "model"), "missing (no top-level model either)");

    ordered_json quad = top.contains("quadrature") ? top["quadrature"] : ordered_json::object();
    if (j.contains("quadrature")) quad = merged(quad, j["quadrature"], join(key, "quadrature"));
    c.quadrature = parse_quadrature(quad, j.contains("quadrature") ? join(key, "quadrature") : "quadrature");
    if (o.qmc_samples) c.quadrature.qmc_samples = *o.qmc_samples;
    if (o.seed) c.quadrature.qmc_seed = *o.seed;
    validated(c.quadrature, "--qmc-samples/--seed");

    ordered_json tol = top.contains("tolerance") ? top["tolerance"] : ordered_json::object();
    if (j.contains("tolerance")) tol = merged(tol, j["tolerance"], join(key, "tolerance"));
    {
        const std::string tk = j.contains("tolerance") ? join(key, "tolerance") : "tolerance";
        require_object(tol, tk);
        reject_unknown(tol, tk, {"c1", "c2"});
        get(tol, tk, "c1", [&](const ordered_json& v, const std::string& k) { c.tolerance.c1 = number(v, k); });
        get(tol, tk, "c2", [&](const ordered_json& v, const std::string& k) { c.tolerance.c2 = number(v, k); });
        if (!(c.tolerance.c1 >= 0.0) || !(c.tolerance.c2 >= 0.0)) throw ConfigError(tk, "c1 and c2 must be >= 0");
    }

    c.moments = parse_moments(c, j, key);
    if (top.contains("h")) c.h = number(top["h"], "h");
    get(j, key, "h", [&](const ordered_json& v, const std::string& k) { c.h = number(v, k); });
    if (o.h) c.h = *o.h;
    if (!(c.h > 0.0) || !std::isfinite(c.h)) throw ConfigError(join(key, "h"), "must be > 0");

    if (j.contains("points") && j.contains("sample_points")) throw ConfigError(join(key, "points"), "give either points or sample_points");
    get(j, key, "points", [&](const ordered_json& v, const std::string& k) {
        if (!v.is_array() || v.empty()) throw ConfigError(k, "expected a non-empty array");
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto pk = k + "[" + std::to_string(i) + "]";
            require_object(v[i], pk);
            reject_unknown(v[i], pk, {"x", "v"});
            PhasePoint p{c.distribution.center, c.distribution.bulk_velocity};
            get(v[i], pk, "x", [&](const ordered_json& a, const std::string& kk) { p.x = vec3(a, kk); });
            get(v[i], pk, "v", [&](const ordered_json& a, const std::string& kk) { p.v = vec3(a, kk); });
            c.points.push_back(p);
        }
    });
    get(j, key, "sample_points", [&](const ordered_json& v, const std::string& k) { c.points = sample_points(c.distribution, v, k); });
    if (c.points.empty()) c.points.push_back({c.distribution.center, c.distribution.bulk_velocity});

    get(j, key, "min_order", [&](const ordered_json& v, const std::string& k) { c.min_order = number(v, k); });
    get(j, key, "phi", [&](const ordered_json& v, const std::string& k) { c.phi = parse_test_function(v, k); });
    get(j, key, "replicates", [&](const ordered_json& v, const std::string& k) { c.replicates = static_cast<int>(integer(v, k)); });
    get(j, key, "allowed_failures", [&](const ordered_json& v, const std::string& k) { c.allowed_failures = static_cast<int>(integer(v, k)); });
    get(j, key, "n_sigma", [&](const ordered_json& v, const std::string& k) { c.n_sigma = number(v, k); });
    get(j, key, "rel_floor", [&](const ordered_json& v, const std::string& k) { c.rel_floor = number(v, k); });
    get(j, key, "floor", [&](const ordered_json& v, const std::string& k) { c.floor = number(v, k); });
    get(j, key, "expect", [&](const ordered_json& v, const std::string& k) { c.expect = text(v, k); });
    get(j, key, "min_sigmas", [&](const ordered_json& v, const std::string& k) { c.min_sigmas = number(v, k); });
    get(j, key, "samples", [&](const ordered_json& v, const std::string& k) { c.samples = integer(v, k); });
    get(j, key, "seed", [&](const ordered_json& v, const std::string& k) { c.seed = static_cast<std::uint64_t>(integer(v, k)); });
    get(j, key, "atol", [&](const ordered_json& v, const std::string& k) { c.atol = number(v, k); });
    get(j, key, "kernel", [&](const ordered_json& v, const std::string& k) { c.model = CollisionModel::povzner(parse_kernel(v, k)); });
    get(j, key, "grid", [&](const ordered_json& v, const std::string& k) {
        require_object(v, k);
        reject_unknown(v, k, {"lo", "hi", "n"});
        if (!v.contains("lo") || !v.contains("hi")) throw ConfigError(k, "lo and hi are required");
        c.grid_lo = vec3(v["lo"], join(k, "lo"));
        c.grid_hi = vec3(v["hi"], join(k, "hi"));
        if (v.contains("n")) c.grid_n = static_cast<int>(integer(v["n"], join(k, "n")));
        if (c.grid_n < 1) throw ConfigError(join(k, "n"), "must be >= 1");
    });
    if (o.seed) c.seed = *o.seed;

    // kind-specific requirements
    const bool dense = c.model.kind != CollisionModel::Kind::boltzmann;
    if (c.replicates < 1) throw ConfigError(join(key, "replicates"), "must be >= 1");
    if (c.allowed_failures < 0) throw ConfigError(join(key, "allowed_failures"), "must be >= 0");
    if (!(c.n_sigma > 0.0)) throw ConfigError(join(key, "n_sigma"), "must be > 0");
    if (c.samples < 1) throw ConfigError(join(key, "samples"), "must be >= 1");
    if ((c.kind == "divergence" || c.kind == "refinement" || c.kind == "weakform" || c.kind == "corrections") && !dense)
        throw ConfigError(join(key, "model"), c.kind + " checks need an enskog or povzner model");
    if (c.kind == "refinement" && c.moments.size() != 1) throw ConfigError(join(key, "moment"), "refinement takes exactly one moment");
    if (c.kind == "weakform" && !c.phi) throw ConfigError(join(key, "phi"), "missing");
    if (c.kind == "entropy") {
        if (c.model.kind != CollisionModel::Kind::povzner) throw ConfigError(join(key, "model"), "entropy needs a povzner model");
        if (!(c.floor > 0.0)) throw ConfigError(join(key, "floor"), "must be > 0");
        if (c.expect.empty()) c.expect = "nonpositive";
        if (c.expect != "nonpositive" && c.expect != "zero" && c.expect != "negative")
            throw ConfigError(join(key, "expect"), "expected nonpositive, zero or negative");
    } else if (!c.expect.empty()) {
        throw ConfigError(join(key, "expect"), "only entropy checks take expect");
    }
    if (c.kind == "kernel_assumptions" && c.model.kind != CollisionModel::Kind::povzner)
        throw ConfigError(join(key, "kernel"), "kernel_assumptions needs a povzner model or a kernel");
    if (c.kind == "moments" && !j.contains("grid")) {
        c.grid_lo = c.grid_hi = c.distribution.center;
        c.grid_n = 1;
    }
    return c;
}

}  // namespace

RunConfig parse_run_config(const ordered_json& j, const ConfigOverrides& o) {
    require_object(j, "");
    reject_unknown(j, "", {"output", "model", "distribution", "quadrature", "tolerance", "h", "checks", "comment", "description"});
    RunConfig rc;
    rc.output = "report.jsonl";
    get(j, "", "output", [&](const ordered_json& v, const std::string& k) { rc.output = text(v, k); });
    if (o.output) rc.output = *o.output;
    if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty())
        throw ConfigError("checks", "checks must be non-empty");
    std::set<std::string> names;
    const auto& cs = j["checks"];
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto key = "checks[" + std::to_string(i) + "]";
        rc.checks.push_back(parse_check(j, cs[i], key, o));
        if (!names.insert(rc.checks.back().name).second) throw ConfigError(key + ".name", "duplicate check name '" + rc.checks.back().name + "'");
    }
    return rc;
}

RunConfig load_run_config(const std::string& path, const ConfigOverrides& o) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
    ordered_json j;
    try {
        j = ordered_json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", std::string("parse error in '") + path + "': " + e.what());
    }
    return parse_run_config(j, o);
}

}  // namespace densegas
