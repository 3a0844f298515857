#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "densegas/collision.hpp"
#include "densegas/verify.hpp"

namespace densegas {

// Invalid configuration; key() is the dotted path of the offending entry, e.g. "checks[2].moment".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct PhasePoint {
    Vec3 x{};
    Vec3 v{};
};

// One entry of "checks". Which fields are read depends on kind; see README for the grammar.
struct CheckDescriptor {
    std::string name;
    std::string kind;  // divergence, refinement, weakform, global_conservation, entropy,
                       // collision_transform, kernel_assumptions, annihilation, moments, corrections
    CollisionModel model;
    DistributionSpec distribution;
    QuadratureSpec quadrature;
    ToleranceSpec tolerance;
    std::vector<Moment> moments;
    std::vector<PhasePoint> points;
    double h = 1e-2;
    double min_order = 1.0;
    std::optional<TestFunctionSpec> phi;
    int replicates = 1;
    int allowed_failures = 0;
    double n_sigma = 3.0;
    double rel_floor = 1e-3;
    double floor = 1e-30;
    std::string expect;  // entropy: nonpositive | zero | negative
    double min_sigmas = 5.0;
    long samples = 10000;
    std::uint64_t seed = 1;
    double atol = 0.0;
    Vec3 grid_lo{};
    Vec3 grid_hi{};
    int grid_n = 1;
};

struct RunConfig {
    std::string output;
    std::vector<CheckDescriptor> checks;
};

// Command-line overrides applied on top of the file.
struct ConfigOverrides {
    std::optional<long> qmc_samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> h;
    std::optional<std::string> output;
};

RunConfig parse_run_config(const ordered_json& j, const ConfigOverrides& o = {});
RunConfig load_run_config(const std::string& path, const ConfigOverrides& o = {});

// Sub-spec parsers; key is the path prefix used in error messages.
DistributionSpec parse_distribution(const ordered_json& j, const std::string& key);
CollisionModel parse_model(const ordered_json& j, const DistributionSpec& f, const std::string& key);
QuadratureSpec parse_quadrature(const ordered_json& j, const std::string& key, QuadratureSpec base = {});
TestFunctionSpec parse_test_function(const ordered_json& j, const std::string& key);
PovznerKernelSpec parse_kernel(const ordered_json& j, const std::string& key);

ordered_json to_json(const DistributionSpec& f);

}  // namespace densegas
