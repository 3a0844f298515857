#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <random>

#include "densegas/currents.hpp"
#include "oracles/reference.hpp"

using namespace densegas;

namespace {

DistributionSpec localized() { return {}; }

DistributionSpec perturbed() {
    DistributionSpec f;
    f.family = Family::perturbed_maxwellian;
    f.perturbation_strength = 0.3;
    f.perturbation_direction = {0.6, 0.8, 0};
    return f;
}

DistributionSpec uniform_maxwellian() {
    DistributionSpec f;
    f.spatial_width = std::numeric_limits<double>::infinity();
    return f;
}

QuadratureSpec coarse() {
    QuadratureSpec q;
    q.r3_points_per_axis = 12;
    q.sphere_rule_order = 32;
    q.segment_points = 4;
    return q;
}

QuadratureSpec tiny() {
    QuadratureSpec q;
    q.r3_points_per_axis = 8;
    q.sphere_rule_order = 18;
    q.segment_points = 3;
    return q;
}

const CollisionModel kEnskog = CollisionModel::enskog(0.5, ChiSpec::constant(1.0));
const CollisionModel kPovzner = CollisionModel::povzner(PovznerKernelSpec::smooth_bump(1.0, 4.0));

double bundle_max(const CurrentBundle& b) {
    double m = 0.0;
    for (int k = 0; k < 5; ++k) m = std::max({m, max_abs(b.J[k]), max_abs(b.I[k])});
    return m;
}

}  // namespace

TEST_CASE("zero distribution gives zero currents") {
    const DistributionSpec f = localized().scaled(0.0);
    for (const CollisionModel& m : {kEnskog, kPovzner}) {
        const auto b = current_bundle(m, f, {}, {1, 0, 0}, tiny());
        CHECK(bundle_max(b) == 0.0);
        CHECK(mass_current(m, f, {}, {}, tiny()).value == Vec3{});
        CHECK(momentum_current_v(m, f, 2, {}, {}, tiny()).value == Vec3{});
        CHECK(momentum_current_x(m, f, 3, {}, {}, tiny()).value == Vec3{});
        CHECK(energy_current_v(m, f, {}, {}, tiny()).value == Vec3{});
        CHECK(energy_current_x(m, f, {}, {}, tiny()).value == Vec3{});
    }
    const auto li = landau_integrand_enskog(WeightSpec::one(), WeightSpec::one(), f, f, ChiSpec::constant(1.0), 0.5, {},
                                            UnitVec3::checked({0, 0, 1}), {}, tiny());
    CHECK(li.value == Vec3{});
}

TEST_CASE("Landau integrand vanishes when the partner lives far away") {
    const DistributionSpec f = localized();
    DistributionSpec g = localized();
    g.center = {100, 0, 0};
    const auto li = landau_integrand_enskog(WeightSpec::one(), WeightSpec::one(), f, g, ChiSpec::constant(1.0), 0.5, {},
                                            UnitVec3::checked({1, 0, 0}), {0.5, 0, 0}, coarse());
    CHECK(li.value == Vec3{});
}

TEST_CASE("Landau integrand converges under refinement") {
    const DistributionSpec f = localized();
    const UnitVec3 n = UnitVec3::normalized({1, 1, 0});
    const Vec3 x{0.1, 0, 0}, v{0.9, 0.3, 0};
    const auto a = landau_integrand_enskog(WeightSpec::one(), WeightSpec::one(), f, f, ChiSpec::constant(1.0), 0.5, x, n, v, coarse());
    const auto b = landau_integrand_enskog(WeightSpec::one(), WeightSpec::one(), f, f, ChiSpec::constant(1.0), 0.5, x, n, v,
                                           coarse().refined());
    CHECK(norm(a.value - b.value) <= 3 * (a.error_estimate + b.error_estimate));
    CHECK(norm(b.value) > 10 * b.error_estimate);
    CHECK(norm(cross(b.value, n.vec())) < 1e-14 * norm(b.value));
}

TEST_CASE("Enskog mass current against the brute-force reference") {
    const DistributionSpec f = localized();
    const Vec3 x{0.3, 0, 0}, v{1, 0.5, 0};
    const auto lib = mass_current(kEnskog, f, x, v, QuadratureSpec{});
    const auto ref = reference::enskog_mass_current(kEnskog, f, x, v, {16, 24, 24, 16});
    CHECK(norm(lib.value - ref.value) <= 3 * (lib.error_estimate + ref.error));
    CHECK(norm(lib.value) > 10 * (lib.error_estimate + ref.error));
    const Vec3 v2{0.4, -0.6, 0.3};
    const auto lib2 = mass_current(kEnskog, perturbed(), {0.2, 0, 0.1}, v2, QuadratureSpec{});
    const auto ref2 = reference::enskog_mass_current(kEnskog, perturbed(), {0.2, 0, 0.1}, v2, {16, 24, 24, 16});
    CHECK(norm(lib2.value - ref2.value) <= 3 * (lib2.error_estimate + ref2.error));
}

TEST_CASE("mass current is divergence free at equilibrium") {
    const DistributionSpec f = uniform_maxwellian();
    const QuadratureSpec q;
    const Vec3 x{}, v{0.6, -0.2, 0.3};
    const double h = 1e-2;
    double div = 0.0, err = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto p = mass_current(kEnskog, f, x, v + h * unit_axis(i), q);
        const auto m = mass_current(kEnskog, f, x, v - h * unit_axis(i), q);
        div += (p.value[i] - m.value[i]) / (2 * h);
        err += (p.error_estimate + m.error_estimate) / (2 * h);
    }
    CHECK(std::abs(div) <= 3 * err + 1e-6 * norm(mass_current(kEnskog, f, x, v, q).value));
}

TEST_CASE("the two normal-weighted momentum terms contribute equally for an isotropic uniform state") {
    // J_k carries -(term with <v,n> n_k on f) + (term with <w,n> n_k on the partner)
    const DistributionSpec f = uniform_maxwellian();
    QuadratureSpec q = coarse();
    q.sphere_rule_order = 50;
    const ChiSpec chi = ChiSpec::constant(1.0);
    std::mt19937_64 rng(20);
    std::normal_distribution<double> z;
    for (int i = 0; i < 20; ++i) {
        const Vec3 v{z(rng), z(rng), z(rng)};
        const int k = i % 3;
        auto term = [&](const WeightSpec& a, const WeightSpec& b) {
            return integrate_sphere(
                [&](const Vec3& n) { return landau_integrand_enskog(a, b, f, f, chi, 0.5, {}, UnitVec3::checked(n), v, q).value; }, q);
        };
        const auto tb = term(WeightSpec::dot_n_component(k), WeightSpec::one());
        const auto tc = term(WeightSpec::one(), WeightSpec::dot_n_component(k));
        CHECK(norm(-1.0 * tb.value - tc.value) <= 3 * (tb.error_estimate + tc.error_estimate) + 1e-14 * norm(tc.value));
        CHECK(norm(tc.value) > 0.0);
    }
}

TEST_CASE("momentum and energy currents converge under refinement") {
    const DistributionSpec f = perturbed();
    const Vec3 x{0.3, 0, 0}, v{1, 0.5, 0};
    struct Case {
        const CollisionModel* m;
        QuadratureSpec q;
    };
    for (const Case& c : {Case{&kEnskog, coarse()}, Case{&kPovzner, tiny()}}) {
        const auto fields = [&](const QuadratureSpec& q) {
            return std::vector<CurrentField>{momentum_current_v(*c.m, f, 1, x, v, q), momentum_current_x(*c.m, f, 2, x, v, q),
                                             energy_current_v(*c.m, f, x, v, q), energy_current_x(*c.m, f, x, v, q)};
        };
        const auto lo = fields(c.q), hi = fields(c.q.refined());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            INFO(to_string(lo[i].which), " ", c.m->name());
            CHECK(norm(lo[i].value - hi[i].value) <= 3 * (lo[i].error_estimate + hi[i].error_estimate));
            CHECK(lo[i].error_estimate >= 0.0);
        }
    }
}

TEST_CASE("position currents vanish in the dilute limit") {
    const DistributionSpec f = localized();
    const CollisionModel dilute = CollisionModel::enskog(1e-6, ChiSpec::constant(1.0));
    const Vec3 x{0.2, 0, 0}, v{0.5, 0.2, 0};
    const double dense = max_abs(momentum_current_x(kEnskog, f, 1, x, v, QuadratureSpec{}).value);
    REQUIRE(dense > 1e-3);
    for (int l = 1; l <= 3; ++l) CHECK(max_abs(momentum_current_x(dilute, f, l, x, v, QuadratureSpec{}).value) < 1e-12 * dense);
    CHECK(max_abs(energy_current_x(dilute, f, x, v, QuadratureSpec{}).value) < 1e-12 * dense);
}

TEST_CASE("post-collision speed identity") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> z;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 v{z(rng), z(rng), z(rng)}, w{z(rng), z(rng), z(rng)};
        const Vec3 n = UnitVec3::normalized({z(rng), z(rng), z(rng)}).vec();
        const auto p = collide_raw(v, w, n);
        const double rhs = norm_sq(v) - dot(v, n) * dot(v, n) + dot(w, n) * dot(w, n);
        CHECK(std::abs(norm_sq(p.v) - rhs) <= 1e-13 * std::max(1.0, norm_sq(v) + norm_sq(w)));
    }
}

TEST_CASE("currents are quadratic in the distribution") {
    const DistributionSpec f = perturbed();
    const Vec3 x{0.1, 0.2, 0}, v{0.3, -0.5, 0.4};
    for (const CollisionModel& m : {kEnskog, kPovzner}) {
        const auto a = current_bundle(m, f, x, v, tiny());
        const auto b = current_bundle(m, f.scaled(2.0), x, v, tiny());
        for (int k = 0; k < 5; ++k) {
            CHECK(norm(b.J[k] - 4.0 * a.J[k]) <= 1e-13 * (norm(b.J[k]) + 1e-300) + 3 * (b.J_error[k] + 4 * a.J_error[k]));
            CHECK(norm(b.I[k] - 4.0 * a.I[k]) <= 1e-13 * (norm(b.I[k]) + 1e-300) + 3 * (b.I_error[k] + 4 * a.I_error[k]));
        }
    }
}

TEST_CASE("Enskog currents vanish without correlation") {
    const CollisionModel none = CollisionModel::enskog(0.5, ChiSpec::constant(0.0));
    const auto b = current_bundle(none, perturbed(), {0.1, 0, 0}, {0.5, 0.5, 0}, coarse());
    CHECK(bundle_max(b) == 0.0);
}

TEST_CASE("mass position current is identically zero") {
    for (const CollisionModel& m : {kEnskog, kPovzner}) {
        const auto b = current_bundle(m, perturbed(), {0.1, 0, 0}, {0.5, 0.5, 0}, tiny());
        CHECK(b.I[0] == Vec3{});
    }
}

TEST_CASE("bundle and single currents agree") {
    const DistributionSpec f = perturbed();
    const Vec3 x{0.2, -0.1, 0}, v{0.7, 0, 0.2};
    const auto b = current_bundle(kEnskog, f, x, v, coarse());
    CHECK(norm(b.J[0] - mass_current(kEnskog, f, x, v, coarse()).value) < 1e-15 + 1e-13 * norm(b.J[0]));
    CHECK(norm(b.J[2] - momentum_current_v(kEnskog, f, 2, x, v, coarse()).value) < 1e-15 + 1e-13 * norm(b.J[2]));
    CHECK(norm(b.I[4] - energy_current_x(kEnskog, f, x, v, coarse()).value) < 1e-15 + 1e-13 * norm(b.I[4]));
}

TEST_CASE("serial and parallel bundles agree bit for bit") {
    const DistributionSpec f = perturbed();
    for (const CollisionModel& m : {kEnskog, kPovzner}) {
        const auto a = current_bundle(m, f, {0.1, 0, 0}, {0.4, 0.3, 0}, tiny());
        const auto b = current_bundle(m, f, {0.1, 0, 0}, {0.4, 0.3, 0}, reference::serial(tiny()));
        for (int k = 0; k < 5; ++k) {
            CHECK(a.J[k] == b.J[k]);
            CHECK(a.I[k] == b.I[k]);
        }
    }
}
