#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <numbers>
#include <random>

#include "densegas/quadrature.hpp"
#include "densegas/testfields.hpp"

using namespace densegas;

namespace {

DistributionSpec unit_maxwellian() { return {}; }

DistributionSpec perturbed(double eps) {
    DistributionSpec f;
    f.family = Family::perturbed_maxwellian;
    f.center = {0.2, -0.1, 0.4};
    f.bulk_velocity = {0.5, 0, -0.3};
    f.temperature = 1.3;
    f.perturbation_direction = {0, 0.6, 0.8};
    f.perturbation_strength = eps;
    return f;
}

}  // namespace

TEST_CASE("peak of the unit Maxwellian") {
    CHECK(eval(unit_maxwellian(), {}, {}) == doctest::Approx(std::pow(2 * std::numbers::pi, -1.5)).epsilon(1e-15));
    CHECK(eval(unit_maxwellian(), {}, {}) == doctest::Approx(0.0634936359).epsilon(1e-9));
}

TEST_CASE("far field is zero") {
    CHECK(eval(unit_maxwellian(), {60, 0, 0}, {}) < 1e-300);
    CHECK(eval(perturbed(0.3), {0, 0, 60}, {1, 1, 1}) < 1e-300);
    CHECK(eval(unit_maxwellian(), {}, {0, 45, 0}) < 1e-300);
}

TEST_CASE("zero perturbation equals the Gaussian family") {
    DistributionSpec g = perturbed(0.0);
    g.family = Family::gaussian_maxwellian;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    for (int i = 0; i < 10; ++i) {
        const Vec3 x{z(rng), z(rng), z(rng)}, v{z(rng), z(rng), z(rng)};
        CHECK(eval(perturbed(0.0), x, v) == eval(g, x, v));
    }
}

TEST_CASE("analytic moments") {
    DistributionSpec f;
    f.temperature = 2.0;
    f.bulk_velocity = {0.5, -1, 0};
    const MomentFields m = analytic_moments(f, f.center);
    CHECK(m.rho == doctest::Approx(1.0));
    CHECK(m.u == f.bulk_velocity);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(m.P(i, j) == doctest::Approx(i == j ? 2.0 : 0.0));
    CHECK(m.q == Vec3{});
    CHECK(m.trace_temperature == doctest::Approx(2.0));

    f.amplitude = 3.0;
    f.spatial_width = 2.0;
    const MomentFields at_l = analytic_moments(f, f.center + Vec3{0, 2.0, 0});
    CHECK(at_l.rho == doctest::Approx(3.0 * std::exp(-0.5)).epsilon(1e-14));
    CHECK(at_l.trace_temperature == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(analytic_moments(perturbed(0.3), {}), UnsupportedClosedForm);
}

TEST_CASE("numerical velocity moments match the closed form") {
    DistributionSpec f;
    f.bulk_velocity = {0.7, 0.1, -0.2};
    f.temperature = 0.8;
    QuadratureSpec q;
    const Vec3 x{0.4, 0.3, -0.5};
    const MomentFields m = analytic_moments(f, x);
    const auto rho = integrate_r3([&](const Vec3& v) { return f(x, v); }, f.bulk_velocity, f.thermal_speed(), q);
    CHECK(std::abs(rho.value - m.rho) <= 3 * rho.error_estimate + 1e-14);
    const auto en = integrate_r3([&](const Vec3& v) { return norm_sq(v - f.bulk_velocity) * f(x, v); }, f.bulk_velocity,
                                 f.thermal_speed(), q);
    CHECK(std::abs(en.value - 3 * m.rho * m.trace_temperature) <= 3 * en.error_estimate + 1e-14);
}

TEST_CASE("nonnegative at random points") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> z;
    const DistributionSpec specs[] = {unit_maxwellian(), perturbed(0.3), perturbed(0.4999)};
    for (const auto& f : specs)
        for (int i = 0; i < 100000; ++i) {
            const Vec3 x{2 * z(rng), 2 * z(rng), 2 * z(rng)}, v{3 * z(rng), 3 * z(rng), 3 * z(rng)};
            REQUIRE(eval(f, x, v) >= 0.0);
        }
}

TEST_CASE("invalid specs are rejected") {
    DistributionSpec f;
    f.temperature = 0.0;
    CHECK_THROWS(f.validate());
    f = perturbed(0.5);
    CHECK_THROWS(f.validate());
    f = unit_maxwellian();
    f.spatial_width = -1.0;
    CHECK_THROWS(f.validate());
    f = unit_maxwellian();
    f.spatial_width = std::numeric_limits<double>::infinity();
    CHECK_NOTHROW(f.validate());
    CHECK(f.uniform_in_x());
    CHECK(density(f, {1e6, 0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("scaling multiplies the amplitude") {
    const DistributionSpec f = perturbed(0.2);
    const Vec3 x{0.1, 0.2, 0.3}, v{-0.4, 0.5, 0.6};
    CHECK(eval(f.scaled(2.0), x, v) == doctest::Approx(2.0 * eval(f, x, v)).epsilon(1e-15));
}
