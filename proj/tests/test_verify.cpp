#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>

#include "densegas/verify.hpp"
#include "oracles/reference.hpp"

using namespace densegas;

namespace {

DistributionSpec localized() { return {}; }

DistributionSpec perturbed() {
    DistributionSpec f;
    f.family = Family::perturbed_maxwellian;
    f.perturbation_strength = 0.3;
    return f;
}

DistributionSpec uniform_maxwellian() {
    DistributionSpec f;
    f.spatial_width = std::numeric_limits<double>::infinity();
    f.bulk_velocity = {0.2, 0, -0.1};
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

QuadratureSpec sampled(long n, std::uint64_t seed) {
    QuadratureSpec q;
    q.qmc_samples = n;
    q.qmc_seed = seed;
    return q;
}

TestFunctionSpec poly() {
    TestFunctionSpec phi;
    phi.center_x = {0.3, -0.2, 0.1};
    phi.center_v = {0.5, 0, 0};
    phi.width_x = 1.0;
    phi.width_v = 1.5;
    phi.lin_x = {0.5, 0, 0.2};
    phi.lin_v = {0, 0.4, 0};
    phi.quad_xv(0, 0) = 0.3;
    phi.quad_xv(2, 2) = 0.2;
    return phi;
}

const CollisionModel kEnskog = CollisionModel::enskog(0.5, ChiSpec::constant(1.0));
const CollisionModel kPovzner = CollisionModel::povzner(PovznerKernelSpec::smooth_bump(1.0, 4.0));
const Vec3 kOffAxisX{0.3, 0, 0}, kOffAxisV{1, 0.5, 0};

}  // namespace

TEST_CASE("divergence of the zero distribution is exactly zero") {
    const auto r = check_divergence(kEnskog, localized().scaled(0.0), Moment::energy(), {}, {1, 0, 0}, 1e-2, tiny());
    CHECK(r.residual == 0.0);
    CHECK(r.pass);
}

TEST_CASE("mass divergence at equilibrium") {
    const auto r = check_divergence(kEnskog, uniform_maxwellian(), Moment::mass(), {}, {1, 0.3, -0.2}, 1e-2, QuadratureSpec{});
    CHECK(std::abs(r.lhs) <= r.lhs_error);
    CHECK(std::abs(r.rhs) <= r.tolerance);
    CHECK(r.pass);
}

TEST_CASE("Enskog divergence identities on a localized Maxwellian") {
    const QuadratureSpec q;
    const auto reports = check_divergence_moments(kEnskog, localized(), all_moments(), kOffAxisX, kOffAxisV, 1e-2, q);
    REQUIRE(reports.size() == 5);
    for (const auto& r : reports) {
        INFO(r.moment, " residual ", r.residual, " tolerance ", r.tolerance, " lhs ", r.lhs);
        CHECK(r.pass);
        // v3 = 0 and x3 = 0 make the third momentum vanish by reflection; the rest are nontrivial
        if (r.moment != "momentum3") CHECK(std::abs(r.lhs) > r.tolerance);
    }
    const auto single = check_divergence(kEnskog, localized(), Moment::mass(), {}, {1, 0, 0}, 1e-2, q);
    CHECK(single.pass);
}

TEST_CASE("Enskog residual shrinks under simultaneous refinement") {
    for (const Moment& m : {Moment::mass(), Moment::momentum(2), Moment::energy()}) {
        const auto r = refinement_study(kEnskog, localized(), m, kOffAxisX, kOffAxisV, 0.05, coarse(), 1.0);
        INFO(m.name(), " ", r.details.dump());
        CHECK(r.pass);
        CHECK(r.details["observed_order"].get<double>() >= 1.0);
    }
}

TEST_CASE("Povzner divergence and refinement") {
    const auto r = check_divergence(kPovzner, perturbed(), Moment::momentum(1), kOffAxisX, kOffAxisV, 1e-2, coarse());
    CHECK(r.pass);
    const auto s = refinement_study(kPovzner, perturbed(), Moment::mass(), kOffAxisX, kOffAxisV, 0.05, tiny(), 1.0);
    INFO(s.details.dump());
    CHECK(s.pass);
}

TEST_CASE("constant test function pairs to zero on both sides") {
    const auto r = check_weakform(kEnskog, localized(), Moment::mass(), TestFunctionSpec::constant(1.0), sampled(8192, 3));
    CHECK(r.rhs == 0.0);
    CHECK(std::abs(r.lhs) <= 3 * r.lhs_error + 1e-15);
    CHECK(r.pass);
}

TEST_CASE("Enskog momentum weak form passes for four seeds") {
    int passed = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto r = check_weakform(kEnskog, localized(), Moment::momentum(1), poly(), sampled(32768, seed));
        INFO("seed ", seed, " lhs ", r.lhs, " rhs ", r.rhs, " tol ", r.tolerance);
        passed += r.pass;
        CHECK(std::abs(r.lhs) > r.tolerance);
    }
    CHECK(passed >= 3);
}

TEST_CASE("Povzner energy weak form on the perturbed family") {
    int passed = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto r = check_weakform(kPovzner, perturbed(), Moment::energy(), poly(), sampled(32768, seed));
        INFO("seed ", seed, " lhs ", r.lhs, " rhs ", r.rhs, " tol ", r.tolerance);
        passed += r.pass;
    }
    CHECK(passed >= 3);
}

TEST_CASE("single-gain pairing equals the pointwise operator integrated against phi") {
    // (C[f,f], phi) by sampling eval_enskog over a box in (x, v)
    const DistributionSpec f = localized();
    const TestFunctionSpec phi = poly();
    const QuadratureSpec inner = coarse();
    QuadratureSpec outer = sampled(256, 5);
    const std::vector<double> lo{-4, -4, -4, -5, -5, -5}, hi{4, 4, 4, 5, 5, 5};
    const auto direct = qmc_integrate(
        [&](const double* p) {
            const Vec3 x{p[0], p[1], p[2]}, v{p[3], p[4], p[5]};
            const double ph = phi.value(x, v);
            if (std::abs(ph) < 1e-14 || f(x, v) < 1e-14) return 0.0;
            return eval_enskog(kEnskog, f, f, x, v, inner).value * ph;
        },
        lo, hi, outer);
    const auto paired = check_weakform(kEnskog, f, Moment::mass(), phi, sampled(65536, 9));
    INFO("direct ", direct.value, " +- ", direct.error_estimate, " paired ", paired.lhs, " +- ", paired.lhs_error);
    CHECK(std::abs(direct.value - paired.lhs) <= 3 * std::hypot(direct.error_estimate, paired.lhs_error));
    CHECK(std::abs(paired.lhs) > 3 * paired.lhs_error);
}

TEST_CASE("weak and strong forms agree on a matched configuration") {
    const auto weak = check_weakform(kEnskog, localized(), Moment::energy(), poly(), sampled(32768, 2));
    const auto strong = check_divergence(kEnskog, localized(), Moment::energy(), kOffAxisX, kOffAxisV, 1e-2, QuadratureSpec{});
    CHECK(weak.pass == strong.pass);
}

TEST_CASE("global conservation") {
    const auto zero = check_global_conservation(kEnskog, localized().scaled(0.0), sampled(1024, 1));
    CHECK(zero.lhs == 0.0);
    CHECK(zero.pass);
    DistributionSpec f = localized();
    const CollisionModel asym = CollisionModel::enskog(0.5, ChiSpec::asymptotic(0.5, f));
    const auto e = check_global_conservation(asym, f, sampled(16384, 2));
    INFO(e.details.dump());
    CHECK(e.pass);
    const auto mass = e.details["components"][0];
    CHECK(mass["moment"] == "mass");
    CHECK(mass["pass"].get<bool>());
    const CollisionModel heaviside = CollisionModel::povzner(PovznerKernelSpec::fornasier(1.0, 2.0));
    const auto p = check_global_conservation(heaviside, perturbed(), sampled(16384, 3));
    INFO(p.details.dump());
    CHECK(p.pass);
}

TEST_CASE("entropy production") {
    DistributionSpec u = uniform_maxwellian();
    u.bulk_velocity = {};
    const auto eq = entropy_production_povzner(kPovzner, u, 1e-30, sampled(16384, 1));
    CHECK(std::abs(eq.lhs) <= eq.tolerance);
    CHECK(eq.details["pointwise_violations"].get<long>() == 0);
    const auto neq = entropy_production_povzner(kPovzner, perturbed(), 1e-30, sampled(16384, 1));
    CHECK(neq.pass);
    CHECK(neq.lhs < -5 * neq.lhs_error);
    CHECK(neq.details["pointwise_violations"].get<long>() == 0);
    CHECK_THROWS(entropy_production_povzner(kEnskog, u, 1e-30, sampled(16, 1)));
    CHECK_THROWS(entropy_production_povzner(kPovzner, u, 0.0, sampled(16, 1)));
}

TEST_CASE("moment tags") {
    CHECK(parse_moment("momentum2").axis == 2);
    CHECK(parse_moment("energy").kind == Moment::Kind::energy);
    CHECK_THROWS(parse_moment("momentum4"));
    CHECK(all_moments().size() == 5);
    CHECK(Moment::energy().weight({1, 2, 2}) == 9.0);
}

TEST_CASE("serial and parallel checks agree bit for bit") {
    const auto a = check_divergence(kEnskog, perturbed(), Moment::energy(), kOffAxisX, kOffAxisV, 0.05, tiny());
    const auto b = check_divergence(kEnskog, perturbed(), Moment::energy(), kOffAxisX, kOffAxisV, 0.05, reference::serial(tiny()));
    CHECK(a.residual == b.residual);
    CHECK(a.tolerance == b.tolerance);
    auto qa = sampled(2048, 4);
    const auto wa = check_weakform(kEnskog, localized(), Moment::momentum(3), poly(), qa);
    const auto wb = check_weakform(kEnskog, localized(), Moment::momentum(3), poly(), reference::serial(qa));
    CHECK(wa.lhs == wb.lhs);
    CHECK(wa.rhs == wb.rhs);
}
