#pragma once

// Maps from the unit cube to the phase-space variables of the sampled pairings. Each map
// returns the point and multiplies a running weight by 1/density.

#include <cmath>
#include <numbers>

#include "densegas/quadrature.hpp"
#include "densegas/testfields.hpp"
#include "densegas/testfunctions.hpp"

namespace densegas::internal {

inline Vec3 gauss_point(const double* u, const Vec3& c, double s, double& weight) {
    const Vec3 z{normal_quantile(u[0]), normal_quantile(u[1]), normal_quantile(u[2])};
    weight *= std::pow(2.0 * std::numbers::pi, 1.5) * s * s * s * std::exp(0.5 * norm_sq(z));
    return c + s * z;
}

inline Vec3 sphere_point(const double* u, double& weight) {
    const double mu = 2.0 * u[0] - 1.0;
    const double ph = 2.0 * std::numbers::pi * u[1];
    const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    weight *= 4.0 * std::numbers::pi;
    return {st * std::cos(ph), st * std::sin(ph), mu};
}

inline Vec3 box_point(const double* u, double R, double& weight) {
    weight *= 8.0 * R * R * R;
    return {(2.0 * u[0] - 1.0) * R, (2.0 * u[1] - 1.0) * R, (2.0 * u[2] - 1.0) * R};
}

// Position sampling. When neither f nor phi localizes x the integrand is x-independent and
// the pairing is reported per unit volume: x is drawn but carries weight 1.
struct XSampler {
    Vec3 center{};
    double width = 1.0;
    bool per_unit_volume = false;

    Vec3 operator()(const double* u, double& weight) const {
        if (!per_unit_volume) return gauss_point(u, center, width, weight);
        double dummy = 1.0;
        return gauss_point(u, center, width, dummy);
    }
};

inline XSampler x_sampler(const DistributionSpec& f, const TestFunctionSpec* phi) {
    struct Candidate {
        Vec3 c;
        double s;
    };
    std::vector<Candidate> cs;
    if (!f.uniform_in_x()) cs.push_back({f.center, f.spatial_width});
    if (phi) {
        if (phi->kind == TestFunctionSpec::Kind::compact_bump) cs.push_back({phi->center_x, 0.5 * phi->width_x});
        else if (std::isfinite(phi->width_x)) cs.push_back({phi->center_x, phi->width_x});
    }
    XSampler s;
    if (cs.empty()) {
        s.center = f.center;
        s.per_unit_volume = true;
        return s;
    }
    // Precision-weighted centre, narrowest width: never narrower than the product of the factors.
    double wsum = 0.0;
    Vec3 c{};
    s.width = cs.front().s;
    for (const auto& k : cs) {
        const double p = 1.0 / (k.s * k.s);
        c += p * k.c;
        wsum += p;
        s.width = std::min(s.width, k.s);
    }
    s.center = c / wsum;
    return s;
}

// Seed of the r-th independent sampled pairing derived from one configured seed.
inline std::uint64_t pairing_seed(std::uint64_t seed, int r) { return seed * 1000003ULL + static_cast<std::uint64_t>(r) * 7919ULL; }

}  // namespace densegas::internal
