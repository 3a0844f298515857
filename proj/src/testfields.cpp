#include "densegas/testfields.hpp"

#include <cmath>
#include <numbers>

namespace densegas {

std::string to_string(Family f) {
    return f == Family::gaussian_maxwellian ? "gaussian_maxwellian" : "perturbed_maxwellian";
}

void DistributionSpec::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("distribution: " + what); };
    if (!(spatial_width > 0.0)) fail("spatial_width must be > 0");
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) fail("amplitude must be finite and >= 0");
    if (!(temperature > 0.0) || !std::isfinite(temperature)) fail("temperature must be finite and > 0");
    if (!is_finite(center) || !is_finite(bulk_velocity)) fail("center and bulk_velocity must be finite");
    if (family == Family::perturbed_maxwellian) {
        if (!(perturbation_strength >= 0.0 && perturbation_strength < 0.5))
            fail("perturbation_strength must lie in [0, 0.5)");
        UnitVec3::checked(perturbation_direction);
    }
}

double DistributionSpec::thermal_speed() const { return std::sqrt(temperature); }

double DistributionSpec::spatial_factor(const Vec3& x) const {
    if (uniform_in_x()) return amplitude;
    const double r2 = norm_sq(x - center) / (2.0 * spatial_width * spatial_width);
    return amplitude * std::exp(-r2);
}

double DistributionSpec::velocity_factor(const Vec3& v) const {
    const Vec3 c = v - bulk_velocity;
    const double e = norm_sq(c) / (2.0 * temperature);
    const double norm_const = std::pow(2.0 * std::numbers::pi * temperature, -1.5);
    const double m = norm_const * std::exp(-e);
    if (family == Family::gaussian_maxwellian || perturbation_strength == 0.0) return m;
    const double pert = perturbation_strength * dot(perturbation_direction, c) / std::sqrt(temperature) * std::exp(-0.5 * e);
    return m * (1.0 + pert);
}

DistributionSpec DistributionSpec::scaled(double alpha) const {
    DistributionSpec s = *this;
    s.amplitude *= alpha;
    return s;
}

double eval(const DistributionSpec& f, const Vec3& x, const Vec3& v) {
    const double r = f(x, v);
    return r < 1e-300 ? 0.0 : r;
}

double density(const DistributionSpec& f, const Vec3& x) {
    // the perturbation is odd in v - u0 and integrates to zero
    return f.spatial_factor(x);
}

MomentFields analytic_moments(const DistributionSpec& f, const Vec3& x) {
    if (f.family != Family::gaussian_maxwellian)
        throw UnsupportedClosedForm("analytic moments exist only for gaussian_maxwellian");
    MomentFields m;
    m.rho = density(f, x);
    if (m.rho <= 0.0) return m;
    m.u = f.bulk_velocity;
    m.P = Mat3::identity();
    for (int i = 0; i < 3; ++i) m.P(i, i) = m.rho * f.temperature;
    m.trace_temperature = f.temperature;
    return m;
}

}  // namespace densegas
