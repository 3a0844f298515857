#pragma once

#include <limits>
#include <stdexcept>
#include <string>

#include "densegas/geometry.hpp"

namespace densegas {

enum class Family { gaussian_maxwellian, perturbed_maxwellian };

std::string to_string(Family f);

class UnsupportedClosedForm : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// f(x,v) = A exp(-|x-x0|^2/2L^2) (2 pi T)^{-3/2} exp(-|v-u0|^2/2T) [1 + eps <e,c>/sqrt(T) exp(-|c|^2/4T)],
// c = v - u0. spatial_width = +inf gives a spatially uniform density A.
struct DistributionSpec {
    Family family = Family::gaussian_maxwellian;
    Vec3 center{};
    double spatial_width = 1.0;
    double amplitude = 1.0;
    Vec3 bulk_velocity{};
    double temperature = 1.0;
    Vec3 perturbation_direction{1.0, 0.0, 0.0};
    double perturbation_strength = 0.0;

    void validate() const;
    bool uniform_in_x() const { return spatial_width == std::numeric_limits<double>::infinity(); }
    double thermal_speed() const;

    double spatial_factor(const Vec3& x) const;
    double velocity_factor(const Vec3& v) const;
    double operator()(const Vec3& x, const Vec3& v) const { return spatial_factor(x) * velocity_factor(v); }

    DistributionSpec scaled(double alpha) const;
};

double eval(const DistributionSpec& f, const Vec3& x, const Vec3& v);
double density(const DistributionSpec& f, const Vec3& x);

struct MomentFields {
    double rho = 0.0;
    Vec3 u{};
    Mat3 P{};
    Vec3 q{};
    double trace_temperature = 0.0;
};

MomentFields analytic_moments(const DistributionSpec& f, const Vec3& x);

}  // namespace densegas
