#pragma once

#include <functional>
#include <optional>

#include "densegas/geometry.hpp"
#include "densegas/report.hpp"
#include "densegas/testfields.hpp"

namespace densegas {

// Pair correlation factor chi(x): a constant, or the low-density expansion
// 1 + (5/8)(2/3) pi sigma^3 rho(x) driven by a distribution's density.
struct ChiSpec {
    enum class Kind { constant, enskog_asymptotic };
    Kind kind = Kind::constant;
    double value = 1.0;
    double diameter = 0.0;
    std::optional<DistributionSpec> density_source;

    static ChiSpec constant(double c) { return {Kind::constant, c, 0.0, std::nullopt}; }
    static ChiSpec asymptotic(double sigma, const DistributionSpec& rho) { return {Kind::enskog_asymptotic, 0.0, sigma, rho}; }
    void validate() const;
};

double chi_eval(const ChiSpec& chi, const Vec3& x);

// Short-range Povzner kernels J(xi, u), both of the form
// radial(|xi|) * speed(|u|) * |<u, xi/|xi|>|.
struct PovznerKernelSpec {
    enum class Kind { fornasier, smooth_bump };
    Kind kind = Kind::smooth_bump;
    double range = 1.0;  // delta or R
    double speed = 4.0;  // Theta_speed or s0

    static PovznerKernelSpec fornasier(double delta, double theta) { return {Kind::fornasier, delta, theta}; }
    static PovznerKernelSpec smooth_bump(double r, double s0) { return {Kind::smooth_bump, r, s0}; }
    void validate() const;
    double spatial_range() const { return range; }
    double speed_range() const { return speed; }
};

std::string to_string(PovznerKernelSpec::Kind k);

// exp(-1/(1-r^2)) on r < 1, else 0
double bump(double r);

double kernel_eval(const PovznerKernelSpec& k, const Vec3& xi, const Vec3& vrel);

// Kernel with a known unit direction nhat = xi/|xi| and r = |xi|; avoids a sqrt per node.
inline double kernel_eval_dir(const PovznerKernelSpec& k, double r, const Vec3& nhat, const Vec3& vrel) {
    const double s2 = norm_sq(vrel);
    const double an = std::abs(dot(vrel, nhat));
    if (k.kind == PovznerKernelSpec::Kind::fornasier) {
        if (r > k.range || s2 > k.speed * k.speed) return 0.0;
        return an / (2.0 * k.range * k.range * k.range * k.speed);
    }
    if (r >= k.range || s2 >= k.speed * k.speed) return 0.0;
    const double rr = r / k.range;
    const double ss = s2 / (k.speed * k.speed);
    return std::exp(-1.0 / (1.0 - rr * rr) - 1.0 / (1.0 - ss)) * an;
}

using KernelFunction = std::function<double(const Vec3& xi, const Vec3& vrel)>;

// Samples (xi, v, w) and reports the maximum violation of each kernel assumption:
// growth bound, (xi,v) -> (-xi,-v) symmetry, collision invariance, short range.
VerificationReport validate_kernel(const PovznerKernelSpec& k, long n_samples, unsigned long seed);
VerificationReport validate_kernel(const KernelFunction& kernel, const std::string& name, double range, double speed_scale,
                                   double tolerance, long n_samples, unsigned long seed,
                                   const std::function<bool(const Vec3&, const Vec3&)>& near_discontinuity = {});

}  // namespace densegas
