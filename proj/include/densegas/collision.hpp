#pragma once

#include <string>
#include <utility>

#include "densegas/kernels.hpp"
#include "densegas/quadrature.hpp"
#include "densegas/testfields.hpp"

namespace densegas {

struct CollisionModel {
    enum class Kind { boltzmann, enskog, povzner };
    Kind kind = Kind::boltzmann;
    double sigma = 0.0;
    ChiSpec chi = ChiSpec::constant(1.0);
    PovznerKernelSpec kernel{};

    static CollisionModel boltzmann() { return {}; }
    static CollisionModel enskog(double sigma, const ChiSpec& chi) { return {Kind::enskog, sigma, chi, {}}; }
    static CollisionModel povzner(const PovznerKernelSpec& k) { return {Kind::povzner, 0.0, ChiSpec::constant(1.0), k}; }

    void validate() const;
    std::string name() const;
};

ordered_json to_json(const CollisionModel& m);

// Hard-sphere Boltzmann operator at (x, v).
IntegralResult<double> eval_boltzmann(const DistributionSpec& f, const DistributionSpec& g, const Vec3& x, const Vec3& v,
                                      const QuadratureSpec& q);
// Standard Enskog operator with diameter sigma and correlation chi.
IntegralResult<double> eval_enskog(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g, const Vec3& x,
                                   const Vec3& v, const QuadratureSpec& q);
// Povzner operator; y ranges over the kernel's ball about x.
IntegralResult<double> eval_povzner(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g, const Vec3& x,
                                    const Vec3& v, const QuadratureSpec& q);
IntegralResult<double> eval_model(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g, const Vec3& x,
                                  const Vec3& v, const QuadratureSpec& q);

// Pointwise integrands used by the sampled checks. Each returns (gain, loss) so that the
// operator is the integral of gain - loss.
struct GainLoss {
    double gain = 0.0;
    double loss = 0.0;
};
// Enskog/Boltzmann integrand in (w, n), including sigma^2 <v-w,n>_+ (Boltzmann: sigma^2 -> 1).
GainLoss collision_integrand_sphere(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g, const Vec3& x,
                                    const Vec3& v, const Vec3& w, const Vec3& n);
// Povzner integrand in (y, w), including J(x-y, v-w).
GainLoss collision_integrand_povzner(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g,
                                     const Vec3& x, const Vec3& y, const Vec3& v, const Vec3& w);

}  // namespace densegas
