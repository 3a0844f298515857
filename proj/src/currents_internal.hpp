#pragma once

#include <array>

#include "densegas/currents.hpp"
#include "internal.hpp"

namespace densegas::internal {

// Raw sums of one evaluation level: currents plus the absolute mass behind each one.
struct CurrentSums {
    std::array<Vec3, 5> J{};
    std::array<Vec3, 5> I{};
    std::array<double, 5> J_mag{};
    std::array<double, 5> I_mag{};
    long nodes = 0;

    CurrentSums& operator+=(const CurrentSums& o) {
        for (int k = 0; k < 5; ++k) {
            J[k] += o.J[k];
            I[k] += o.I[k];
            J_mag[k] += o.J_mag[k];
            I_mag[k] += o.I_mag[k];
        }
        nodes += o.nodes;
        return *this;
    }
};

struct VectorSum {
    Vec3 value{};
    double magnitude = 0.0;
    long nodes = 0;
    VectorSum& operator+=(const VectorSum& o) {
        value += o.value;
        magnitude += o.magnitude;
        nodes += o.nodes;
        return *this;
    }
};

CurrentSums enskog_currents_level(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                                  const Resolution& res, unsigned parts);
CurrentSums povzner_currents_level(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                                   const Resolution& res, unsigned parts);

VectorSum enskog_landau_level(const WeightSpec& a, const WeightSpec& b, const DistributionSpec& f, const DistributionSpec& g,
                              const ChiSpec& chi, double sigma, const Vec3& x, const Frame& fr, const Vec3& v,
                              const Resolution& res);
VectorSum povzner_landau_level(const WeightSpec& a, const WeightSpec& b, const DistributionSpec& f, const DistributionSpec& g,
                               const PovznerKernelSpec& kernel, const Vec3& x, const Vec3& y, const Vec3& v,
                               const Resolution& res);

}  // namespace densegas::internal
