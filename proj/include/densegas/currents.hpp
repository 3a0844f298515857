#pragma once

#include <array>
#include <string>

#include "densegas/collision.hpp"

namespace densegas {

// Scalar weight applied to one argument of a bilinear current, evaluated at the
// (shifted) velocity c and direction n: 1, c_k, |c|^2, <c,n>, <c,n> n_k, <c,n>^2.
struct WeightSpec {
    enum class Kind { one, component, speed_sq, dot_n, dot_n_component, dot_n_sq };
    Kind kind = Kind::one;
    int axis = 0;  // 0-based, used by component and dot_n_component

    static WeightSpec one() { return {Kind::one, 0}; }
    static WeightSpec component(int k) { return {Kind::component, k}; }
    static WeightSpec speed_sq() { return {Kind::speed_sq, 0}; }
    static WeightSpec dot_n() { return {Kind::dot_n, 0}; }
    static WeightSpec dot_n_component(int k) { return {Kind::dot_n_component, k}; }
    static WeightSpec dot_n_sq() { return {Kind::dot_n_sq, 0}; }

    double operator()(const Vec3& c, const Vec3& n) const {
        switch (kind) {
            case Kind::one: return 1.0;
            case Kind::component: return c[axis];
            case Kind::speed_sq: return norm_sq(c);
            case Kind::dot_n: return dot(c, n);
            case Kind::dot_n_component: return dot(c, n) * n[axis];
            case Kind::dot_n_sq: { const double d = dot(c, n); return d * d; }
        }
        return 0.0;
    }
};

enum class CurrentTag { J0, Jk, Ik, J4, I4 };
std::string to_string(CurrentTag t);

struct CurrentField {
    Vec3 value{};
    double error_estimate = 0.0;
    CurrentTag which = CurrentTag::J0;
    int axis = 0;  // 1-based for Jk/Ik, 0 otherwise
    CollisionModel::Kind model = CollisionModel::Kind::enskog;
    long nodes_used = 0;
};

// Landau integrand for the Enskog model at direction n:
// sigma^2 chi(x+sigma n/2) n int dw int_0^{<v-w,n>_+} a(v+sn) f(x,v+sn) b(w+sn) g(x+sigma n,w+sn) ds.
IntegralResult<Vec3> landau_integrand_enskog(const WeightSpec& a, const WeightSpec& b, const DistributionSpec& f,
                                             const DistributionSpec& g, const ChiSpec& chi, double sigma, const Vec3& x,
                                             const UnitVec3& n, const Vec3& v, const QuadratureSpec& q);
// Landau integrand for the Povzner model at partner position y, n = (y-x)/|y-x|:
// n int dw J(x-y,v-w) int_0^{<v-w,n>} a(v+sn) f(x,v+sn) b(w+sn) g(y,w+sn) ds (oriented).
IntegralResult<Vec3> landau_integrand_povzner(const WeightSpec& a, const WeightSpec& b, const DistributionSpec& f,
                                              const DistributionSpec& g, const PovznerKernelSpec& kernel, const Vec3& x,
                                              const Vec3& y, const Vec3& v, const QuadratureSpec& q);

// Every current of one model at (x, v). Index 0 is mass, 1..3 momentum, 4 energy.
// I[0] is identically zero.
struct CurrentBundle {
    std::array<Vec3, 5> J{};
    std::array<Vec3, 5> I{};
    std::array<double, 5> J_error{};
    std::array<double, 5> I_error{};
    long nodes_used = 0;
};

enum CurrentParts : unsigned { kVelocityCurrents = 1u, kPositionCurrents = 2u, kAllCurrents = 3u };

CurrentBundle current_bundle(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                             const QuadratureSpec& q, unsigned parts = kAllCurrents);
// Single resolution level (full or half); the error fields hold only the rounding floor.
CurrentBundle current_bundle_level(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                                   const QuadratureSpec& q, bool half, unsigned parts = kAllCurrents);

CurrentField mass_current(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                          const QuadratureSpec& q);
CurrentField momentum_current_v(const CollisionModel& m, const DistributionSpec& f, int k, const Vec3& x, const Vec3& v,
                                const QuadratureSpec& q);
CurrentField momentum_current_x(const CollisionModel& m, const DistributionSpec& f, int l, const Vec3& x, const Vec3& v,
                                const QuadratureSpec& q);
CurrentField energy_current_v(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                              const QuadratureSpec& q);
CurrentField energy_current_x(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                              const QuadratureSpec& q);

// Pointwise current integrands, shared with the sampled weak-form pairings.
// Enskog translation term at (x, n) for pre-translation velocities (vs, ws) = (v+sn, w+sn):
// returns sigma^2 chi(x+sigma n/2) f(x,vs) f(x+sigma n,ws) times the five abc weights.
std::array<double, 5> enskog_translation_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& x,
                                                 const Vec3& n, const Vec3& vs, const Vec3& ws);
// Enskog rotation term: for rotated velocities (V, W) = (v_{-t}, w_{-t}) returns
// 1/2 sigma^2 chi(x - sigma n/2) f(x - sigma n, V) f(x, W) <V-W,n>_+^2 times (n_1, n_2, n_3, <V+W,n>).
std::array<double, 4> enskog_rotation_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& n,
                                              const Vec3& V, const Vec3& W);
// Enskog position term at offset s in [0, sigma]: -1/2 sigma^2 chi(x+(sigma/2-s)n) f(x-sn,v) f(x+(sigma-s)n,w)
// <v-w,n>_+^2 times (n_1, n_2, n_3, <v+w,n>); the current is this times n.
std::array<double, 4> enskog_position_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& n,
                                              double s, const Vec3& v, const Vec3& w);
// Povzner translation term: J(x-y, vs-ws) f(x,vs) f(y,ws) times the five abc weights, n = (y-x)/|y-x|.
std::array<double, 5> povzner_translation_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& x,
                                                  const Vec3& y, const Vec3& vs, const Vec3& ws);
// Povzner rotation term for rotated positions/velocities (X, Y, V, W):
// 1/2 f(X,V) f(Y,W) J(X-Y, V-W) <V-W, m> times (m_1, m_2, m_3, <V+W, m>), m = (Y-X)/|Y-X|.
std::array<double, 4> povzner_rotation_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& X, const Vec3& Y,
                                               const Vec3& V, const Vec3& W);

}  // namespace densegas
