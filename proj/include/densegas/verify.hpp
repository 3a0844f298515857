#pragma once

#include <string>
#include <vector>

#include "densegas/collision.hpp"
#include "densegas/currents.hpp"
#include "densegas/testfunctions.hpp"

namespace densegas {

// Collision invariant paired with the operator: 1, v_k or |v|^2.
struct Moment {
    enum class Kind { mass, momentum, energy };
    Kind kind = Kind::mass;
    int axis = 0;  // 1..3 for momentum

    static Moment mass() { return {Kind::mass, 0}; }
    static Moment momentum(int k);
    static Moment energy() { return {Kind::energy, 0}; }

    int slot() const;  // index into CurrentBundle arrays
    std::string name() const;
    double weight(const Vec3& v) const;
};

Moment parse_moment(const std::string& s);  // "mass", "momentum1".."momentum3", "energy"
std::vector<Moment> all_moments();

struct ToleranceSpec {
    double c1 = 3.0;  // multiplies quadrature error estimates
    double c2 = 3.0;  // multiplies the finite-difference truncation estimate
};

// Strong form at one phase-space point: weight(v) C[f,f](x,v) against
// div_v J + div_x I by second-order central differences.
VerificationReport check_divergence(const CollisionModel& m, const DistributionSpec& f, const Moment& moment, const Vec3& x,
                                    const Vec3& v, double h, const QuadratureSpec& q, const ToleranceSpec& tol = {});
// Same check for several moments sharing one set of stencil evaluations.
std::vector<VerificationReport> check_divergence_moments(const CollisionModel& m, const DistributionSpec& f,
                                                         const std::vector<Moment>& moments, const Vec3& x, const Vec3& v,
                                                         double h, const QuadratureSpec& q, const ToleranceSpec& tol = {});
// Residual at (h, q) and at (h/2, q.refined()); passes when the observed order
// log2(|r0|/|r1|) is at least min_order.
VerificationReport refinement_study(const CollisionModel& m, const DistributionSpec& f, const Moment& moment, const Vec3& x,
                                    const Vec3& v, double h, const QuadratureSpec& q, double min_order = 1.0);

// Weak form: (weight C[f,f], phi) in single-gain form against -(J, grad_v phi) - (I, grad_x phi),
// all pairings by randomized QMC; tolerance is n_sigma combined standard errors.
VerificationReport check_weakform(const CollisionModel& m, const DistributionSpec& f, const Moment& moment,
                                  const TestFunctionSpec& phi, const QuadratureSpec& q, double n_sigma = 3.0);

// int int C[f,f] (1, v, |v|^2) dv dx, normalized by int int (|gain| + |loss|)(1 + |v|^2).
// residual = max over components of |normalized value| / component tolerance; tolerance = 1.
VerificationReport check_global_conservation(const CollisionModel& m, const DistributionSpec& f, const QuadratureSpec& q,
                                             double rel_floor = 1e-3, double n_sigma = 3.0);

// D = 1/2 int f f J ln(f'f'/(ff)) for the Povzner model; passes when D <= n_sigma stderr and the
// pointwise bound a ln(b/a) <= b - a holds at every sample.
VerificationReport entropy_production_povzner(const CollisionModel& m, const DistributionSpec& f, double floor,
                                              const QuadratureSpec& q, double n_sigma = 3.0);

}  // namespace densegas
