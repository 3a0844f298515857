#pragma once

#include <iosfwd>
#include <vector>

#include "densegas/collision.hpp"

namespace densegas {

// Numerical moments with per-entry error estimates.
struct MomentResult {
    MomentFields fields;
    double rho_error = 0.0;
    Vec3 u_error{};
    Mat3 P_error{};
    Vec3 q_error{};
    long nodes_used = 0;
};

// rho, u, P = int (v-u)(v-u) f dv, q = 1/2 int (v-u)|v-u|^2 f dv by tensor cubature over v.
// Below rho = 1e-14 every field is zero.
MomentResult compute_moments(const DistributionSpec& f, const Vec3& x, const QuadratureSpec& q);

// v-integrated position currents: stress_correction row l = int I_l dv, energy_correction = int I_4 dv.
struct CollisionCorrections {
    Mat3 stress_correction{};
    Vec3 energy_correction{};
    Mat3 stress_error{};
    Vec3 energy_error{};
    long nodes_used = 0;
};

CollisionCorrections collision_corrections(const CollisionModel& m, const DistributionSpec& f, const Vec3& x,
                                           const QuadratureSpec& q);
// Same quantity by an outer Gauss-Legendre cubature over v (outer_points per axis, +-trunc thermal
// speeds about the bulk velocity) wrapped around the pointwise position currents at resolution q.
CollisionCorrections collision_corrections_outer_v(const CollisionModel& m, const DistributionSpec& f, const Vec3& x,
                                                   const QuadratureSpec& q, int outer_points = 8);

// Regular grid: n points per axis spanning [lo, hi] on each axis (n = 1 uses lo).
std::vector<Vec3> x_grid(const Vec3& lo, const Vec3& hi, int n);

// One CSV row per grid point: x, rho, u, P (6 upper entries), q, and, when a dense-gas model is
// given, the 9 stress-correction and 3 energy-correction entries.
void write_moments_csv(std::ostream& out, const DistributionSpec& f, const CollisionModel* m, const std::vector<Vec3>& grid,
                       const QuadratureSpec& q);

}  // namespace densegas
