#pragma once

// Shared machinery for the nested collision and current evaluators.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "densegas/collision.hpp"
#include "densegas/quadrature.hpp"

namespace densegas::internal {

// Node counts of one evaluation level.
struct Resolution {
    int line = 24;     // Gauss-Legendre nodes on half-line velocity variables
    int plane = 12;    // Gauss-Hermite nodes per axis of a velocity plane
    int polar = 8;     // sphere rule polar order
    int seg = 8;       // s, t, theta, r rules
    int azimuth = 24;  // trapezoid nodes around a cylinder axis
    double trunc = 6.0;
    Execution exec = Execution::parallel;
};

inline Resolution full_resolution(const QuadratureSpec& q) {
    Resolution r;
    r.line = q.r3_points_per_axis;
    r.plane = (q.r3_points_per_axis + 1) / 2;
    r.polar = q.sphere_polar_order();
    r.seg = q.segment_points;
    r.azimuth = q.r3_points_per_axis;
    r.trunc = q.r3_truncation_radius_sigmas;
    r.exec = q.execution;
    return r;
}

inline Resolution half_resolution(const QuadratureSpec& q) {
    Resolution r = full_resolution(q);
    r.line = std::max(2, r.line / 2);
    r.plane = std::max(1, (r.plane + 1) / 2);
    r.polar = std::max(1, (r.polar + 1) / 2);
    r.seg = std::max(1, r.seg / 2);
    r.azimuth = std::max(3, r.azimuth / 2);
    return r;
}

// Floor on the error estimate from rounding in a sum of terms with total magnitude m.
inline double roundoff_floor(double magnitude) { return 64.0 * std::numeric_limits<double>::epsilon() * magnitude; }

// Nodes of a Gauss-Legendre rule on [a, b]; empty when b <= a.
inline MappedNodes legendre_on(int n, double a, double b) {
    if (!(b > a)) return {};
    return map_legendre(n, a, b);
}

// Half-line interval [lo, hi] intersected with a window of half-width L about c.
inline std::pair<double, double> clip_window(double c_lo, double c_hi, double L, double lo, double hi) {
    return {std::max(lo, c_lo - L), std::min(hi, c_hi + L)};
}

struct Plane {
    // nodes xi1 x xi2 with product weights, about a center in (e1, e2) coordinates
    std::vector<double> xi1, xi2, w;
};

inline Plane hermite_plane(int n, double c1, double c2, double s) {
    const auto a = map_hermite(n, c1, s);
    const auto b = map_hermite(n, c2, s);
    Plane p;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            p.xi1.push_back(a.x[i]);
            p.xi2.push_back(b.x[j]);
            p.w.push_back(a.w[i] * b.w[j]);
        }
    return p;
}

// Polar disk grid (rho, psi) with area weights rho d rho d psi; rho in [0, R].
struct Disk {
    std::vector<double> c1, c2, rho, w;
};

inline Disk disk_grid(int nrho, int npsi, double R) {
    Disk d;
    if (!(R > 0.0)) return d;
    const auto r = map_legendre(nrho, 0.0, R);
    for (int i = 0; i < nrho; ++i)
        for (int j = 0; j < npsi; ++j) {
            const double psi = 2.0 * std::numbers::pi * (j + 0.5) / npsi;
            d.c1.push_back(r.x[i] * std::cos(psi));
            d.c2.push_back(r.x[i] * std::sin(psi));
            d.rho.push_back(r.x[i]);
            d.w.push_back(r.w[i] * r.x[i] * 2.0 * std::numbers::pi / npsi);
        }
    return d;
}

// Relative-velocity cylinder inside the ball |u| <= S about axis n: a = <u,n> split at 0,
// transverse disk of radius sqrt(S^2 - a^2).
struct CylinderNode {
    double a;       // along-axis component
    double c1, c2;  // transverse coordinates in (e1, e2)
    double w;       // full weight da dA
};

inline std::vector<CylinderNode> speed_ball_cylinder(int nline, int nrho, int npsi, double S) {
    std::vector<CylinderNode> out;
    const int nh = std::max(1, nline / 2);
    for (int half = 0; half < 2; ++half) {
        const auto al = half == 0 ? map_legendre(nh, -S, 0.0) : map_legendre(nh, 0.0, S);
        for (int i = 0; i < nh; ++i) {
            const double a = al.x[i];
            const double R = std::sqrt(std::max(0.0, S * S - a * a));
            const Disk d = disk_grid(nrho, npsi, R);
            for (std::size_t k = 0; k < d.w.size(); ++k) out.push_back({a, d.c1[k], d.c2[k], al.w[i] * d.w[k]});
        }
    }
    return out;
}

// Scalar integral with the absolute mass used for the rounding floor.
struct ScalarSum {
    double value = 0.0;
    double magnitude = 0.0;
    long nodes = 0;
    ScalarSum& operator+=(const ScalarSum& o) {
        value += o.value;
        magnitude += o.magnitude;
        nodes += o.nodes;
        return *this;
    }
};

}  // namespace densegas::internal
