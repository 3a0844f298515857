#include "densegas/geometry.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numbers>
#include <random>

namespace densegas {

std::string to_string(const Vec3& a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", a.x1, a.x2, a.x3);
    return buf;
}

UnitVec3 UnitVec3::checked(const Vec3& n) {
    const double r = norm(n);
    if (!std::isfinite(r) || std::abs(r - 1.0) > 1e-9)
        throw InvalidDirection("direction " + to_string(n) + " is not a unit vector");
    return UnitVec3(n);
}

UnitVec3 UnitVec3::normalized(const Vec3& n) {
    const double r = norm(n);
    if (!std::isfinite(r) || r == 0.0) throw InvalidDirection("cannot normalize " + to_string(n));
    return UnitVec3(n / r);
}

Frame frame_about(const Vec3& n) {
    // pick the axis least aligned with n
    const Vec3 ref = std::abs(n.x1) < 0.6 ? Vec3{1, 0, 0} : (std::abs(n.x2) < 0.6 ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    Vec3 e1 = ref - dot(ref, n) * n;
    e1 = e1 / norm(e1);
    return {n, e1, cross(n, e1)};
}

VelocityPair collide(const VelocityPair& p, const UnitVec3& n) { return collide_raw(p.v, p.w, n.vec()); }

namespace {

Vec3 random_gaussian(std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> nd(0.0, scale);
    const double a = nd(rng);
    const double b = nd(rng);
    const double c = nd(rng);
    return {a, b, c};
}

Vec3 random_direction(std::mt19937_64& rng) {
    for (;;) {
        Vec3 g = random_gaussian(rng, 1.0);
        const double r = norm(g);
        if (r > 1e-3) return g / r;
    }
}

using State = std::array<double, 6>;

template <class Map>
double jacobian_det(Map&& map, const State& s0) {
    // 6x6 central-difference Jacobian, determinant by partial pivoting
    double jac[6][6];
    const double h = 1e-5;
    for (int j = 0; j < 6; ++j) {
        State sp = s0, sm = s0;
        sp[j] += h;
        sm[j] -= h;
        const State fp = map(sp), fm = map(sm);
        for (int i = 0; i < 6; ++i) jac[i][j] = (fp[i] - fm[i]) / (2 * h);
    }
    double det = 1.0;
    for (int c = 0; c < 6; ++c) {
        int p = c;
        for (int r = c + 1; r < 6; ++r)
            if (std::abs(jac[r][c]) > std::abs(jac[p][c])) p = r;
        if (jac[p][c] == 0.0) return 0.0;
        if (p != c) {
            for (int k = 0; k < 6; ++k) std::swap(jac[p][k], jac[c][k]);
            det = -det;
        }
        det *= jac[c][c];
        for (int r = c + 1; r < 6; ++r) {
            const double f = jac[r][c] / jac[c][c];
            for (int k = c; k < 6; ++k) jac[r][k] -= f * jac[c][k];
        }
    }
    return det;
}

State pack(const Vec3& v, const Vec3& w) { return {v.x1, v.x2, v.x3, w.x1, w.x2, w.x3}; }

}  // namespace

TransformSuiteResult transform_property_suite(long samples, unsigned long seed) {
    TransformSuiteResult r;
    r.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ut(-std::numbers::pi, std::numbers::pi);
    for (long i = 0; i < samples; ++i) {
        const Vec3 v = random_gaussian(rng, 1.0);
        const Vec3 w = random_gaussian(rng, 1.0);
        const Vec3 n = random_direction(rng);
        const double th = ut(rng);
        const double th2 = ut(rng);
        const double scale = std::max(1.0, norm(v) + norm(w));
        const double scale2 = std::max(1.0, norm_sq(v) + norm_sq(w));

        const auto p1 = collide_raw(v, w, n);
        const auto p2 = collide_raw(p1.v, p1.w, n);
        r.involution_error = std::max(r.involution_error, std::max(max_abs(p2.v - v), max_abs(p2.w - w)) / scale);
        r.momentum_error = std::max(r.momentum_error, max_abs(p1.v + p1.w - v - w) / scale);
        r.energy_error = std::max(r.energy_error,
                                  std::abs(norm_sq(p1.v) + norm_sq(p1.w) - norm_sq(v) - norm_sq(w)) / scale2);

        const auto [rv, rw] = rotate_pair(v, w, th);
        r.rotation_energy_error =
            std::max(r.rotation_energy_error, std::abs(norm_sq(rv) + norm_sq(rw) - norm_sq(v) - norm_sq(w)) / scale2);
        const auto [av, aw] = rotate_pair(rv, rw, th2);
        const auto [bv, bw] = rotate_pair(v, w, th + th2);
        r.rotation_group_error = std::max(r.rotation_group_error, std::max(max_abs(av - bv), max_abs(aw - bw)) / scale);
        const auto [qv, qw] = rotate_pair(v, w, std::numbers::pi / 2);
        r.rotation_quarter_error = std::max(r.rotation_quarter_error, std::max(max_abs(qv - w), max_abs(qw + v)) / scale);
    }

    std::mt19937_64 jr(seed ^ 0x9e3779b97f4a7c15ULL);
    const Vec3 v = random_gaussian(jr, 1.0), w = random_gaussian(jr, 1.0), n = random_direction(jr);
    r.jacobian_det = jacobian_det(
        [&](const State& s) {
            const auto p = collide_raw({s[0], s[1], s[2]}, {s[3], s[4], s[5]}, n);
            return pack(p.v, p.w);
        },
        pack(v, w));
    r.jacobian_error = std::abs(r.jacobian_det + 1.0);
    const double th = 0.7;
    const double rdet = jacobian_det(
        [&](const State& s) {
            const auto [a, b] = rotate_pair({s[0], s[1], s[2]}, {s[3], s[4], s[5]}, th);
            return pack(a, b);
        },
        pack(v, w));
    r.rotation_jacobian_error = std::abs(rdet - 1.0);
    return r;
}

}  // namespace densegas
