#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace densegas {

struct Vec3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
    constexpr double& at(int i) { return i == 0 ? x1 : (i == 1 ? x2 : x3); }

    constexpr Vec3& operator+=(const Vec3& o) { x1 += o.x1; x2 += o.x2; x3 += o.x3; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x1 -= o.x1; x2 -= o.x2; x3 -= o.x3; return *this; }
    constexpr Vec3& operator*=(double s) { x1 *= s; x2 *= s; x3 *= s; return *this; }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x1, -a.x2, -a.x3}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x1 / s, a.x2 / s, a.x3 / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }
constexpr double norm_sq(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm_sq(a)); }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}
constexpr Vec3 unit_axis(int i) { return {i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0, i == 2 ? 1.0 : 0.0}; }
inline bool is_finite(const Vec3& a) { return std::isfinite(a.x1) && std::isfinite(a.x2) && std::isfinite(a.x3); }
inline double max_abs(const Vec3& a) { return std::max({std::abs(a.x1), std::abs(a.x2), std::abs(a.x3)}); }

std::string to_string(const Vec3& a);

class InvalidDirection : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Direction on the unit sphere; construction checks |n| = 1 to 1e-9.
class UnitVec3 {
public:
    static UnitVec3 checked(const Vec3& n);
    static UnitVec3 normalized(const Vec3& n);
    const Vec3& vec() const { return n_; }
    double operator[](int i) const { return n_[i]; }
    operator const Vec3&() const { return n_; }

private:
    explicit UnitVec3(const Vec3& n) : n_(n) {}
    Vec3 n_;
};

// Orthonormal pair spanning the plane orthogonal to a unit vector.
struct Frame {
    Vec3 n, e1, e2;
};
Frame frame_about(const Vec3& n);

struct Mat3 {
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double operator()(int i, int j) const { return m[i][j]; }
    double& operator()(int i, int j) { return m[i][j]; }
    static Mat3 identity() {
        Mat3 r;
        r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
        return r;
    }
    static Mat3 outer(const Vec3& a, const Vec3& b) {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = a[i] * b[j];
        return r;
    }
    Mat3& operator+=(const Mat3& o) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] += o.m[i][j];
        return *this;
    }
    Vec3 row(int i) const { return {m[i][0], m[i][1], m[i][2]}; }
};

struct VelocityPair {
    Vec3 v;
    Vec3 w;
};

struct PositionPair {
    Vec3 x;
    Vec3 y;
};

// Elastic exchange along n. Involution; preserves v+w and |v|^2+|w|^2.
inline VelocityPair collide_raw(const Vec3& v, const Vec3& w, const Vec3& n) {
    const double a = dot(v - w, n);
    return {v - a * n, w + a * n};
}
VelocityPair collide(const VelocityPair& p, const UnitVec3& n);

// (a cos t + b sin t, -a sin t + b cos t)
inline std::pair<Vec3, Vec3> rotate_pair(const Vec3& a, const Vec3& b, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * a + s * b, -s * a + c * b};
}
inline VelocityPair rotate_velocities(const VelocityPair& p, double theta) {
    auto [a, b] = rotate_pair(p.v, p.w, theta);
    return {a, b};
}
inline PositionPair rotate_positions(const PositionPair& p, double theta) {
    auto [a, b] = rotate_pair(p.x, p.y, theta);
    return {a, b};
}

// Result of the randomized property suite for collide and rotate_pair.
struct TransformSuiteResult {
    double involution_error = 0.0;
    double momentum_error = 0.0;
    double energy_error = 0.0;
    double jacobian_det = 0.0;
    double jacobian_error = 0.0;
    double rotation_energy_error = 0.0;
    double rotation_group_error = 0.0;
    double rotation_quarter_error = 0.0;
    double rotation_jacobian_error = 0.0;
    long samples = 0;
};

// Relative errors over random (v, w, n, theta); the collision Jacobian is taken by
// central differences at a fixed configuration.
TransformSuiteResult transform_property_suite(long samples, unsigned long seed);

}  // namespace densegas
