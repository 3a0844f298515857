#include "densegas/testfunctions.hpp"

#include <cmath>
#include <stdexcept>

namespace densegas {

namespace {

Vec3 mul(const Mat3& a, const Vec3& x) {
    return {a(0, 0) * x.x1 + a(0, 1) * x.x2 + a(0, 2) * x.x3, a(1, 0) * x.x1 + a(1, 1) * x.x2 + a(1, 2) * x.x3,
            a(2, 0) * x.x1 + a(2, 1) * x.x2 + a(2, 2) * x.x3};
}

Vec3 mul_t(const Mat3& a, const Vec3& x) {
    return {a(0, 0) * x.x1 + a(1, 0) * x.x2 + a(2, 0) * x.x3, a(0, 1) * x.x1 + a(1, 1) * x.x2 + a(2, 1) * x.x3,
            a(0, 2) * x.x1 + a(1, 2) * x.x2 + a(2, 2) * x.x3};
}

bool all_finite(const Mat3& a) {
    for (int i = 0; i < 3; ++i)
        if (!is_finite(a.row(i))) return false;
    return true;
}

ordered_json mat_json(const Mat3& a) {
    return ordered_json::array({{a(0, 0), a(0, 1), a(0, 2)}, {a(1, 0), a(1, 1), a(1, 2)}, {a(2, 0), a(2, 1), a(2, 2)}});
}

ordered_json width_json(double w) { return std::isinf(w) ? ordered_json("inf") : ordered_json(w); }

struct Gauss {
    double value;
    Vec3 dlog_x;  // gradient of the log of the Gaussian factor
    Vec3 dlog_v;
};

Gauss gauss_factor(const TestFunctionSpec& p, const Vec3& dx, const Vec3& dv) {
    double e = 0.0;
    Gauss g{1.0, {}, {}};
    if (std::isfinite(p.width_x)) {
        const double s2 = p.width_x * p.width_x;
        e -= 0.5 * norm_sq(dx) / s2;
        g.dlog_x = -1.0 / s2 * dx;
    }
    if (std::isfinite(p.width_v)) {
        const double s2 = p.width_v * p.width_v;
        e -= 0.5 * norm_sq(dv) / s2;
        g.dlog_v = -1.0 / s2 * dv;
    }
    g.value = std::exp(e);
    return g;
}

double poly(const TestFunctionSpec& p, const Vec3& dx, const Vec3& dv) {
    return p.c0 + dot(p.lin_x, dx) + dot(p.lin_v, dv) + dot(dx, mul(p.quad_x, dx)) + dot(dv, mul(p.quad_v, dv)) +
           dot(dx, mul(p.quad_xv, dv));
}

double bump_r2(const TestFunctionSpec& p, const Vec3& dx, const Vec3& dv) {
    return norm_sq(dx) / (p.width_x * p.width_x) + norm_sq(dv) / (p.width_v * p.width_v);
}

}  // namespace

TestFunctionSpec TestFunctionSpec::constant(double c) {
    TestFunctionSpec p;
    p.width_x = p.width_v = std::numeric_limits<double>::infinity();
    p.c0 = c;
    return p;
}

TestFunctionSpec TestFunctionSpec::bump(const Vec3& cx, const Vec3& cv, double rx, double rv) {
    TestFunctionSpec p;
    p.kind = Kind::compact_bump;
    p.center_x = cx;
    p.center_v = cv;
    p.width_x = rx;
    p.width_v = rv;
    return p;
}

void TestFunctionSpec::validate() const {
    if (!is_finite(center_x) || !is_finite(center_v)) throw std::invalid_argument("phi: centers must be finite");
    if (!(width_x > 0.0) || !(width_v > 0.0)) throw std::invalid_argument("phi: widths must be > 0");
    if (kind == Kind::compact_bump) {
        if (std::isinf(width_x) || std::isinf(width_v)) throw std::invalid_argument("phi: bump radii must be finite");
        return;
    }
    if (!std::isfinite(c0) || !is_finite(lin_x) || !is_finite(lin_v) || !all_finite(quad_x) || !all_finite(quad_v) ||
        !all_finite(quad_xv))
        throw std::invalid_argument("phi: polynomial coefficients must be finite");
}

double TestFunctionSpec::value(const Vec3& x, const Vec3& v) const {
    const Vec3 dx = x - center_x, dv = v - center_v;
    if (kind == Kind::compact_bump) {
        const double r2 = bump_r2(*this, dx, dv);
        return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
    }
    return poly(*this, dx, dv) * gauss_factor(*this, dx, dv).value;
}

Vec3 TestFunctionSpec::grad_x(const Vec3& x, const Vec3& v) const {
    const Vec3 dx = x - center_x, dv = v - center_v;
    if (kind == Kind::compact_bump) {
        const double r2 = bump_r2(*this, dx, dv);
        if (r2 >= 1.0) return {};
        const double t = 1.0 - r2;
        return (-std::exp(-1.0 / t) / (t * t) * 2.0 / (width_x * width_x)) * dx;
    }
    const Gauss g = gauss_factor(*this, dx, dv);
    const Vec3 dP = lin_x + mul(quad_x, dx) + mul_t(quad_x, dx) + mul(quad_xv, dv);
    return g.value * (dP + poly(*this, dx, dv) * g.dlog_x);
}

Vec3 TestFunctionSpec::grad_v(const Vec3& x, const Vec3& v) const {
    const Vec3 dx = x - center_x, dv = v - center_v;
    if (kind == Kind::compact_bump) {
        const double r2 = bump_r2(*this, dx, dv);
        if (r2 >= 1.0) return {};
        const double t = 1.0 - r2;
        return (-std::exp(-1.0 / t) / (t * t) * 2.0 / (width_v * width_v)) * dv;
    }
    const Gauss g = gauss_factor(*this, dx, dv);
    const Vec3 dP = lin_v + mul(quad_v, dv) + mul_t(quad_v, dv) + mul_t(quad_xv, dx);
    return g.value * (dP + poly(*this, dx, dv) * g.dlog_v);
}

std::string TestFunctionSpec::name() const { return kind == Kind::compact_bump ? "compact_bump" : "gaussian_poly"; }

ordered_json to_json(const TestFunctionSpec& p) {
    ordered_json j;
    j["type"] = p.name();
    j["center_x"] = {p.center_x.x1, p.center_x.x2, p.center_x.x3};
    j["center_v"] = {p.center_v.x1, p.center_v.x2, p.center_v.x3};
    if (p.kind == TestFunctionSpec::Kind::compact_bump) {
        j["radius_x"] = p.width_x;
        j["radius_v"] = p.width_v;
        return j;
    }
    j["width_x"] = width_json(p.width_x);
    j["width_v"] = width_json(p.width_v);
    j["c0"] = p.c0;
    j["lin_x"] = {p.lin_x.x1, p.lin_x.x2, p.lin_x.x3};
    j["lin_v"] = {p.lin_v.x1, p.lin_v.x2, p.lin_v.x3};
    j["quad_x"] = mat_json(p.quad_x);
    j["quad_v"] = mat_json(p.quad_v);
    j["quad_xv"] = mat_json(p.quad_xv);
    return j;
}

}  // namespace densegas
