#pragma once

#include <limits>
#include <string>

#include "densegas/geometry.hpp"
#include "densegas/report.hpp"

namespace densegas {

// Smooth test function phi(x, v) with analytic gradients.
//   gaussian_poly: P(dx, dv) exp(-|dx|^2/2 wx^2 - |dv|^2/2 wv^2), dx = x - cx, dv = v - cv,
//                  P = c0 + <lx,dx> + <lv,dv> + dx'Qx dx + dv'Qv dv + dx'Qxv dv.
//                  An infinite width drops that Gaussian factor.
//   compact_bump:  exp(-1/(1 - r^2)) for r^2 = |dx|^2/Rx^2 + |dv|^2/Rv^2 < 1, else 0.
struct TestFunctionSpec {
    enum class Kind { gaussian_poly, compact_bump };
    Kind kind = Kind::gaussian_poly;
    Vec3 center_x{};
    Vec3 center_v{};
    double width_x = 1.0;  // gaussian_poly widths, or compact_bump radii
    double width_v = 1.0;
    double c0 = 1.0;
    Vec3 lin_x{};
    Vec3 lin_v{};
    Mat3 quad_x{};
    Mat3 quad_v{};
    Mat3 quad_xv{};

    static TestFunctionSpec constant(double c);
    static TestFunctionSpec bump(const Vec3& cx, const Vec3& cv, double rx, double rv);

    void validate() const;
    double value(const Vec3& x, const Vec3& v) const;
    Vec3 grad_x(const Vec3& x, const Vec3& v) const;
    Vec3 grad_v(const Vec3& x, const Vec3& v) const;
    std::string name() const;
};

ordered_json to_json(const TestFunctionSpec& phi);

}  // namespace densegas
