#include <chrono>
#include <cmath>
#include <limits>

#include "densegas/verify.hpp"

namespace densegas {

Moment Moment::momentum(int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("moment: momentum axis must be 1, 2 or 3");
    return {Kind::momentum, k};
}

int Moment::slot() const {
    switch (kind) {
        case Kind::mass: return 0;
        case Kind::momentum: return axis;
        case Kind::energy: return 4;
    }
    return 0;
}

std::string Moment::name() const {
    switch (kind) {
        case Kind::mass: return "mass";
        case Kind::momentum: return "momentum" + std::to_string(axis);
        case Kind::energy: return "energy";
    }
    return "unknown";
}

double Moment::weight(const Vec3& v) const {
    switch (kind) {
        case Kind::mass: return 1.0;
        case Kind::momentum: return v[axis - 1];
        case Kind::energy: return norm_sq(v);
    }
    return 0.0;
}

Moment parse_moment(const std::string& s) {
    if (s == "mass") return Moment::mass();
    if (s == "energy") return Moment::energy();
    if (s.size() == 9 && s.rfind("momentum", 0) == 0 && s[8] >= '1' && s[8] <= '3') return Moment::momentum(s[8] - '0');
    throw std::invalid_argument("unknown moment '" + s + "' (expected mass, momentum1..3, energy)");
}

std::vector<Moment> all_moments() {
    return {Moment::mass(), Moment::momentum(1), Moment::momentum(2), Moment::momentum(3), Moment::energy()};
}

namespace {

using Clock = std::chrono::steady_clock;

ordered_json vec_json(const Vec3& a) { return ordered_json::array({a.x1, a.x2, a.x3}); }

// Central-difference divergences of every current slot from one stencil.
struct Divergence {
    std::array<double, 5> v{};
    std::array<double, 5> x{};
    std::array<double, 5> error{};
};

struct StencilSteps {
    double hv;
    double hx;
};

StencilSteps steps(const DistributionSpec& f, const Vec3& x, const Vec3& v, double h) {
    StencilSteps s;
    s.hv = h * (1.0 + norm(v));
    if (f.uniform_in_x()) {
        s.hx = h * (1.0 + norm(x));
    } else {
        s.hx = h * (1.0 + norm(x) / f.spatial_width) * f.spatial_width;
    }
    return s;
}

Divergence stencil_level(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v, const StencilSteps& st,
                         const QuadratureSpec& q, bool half, long& nodes) {
    Divergence d;
    auto bundle = [&](const Vec3& xx, const Vec3& vv, unsigned parts) {
        CurrentBundle b = current_bundle_level(m, f, xx, vv, q, half, parts);
        nodes += b.nodes_used;
        return b;
    };
    for (int i = 0; i < 3; ++i) {
        const Vec3 e = unit_axis(i);
        const CurrentBundle vp = bundle(x, v + st.hv * e, kVelocityCurrents);
        const CurrentBundle vm = bundle(x, v - st.hv * e, kVelocityCurrents);
        const CurrentBundle xp = bundle(x + st.hx * e, v, kPositionCurrents);
        const CurrentBundle xm = bundle(x - st.hx * e, v, kPositionCurrents);
        for (int k = 0; k < 5; ++k) {
            d.v[k] += (vp.J[k][i] - vm.J[k][i]) / (2.0 * st.hv);
            d.x[k] += (xp.I[k][i] - xm.I[k][i]) / (2.0 * st.hx);
            // rounding is not smooth across the stencil, so it is divided by the step
            d.error[k] += (vp.J_error[k] + vm.J_error[k]) / (2.0 * st.hv) + (xp.I_error[k] + xm.I_error[k]) / (2.0 * st.hx);
        }
    }
    return d;
}

// Divergence at full resolution; error = |div(full) - div(half)| + propagated rounding.
Divergence stencil(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v, const StencilSteps& st,
                   const QuadratureSpec& q, long& nodes) {
    Divergence d = stencil_level(m, f, x, v, st, q, false, nodes);
    const Divergence lo = stencil_level(m, f, x, v, st, q, true, nodes);
    for (int k = 0; k < 5; ++k) d.error[k] += std::abs((d.v[k] + d.x[k]) - (lo.v[k] + lo.x[k]));
    return d;
}

}  // namespace

std::vector<VerificationReport> check_divergence_moments(const CollisionModel& m, const DistributionSpec& f,
                                                         const std::vector<Moment>& moments, const Vec3& x, const Vec3& v,
                                                         double h, const QuadratureSpec& q, const ToleranceSpec& tol) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("check_divergence: h must be > 0");
    if (m.kind == CollisionModel::Kind::boltzmann)
        throw std::invalid_argument("check_divergence: model must be enskog or povzner");
    f.validate();
    const auto t0 = Clock::now();
    long nodes = 0;
    const IntegralResult<double> C = eval_model(m, f, f, x, v, q);
    nodes += C.nodes_used;
    const StencilSteps st = steps(f, x, v, h);
    const Divergence d1 = stencil(m, f, x, v, st, q, nodes);
    const StencilSteps st2{2.0 * st.hv, 2.0 * st.hx};
    const Divergence d2 = stencil_level(m, f, x, v, st2, q, false, nodes);
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();

    std::vector<VerificationReport> out;
    for (const Moment& mo : moments) {
        const int k = mo.slot();
        VerificationReport r;
        r.check = "divergence/" + mo.name();
        r.kind = "divergence";
        r.moment = mo.name();
        r.model = m.name();
        const double w = mo.weight(v);
        r.lhs = w * C.value;
        r.lhs_error = std::abs(w) * C.error_estimate;
        r.rhs = d1.v[k] + d1.x[k];
        r.rhs_error = d1.error[k];
        r.residual = r.lhs - r.rhs;
        // Richardson: D(2h) - D(h) = 3 c h^2 + O(h^4) for the O(h^2) central-difference error c h^2.
        const double fd = std::abs((d2.v[k] + d2.x[k]) - r.rhs) / 3.0;
        r.tolerance = tol.c1 * (r.lhs_error + r.rhs_error) + tol.c2 * fd;
        r.decide();
        r.wall_time = elapsed / static_cast<double>(moments.size());
        r.quadrature = to_json(q);
        r.details = {{"x", vec_json(x)},
                     {"v", vec_json(v)},
                     {"h", h},
                     {"h_v", st.hv},
                     {"h_x", st.hx},
                     {"div_v", d1.v[k]},
                     {"div_x", d1.x[k]},
                     {"fd_truncation", fd},
                     {"third_derivative_scale", fd / (h * h)},
                     {"c1", tol.c1},
                     {"c2", tol.c2},
                     {"nodes_used", nodes},
                     {"convention", "weight*C = div_v J + div_x I"}};
        out.push_back(std::move(r));
    }
    return out;
}

VerificationReport check_divergence(const CollisionModel& m, const DistributionSpec& f, const Moment& moment, const Vec3& x,
                                    const Vec3& v, double h, const QuadratureSpec& q, const ToleranceSpec& tol) {
    return check_divergence_moments(m, f, {moment}, x, v, h, q, tol).front();
}

VerificationReport refinement_study(const CollisionModel& m, const DistributionSpec& f, const Moment& moment, const Vec3& x,
                                    const Vec3& v, double h, const QuadratureSpec& q, double min_order) {
    const auto t0 = Clock::now();
    const QuadratureSpec q1 = q.refined();
    const VerificationReport r0 = check_divergence(m, f, moment, x, v, h, q);
    const VerificationReport r1 = check_divergence(m, f, moment, x, v, 0.5 * h, q1);
    const double a0 = std::abs(r0.residual), a1 = std::abs(r1.residual);
    double order;
    if (a1 == 0.0) order = std::numeric_limits<double>::infinity();
    else if (a0 == 0.0) order = -std::numeric_limits<double>::infinity();
    else order = std::log2(a0 / a1);

    VerificationReport r;
    r.check = "refinement/" + moment.name();
    r.kind = "refinement";
    r.moment = moment.name();
    r.model = m.name();
    r.lhs = a0;
    r.rhs = a1;
    r.residual = order >= min_order ? 0.0 : min_order - order;
    r.tolerance = 0.0;
    r.lhs_error = r0.tolerance;
    r.rhs_error = r1.tolerance;
    r.decide();
    r.quadrature = to_json(q);
    r.details = {{"h", ordered_json::array({h, 0.5 * h})},
                 {"r3_points_per_axis", ordered_json::array({q.r3_points_per_axis, q1.r3_points_per_axis})},
                 {"residuals", ordered_json::array({r0.residual, r1.residual})},
                 {"tolerances", ordered_json::array({r0.tolerance, r1.tolerance})},
                 {"observed_order", std::isfinite(order) ? ordered_json(order) : ordered_json(order > 0 ? "inf" : "-inf")},
                 {"min_order", min_order}};
    r.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

}  // namespace densegas
