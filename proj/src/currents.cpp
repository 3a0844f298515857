#include "densegas/currents.hpp"

#include "currents_internal.hpp"

namespace densegas {

using internal::CurrentSums;
using internal::Resolution;

std::string to_string(CurrentTag t) {
    switch (t) {
        case CurrentTag::J0: return "J0";
        case CurrentTag::Jk: return "Jk";
        case CurrentTag::Ik: return "Ik";
        case CurrentTag::J4: return "J4";
        case CurrentTag::I4: return "I4";
    }
    return "unknown";
}

namespace {

CurrentSums level_sums(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v, const Resolution& res,
                       unsigned parts) {
    switch (m.kind) {
        case CollisionModel::Kind::enskog: return internal::enskog_currents_level(m, f, x, v, res, parts);
        case CollisionModel::Kind::povzner: return internal::povzner_currents_level(m, f, x, v, res, parts);
        case CollisionModel::Kind::boltzmann: break;
    }
    throw std::invalid_argument("currents: model must be enskog or povzner");
}

CurrentBundle to_bundle(const CurrentSums& s) {
    CurrentBundle b;
    b.J = s.J;
    b.I = s.I;
    for (int k = 0; k < 5; ++k) {
        b.J_error[k] = internal::roundoff_floor(s.J_mag[k]);
        b.I_error[k] = internal::roundoff_floor(s.I_mag[k]);
    }
    b.nodes_used = s.nodes;
    return b;
}

int check_axis(int k, const char* what) {
    if (k < 1 || k > 3) throw std::invalid_argument(std::string(what) + ": axis must be 1, 2 or 3");
    return k;
}

CurrentField field(const CurrentBundle& b, CurrentTag tag, int axis, bool position, int slot, const CollisionModel& m) {
    CurrentField c;
    c.value = position ? b.I[slot] : b.J[slot];
    c.error_estimate = position ? b.I_error[slot] : b.J_error[slot];
    c.which = tag;
    c.axis = axis;
    c.model = m.kind;
    c.nodes_used = b.nodes_used;
    return c;
}

}  // namespace

CurrentBundle current_bundle_level(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                                   const QuadratureSpec& q, bool half, unsigned parts) {
    q.validate();
    m.validate();
    const Resolution res = half ? internal::half_resolution(q) : internal::full_resolution(q);
    return to_bundle(level_sums(m, f, x, v, res, parts));
}

CurrentBundle current_bundle(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                             const QuadratureSpec& q, unsigned parts) {
    q.validate();
    m.validate();
    const CurrentSums hi = level_sums(m, f, x, v, internal::full_resolution(q), parts);
    const CurrentSums lo = level_sums(m, f, x, v, internal::half_resolution(q), parts);
    CurrentBundle b = to_bundle(hi);
    b.nodes_used += lo.nodes;
    for (int k = 0; k < 5; ++k) {
        b.J_error[k] += norm(hi.J[k] - lo.J[k]);
        b.I_error[k] += norm(hi.I[k] - lo.I[k]);
    }
    return b;
}

CurrentField mass_current(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                          const QuadratureSpec& q) {
    return field(current_bundle(m, f, x, v, q, kVelocityCurrents), CurrentTag::J0, 0, false, 0, m);
}

CurrentField momentum_current_v(const CollisionModel& m, const DistributionSpec& f, int k, const Vec3& x, const Vec3& v,
                                const QuadratureSpec& q) {
    check_axis(k, "momentum_current_v");
    return field(current_bundle(m, f, x, v, q, kVelocityCurrents), CurrentTag::Jk, k, false, k, m);
}

CurrentField momentum_current_x(const CollisionModel& m, const DistributionSpec& f, int l, const Vec3& x, const Vec3& v,
                                const QuadratureSpec& q) {
    check_axis(l, "momentum_current_x");
    return field(current_bundle(m, f, x, v, q, kPositionCurrents), CurrentTag::Ik, l, true, l, m);
}

CurrentField energy_current_v(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                              const QuadratureSpec& q) {
    return field(current_bundle(m, f, x, v, q, kVelocityCurrents), CurrentTag::J4, 0, false, 4, m);
}

CurrentField energy_current_x(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                              const QuadratureSpec& q) {
    return field(current_bundle(m, f, x, v, q, kPositionCurrents), CurrentTag::I4, 0, true, 4, m);
}

IntegralResult<Vec3> landau_integrand_enskog(const WeightSpec& a, const WeightSpec& b, const DistributionSpec& f,
                                             const DistributionSpec& g, const ChiSpec& chi, double sigma, const Vec3& x,
                                             const UnitVec3& n, const Vec3& v, const QuadratureSpec& q) {
    q.validate();
    const Frame fr = frame_about(n);
    const auto hi = internal::enskog_landau_level(a, b, f, g, chi, sigma, x, fr, v, internal::full_resolution(q));
    const auto lo = internal::enskog_landau_level(a, b, f, g, chi, sigma, x, fr, v, internal::half_resolution(q));
    return {hi.value, norm(hi.value - lo.value) + internal::roundoff_floor(hi.magnitude), hi.nodes + lo.nodes};
}

IntegralResult<Vec3> landau_integrand_povzner(const WeightSpec& a, const WeightSpec& b, const DistributionSpec& f,
                                              const DistributionSpec& g, const PovznerKernelSpec& kernel, const Vec3& x,
                                              const Vec3& y, const Vec3& v, const QuadratureSpec& q) {
    q.validate();
    const auto hi = internal::povzner_landau_level(a, b, f, g, kernel, x, y, v, internal::full_resolution(q));
    const auto lo = internal::povzner_landau_level(a, b, f, g, kernel, x, y, v, internal::half_resolution(q));
    return {hi.value, norm(hi.value - lo.value) + internal::roundoff_floor(hi.magnitude), hi.nodes + lo.nodes};
}

// ---------------------------------------------------------------- pointwise densities

std::array<double, 5> enskog_translation_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& x,
                                                 const Vec3& n, const Vec3& vs, const Vec3& ws) {
    const double s = m.sigma;
    const double base = s * s * chi_eval(m.chi, x + 0.5 * s * n) * f(x, vs) * f(x + s * n, ws);
    if (base == 0.0) return {};
    const double vn = dot(vs, n), wn = dot(ws, n);
    return {base, base * (vs.x1 - vn * n.x1 + wn * n.x1), base * (vs.x2 - vn * n.x2 + wn * n.x2),
            base * (vs.x3 - vn * n.x3 + wn * n.x3), base * (norm_sq(vs) - vn * vn + wn * wn)};
}

std::array<double, 4> enskog_rotation_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& n,
                                              const Vec3& V, const Vec3& W) {
    const double b = dot(V - W, n);
    if (!(b > 0.0)) return {};
    const double s = m.sigma;
    const double base = 0.5 * s * s * chi_eval(m.chi, x - 0.5 * s * n) * f(x - s * n, V) * f(x, W) * b * b;
    return {base * n.x1, base * n.x2, base * n.x3, base * dot(V + W, n)};
}

std::array<double, 4> enskog_position_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& n,
                                              double s, const Vec3& v, const Vec3& w) {
    const double b = dot(v - w, n);
    if (!(b > 0.0)) return {};
    const double sg = m.sigma;
    const double base =
        -0.5 * sg * sg * chi_eval(m.chi, x + (0.5 * sg - s) * n) * f(x - s * n, v) * f(x + (sg - s) * n, w) * b * b;
    return {base * n.x1, base * n.x2, base * n.x3, base * dot(v + w, n)};
}

std::array<double, 5> povzner_translation_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& x,
                                                  const Vec3& y, const Vec3& vs, const Vec3& ws) {
    const Vec3 d = y - x;
    const double r = norm(d);
    if (r < 1e-12) return {};
    const Vec3 n = d / r;
    const double base = kernel_eval_dir(m.kernel, r, n, vs - ws) * f(x, vs) * f(y, ws);
    if (base == 0.0) return {};
    const double vn = dot(vs, n), wn = dot(ws, n);
    return {base, base * (vs.x1 - vn * n.x1 + wn * n.x1), base * (vs.x2 - vn * n.x2 + wn * n.x2),
            base * (vs.x3 - vn * n.x3 + wn * n.x3), base * (norm_sq(vs) - vn * vn + wn * wn)};
}

std::array<double, 4> povzner_rotation_density(const CollisionModel& m, const DistributionSpec& f, const Vec3& X, const Vec3& Y,
                                               const Vec3& V, const Vec3& W) {
    const Vec3 d = Y - X;
    const double r = norm(d);
    if (r < 1e-12) return {};
    const Vec3 mm = d / r;
    const double J = kernel_eval_dir(m.kernel, r, mm, V - W);
    if (J == 0.0) return {};
    const double base = 0.5 * f(X, V) * f(Y, W) * J * dot(V - W, mm);
    return {base * mm.x1, base * mm.x2, base * mm.x3, base * dot(V + W, mm)};
}

}  // namespace densegas
