#include "densegas/moments.hpp"

#include <iomanip>
#include <ostream>

#include "densegas/currents.hpp"
#include "internal.hpp"

namespace densegas {

namespace {

constexpr double kRhoFloor = 1e-14;

}  // namespace

MomentResult compute_moments(const DistributionSpec& f, const Vec3& x, const QuadratureSpec& q) {
    q.validate();
    f.validate();
    MomentResult r;
    const Vec3 c = f.bulk_velocity;
    const double s = f.thermal_speed();
    auto integral = [&](auto&& fn) {
        const auto res = integrate_r3(fn, c, s, q);
        r.nodes_used += res.nodes_used;
        return res;
    };
    const auto rho = integral([&](const Vec3& v) { return f(x, v); });
    if (!(rho.value > kRhoFloor)) return r;
    MomentFields& m = r.fields;
    m.rho = rho.value;
    r.rho_error = rho.error_estimate;
    for (int i = 0; i < 3; ++i) {
        const auto ju = integral([&](const Vec3& v) { return v[i] * f(x, v); });
        const double ui = ju.value / m.rho;
        (i == 0 ? m.u.x1 : i == 1 ? m.u.x2 : m.u.x3) = ui;
        (i == 0 ? r.u_error.x1 : i == 1 ? r.u_error.x2 : r.u_error.x3) = (ju.error_estimate + std::abs(ui) * rho.error_estimate) / m.rho;
    }
    const Vec3 u = m.u;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const auto p = integral([&](const Vec3& v) { return (v[i] - u[i]) * (v[j] - u[j]) * f(x, v); });
            m.P(i, j) = m.P(j, i) = p.value;
            r.P_error(i, j) = r.P_error(j, i) = p.error_estimate;
        }
    for (int i = 0; i < 3; ++i) {
        const auto h = integral([&](const Vec3& v) { return 0.5 * (v[i] - u[i]) * norm_sq(v - u) * f(x, v); });
        (i == 0 ? m.q.x1 : i == 1 ? m.q.x2 : m.q.x3) = h.value;
        (i == 0 ? r.q_error.x1 : i == 1 ? r.q_error.x2 : r.q_error.x3) = h.error_estimate;
    }
    m.trace_temperature = (m.P(0, 0) + m.P(1, 1) + m.P(2, 2)) / (3.0 * m.rho);
    return r;
}

namespace {

struct Corrections {
    std::array<Vec3, 3> rows{};
    Vec3 energy{};
    double magnitude = 0.0;
    long nodes = 0;
    Corrections& operator+=(const Corrections& o) {
        for (int l = 0; l < 3; ++l) rows[l] += o.rows[l];
        energy += o.energy;
        magnitude += o.magnitude;
        nodes += o.nodes;
        return *this;
    }
};

// Enskog position current integrated over v. For separable f the (v, w) integral reduces, per
// direction n, to normal-velocity marginals F(a) = int f dv_perp and a triangle integral of
// F(a) F(b) (a - b)_+^2 (times a + b for energy); the s-integral only touches spatial factors.
Corrections enskog_corrections_level(const CollisionModel& m, const DistributionSpec& f, const Vec3& x,
                                     const internal::Resolution& res) {
    const SphereRule& rule = sphere_rule(res.polar);
    const double sigma = m.sigma;
    const MappedNodes sn = map_legendre(res.seg, 0.0, sigma);
    const double st = f.thermal_speed();
    const double L = res.trunc * st;
    auto per_node = parallel_map<Corrections>(rule.size(), res.exec, [&](std::size_t i) {
        Corrections out;
        const Frame& fr = rule.frames[i];
        const Vec3& n = fr.n;
        double S = 0.0;
        for (std::size_t k = 0; k < sn.x.size(); ++k) {
            const double s = sn.x[k];
            S += sn.w[k] * chi_eval(m.chi, x + (0.5 * sigma - s) * n) * f.spatial_factor(x - s * n) *
                 f.spatial_factor(x + (sigma - s) * n);
        }
        if (S == 0.0) return out;
        const internal::Plane pl =
            internal::hermite_plane(res.plane, dot(f.bulk_velocity, fr.e1), dot(f.bulk_velocity, fr.e2), st);
        auto marginal = [&](double a) {
            double F = 0.0;
            for (std::size_t k = 0; k < pl.w.size(); ++k) F += pl.w[k] * f.velocity_factor(a * n + pl.xi1[k] * fr.e1 + pl.xi2[k] * fr.e2);
            return F;
        };
        const double un = dot(f.bulk_velocity, n);
        const MappedNodes an = map_legendre(res.line, un - L, un + L);
        double V2 = 0.0, V3 = 0.0, mag = 0.0;
        for (std::size_t ia = 0; ia < an.x.size(); ++ia) {
            const double a = an.x[ia];
            const double Fa = marginal(a) * an.w[ia];
            const MappedNodes tn = internal::legendre_on(res.line, 0.0, a - (un - L));
            for (std::size_t it = 0; it < tn.x.size(); ++it) {
                const double t = tn.x[it];
                const double g = Fa * tn.w[it] * marginal(a - t) * t * t;
                V2 += g;
                V3 += g * (2.0 * a - t);
                mag += std::abs(g) * (1.0 + std::abs(2.0 * a - t));
            }
            out.nodes += static_cast<long>(tn.x.size() * pl.w.size());
        }
        const double pre = -0.5 * sigma * sigma * S * rule.weights[i];
        for (int l = 0; l < 3; ++l) out.rows[l] = (pre * V2 * n[l]) * n;
        out.energy = (pre * V3) * n;
        out.magnitude = std::abs(pre) * mag;
        return out;
    });
    return pairwise_sum(per_node);
}

CollisionCorrections from_levels(const Corrections& hi, const Corrections& lo) {
    CollisionCorrections c;
    const double floor = internal::roundoff_floor(hi.magnitude);
    for (int l = 0; l < 3; ++l)
        for (int j = 0; j < 3; ++j) {
            c.stress_correction(l, j) = hi.rows[l][j];
            c.stress_error(l, j) = std::abs(hi.rows[l][j] - lo.rows[l][j]) + floor;
        }
    c.energy_correction = hi.energy;
    c.energy_error = {std::abs(hi.energy.x1 - lo.energy.x1) + floor, std::abs(hi.energy.x2 - lo.energy.x2) + floor,
                      std::abs(hi.energy.x3 - lo.energy.x3) + floor};
    c.nodes_used = hi.nodes + lo.nodes;
    return c;
}

Corrections outer_v_level(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const QuadratureSpec& q, int n) {
    const double L = q.r3_truncation_radius_sigmas * f.thermal_speed();
    const Vec3 c = f.bulk_velocity;
    const auto a1 = map_legendre(n, c.x1 - L, c.x1 + L);
    const auto a2 = map_legendre(n, c.x2 - L, c.x2 + L);
    const auto a3 = map_legendre(n, c.x3 - L, c.x3 + L);
    QuadratureSpec inner = q;
    inner.execution = Execution::serial;
    const std::size_t count = static_cast<std::size_t>(n) * n * n;
    auto terms = parallel_map<Corrections>(count, q.execution, [&](std::size_t idx) {
        const int i = static_cast<int>(idx / (n * n)), j = static_cast<int>((idx / n) % n), k = static_cast<int>(idx % n);
        const Vec3 v{a1.x[i], a2.x[j], a3.x[k]};
        const double w = a1.w[i] * a2.w[j] * a3.w[k];
        const CurrentBundle b = current_bundle_level(m, f, x, v, inner, false, kPositionCurrents);
        Corrections out;
        for (int l = 0; l < 3; ++l) {
            out.rows[l] = w * b.I[1 + l];
            out.magnitude += w * b.I_error[1 + l] / (64.0 * std::numeric_limits<double>::epsilon());
        }
        out.energy = w * b.I[4];
        out.magnitude += w * b.I_error[4] / (64.0 * std::numeric_limits<double>::epsilon());
        out.nodes = b.nodes_used;
        return out;
    });
    return pairwise_sum(terms);
}

}  // namespace

CollisionCorrections collision_corrections_outer_v(const CollisionModel& m, const DistributionSpec& f, const Vec3& x,
                                                   const QuadratureSpec& q, int outer_points) {
    if (outer_points < 2) throw std::invalid_argument("collision_corrections: outer_points must be >= 2");
    q.validate();
    m.validate();
    f.validate();
    const Corrections hi = outer_v_level(m, f, x, q, outer_points);
    const Corrections lo = outer_v_level(m, f, x, q, std::max(2, outer_points / 2));
    return from_levels(hi, lo);
}

CollisionCorrections collision_corrections(const CollisionModel& m, const DistributionSpec& f, const Vec3& x,
                                           const QuadratureSpec& q) {
    q.validate();
    m.validate();
    f.validate();
    switch (m.kind) {
        case CollisionModel::Kind::enskog: {
            const Corrections hi = enskog_corrections_level(m, f, x, internal::full_resolution(q));
            const Corrections lo = enskog_corrections_level(m, f, x, internal::half_resolution(q));
            return from_levels(hi, lo);
        }
        case CollisionModel::Kind::povzner: return collision_corrections_outer_v(m, f, x, q);
        case CollisionModel::Kind::boltzmann: break;
    }
    throw std::invalid_argument("collision_corrections: model must be enskog or povzner");
}

std::vector<Vec3> x_grid(const Vec3& lo, const Vec3& hi, int n) {
    if (n < 1) throw std::invalid_argument("x_grid: n must be >= 1");
    auto at = [&](int a, int i) { return n == 1 ? lo[a] : lo[a] + (hi[a] - lo[a]) * i / (n - 1); };
    std::vector<Vec3> g;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) g.push_back({at(0, i), at(1, j), at(2, k)});
    return g;
}

void write_moments_csv(std::ostream& out, const DistributionSpec& f, const CollisionModel* m, const std::vector<Vec3>& grid,
                       const QuadratureSpec& q) {
    out << "x1,x2,x3,rho,u1,u2,u3,P11,P12,P13,P22,P23,P33,q1,q2,q3";
    if (m) {
        for (int l = 1; l <= 3; ++l)
            for (int j = 1; j <= 3; ++j) out << ",S" << l << j;
        out << ",E1,E2,E3";
    }
    out << "\n" << std::setprecision(17);
    for (const Vec3& x : grid) {
        const MomentFields mf = compute_moments(f, x, q).fields;
        out << x.x1 << ',' << x.x2 << ',' << x.x3 << ',' << mf.rho << ',' << mf.u.x1 << ',' << mf.u.x2 << ',' << mf.u.x3;
        out << ',' << mf.P(0, 0) << ',' << mf.P(0, 1) << ',' << mf.P(0, 2) << ',' << mf.P(1, 1) << ',' << mf.P(1, 2) << ','
            << mf.P(2, 2);
        out << ',' << mf.q.x1 << ',' << mf.q.x2 << ',' << mf.q.x3;
        if (m) {
            const CollisionCorrections c = collision_corrections(*m, f, x, q);
            for (int l = 0; l < 3; ++l)
                for (int j = 0; j < 3; ++j) out << ',' << c.stress_correction(l, j);
            out << ',' << c.energy_correction.x1 << ',' << c.energy_correction.x2 << ',' << c.energy_correction.x3;
        }
        out << "\n";
    }
}

}  // namespace densegas
