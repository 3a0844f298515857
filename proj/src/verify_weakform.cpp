#include <chrono>

#include "densegas/verify.hpp"
#include "sampling.hpp"

namespace densegas {

namespace {

using internal::x_sampler;
using internal::XSampler;

struct Pairing {
    double value = 0.0;
    double stderr_ = 0.0;
    long samples = 0;
};

Pairing run(const QmcKernel& fn, int dim, const QuadratureSpec& q, int index) {
    const auto e = qmc_unit_cube<1>(fn, dim, q.qmc_samples, internal::pairing_seed(q.qmc_seed, index), q.execution);
    return {e.mean[0], e.stderr_[0], e.samples};
}

// psi = weight * phi
struct Psi {
    const Moment& mo;
    const TestFunctionSpec& phi;
    double operator()(const Vec3& x, const Vec3& v) const { return mo.weight(v) * phi.value(x, v); }
};

// ------------------------------------------------------------------ Enskog

Pairing enskog_lhs(const CollisionModel& m, const DistributionSpec& f, const Moment& mo, const TestFunctionSpec& phi,
                   const XSampler& xs, const QuadratureSpec& q) {
    const Psi psi{mo, phi};
    const double s = m.sigma;
    return run(
        [&](const double* u, double* out) {
            double wt = 1.0;
            const Vec3 x = xs(u, wt);
            const Vec3 v = internal::gauss_point(u + 3, f.bulk_velocity, f.thermal_speed(), wt);
            const Vec3 w = internal::gauss_point(u + 6, f.bulk_velocity, f.thermal_speed(), wt);
            const Vec3 n = internal::sphere_point(u + 9, wt);
            out[0] = 0.0;
            const double a = dot(v - w, n);
            if (!(a > 0.0)) return;
            const double base = s * s * chi_eval(m.chi, x + 0.5 * s * n) * f(x, v) * f(x + s * n, w) * a;
            if (base == 0.0) return;
            out[0] = wt * base * (psi(x, v - a * n) - psi(x, v));
        },
        11, q, 0);
}

Pairing enskog_translation_pairing(const CollisionModel& m, const DistributionSpec& f, const Moment& mo,
                                   const TestFunctionSpec& phi, const XSampler& xs, const QuadratureSpec& q) {
    const int slot = mo.slot();
    const MappedNodes t = map_legendre(q.segment_points, 0.0, 1.0);
    return run(
        [&](const double* u, double* out) {
            double wt = 1.0;
            const Vec3 x = xs(u, wt);
            const Vec3 vs = internal::gauss_point(u + 3, f.bulk_velocity, f.thermal_speed(), wt);
            const Vec3 ws = internal::gauss_point(u + 6, f.bulk_velocity, f.thermal_speed(), wt);
            const Vec3 n = internal::sphere_point(u + 9, wt);
            out[0] = 0.0;
            const double a = dot(vs - ws, n);
            if (!(a > 0.0)) return;
            const double dens = enskog_translation_density(m, f, x, n, vs, ws)[slot];
            if (dens == 0.0) return;
            double inner = 0.0;
            for (std::size_t i = 0; i < t.x.size(); ++i) inner += t.w[i] * dot(n, phi.grad_v(x, vs - (a * t.x[i]) * n));
            out[0] = -wt * dens * a * (a * inner);
        },
        11, q, 1);
}

Pairing enskog_rotation_pairing(const CollisionModel& m, const DistributionSpec& f, const Moment& mo,
                                const TestFunctionSpec& phi, const XSampler& xs, const QuadratureSpec& q) {
    const int comp = mo.kind == Moment::Kind::energy ? 3 : mo.axis - 1;
    const MappedNodes th = map_legendre(q.segment_points, 0.0, 0.5 * std::numbers::pi);
    return run(
        [&](const double* u, double* out) {
            double wt = 1.0;
            const Vec3 x = xs(u, wt);
            const Vec3 V = internal::gauss_point(u + 3, f.bulk_velocity, f.thermal_speed(), wt);
            const Vec3 W = internal::gauss_point(u + 6, f.bulk_velocity, f.thermal_speed(), wt);
            const Vec3 n = internal::sphere_point(u + 9, wt);
            out[0] = 0.0;
            const double dens = enskog_rotation_density(m, f, x, n, V, W)[comp];
            if (dens == 0.0) return;
            double inner = 0.0;
            for (std::size_t i = 0; i < th.x.size(); ++i) {
                const auto [v, w] = rotate_pair(V, W, th.x[i]);
                inner += th.w[i] * dot(w, phi.grad_v(x, v));
            }
            out[0] = wt * dens * inner;
        },
        11, q, 2);
}

Pairing enskog_position_pairing(const CollisionModel& m, const DistributionSpec& f, const Moment& mo,
                                const TestFunctionSpec& phi, const XSampler& xs, const QuadratureSpec& q) {
    const int comp = mo.kind == Moment::Kind::energy ? 3 : mo.axis - 1;
    const MappedNodes sn = map_legendre(q.segment_points, 0.0, m.sigma);
    return run(
        [&](const double* u, double* out) {
            double wt = 1.0;
            const Vec3 x = xs(u, wt);
            const Vec3 v = internal::gauss_point(u + 3, f.bulk_velocity, f.thermal_speed(), wt);
            const Vec3 w = internal::gauss_point(u + 6, f.bulk_velocity, f.thermal_speed(), wt);
            const Vec3 n = internal::sphere_point(u + 9, wt);
            out[0] = 0.0;
            if (!(dot(v - w, n) > 0.0)) return;
            double inner = 0.0;
            for (std::size_t i = 0; i < sn.x.size(); ++i) inner += sn.w[i] * enskog_position_density(m, f, x, n, sn.x[i], v, w)[comp];
            if (inner == 0.0) return;
            out[0] = -wt * inner * dot(n, phi.grad_x(x, v));
        },
        11, q, 3);
}

// ------------------------------------------------------------------ Povzner

// Every Povzner pairing is an integral over (x, y, v, w) against J(x - y, v - w). The map
// (v, w) -> (v', w') along (y - x)/|y - x| preserves Lebesgue measure, the kernel value and the
// Gaussian sampling weight, so each integrand is averaged with its value at the image. The
// equilibrium part f(v)f(w) = f(v')f(w') then largely cancels between the two.
using PairIntegrand = std::function<double(const Vec3& x, const Vec3& xi, const Vec3& v, const Vec3& w)>;

Pairing povzner_symmetrized(const DistributionSpec& f, double R, const XSampler& xs, const QuadratureSpec& q, int index,
                            const PairIntegrand& g) {
    return run(
        [&](const double* u, double* out) {
            double wt = 1.0;
            const Vec3 x = xs(u, wt);
            const Vec3 xi = internal::box_point(u + 3, R, wt);
            const Vec3 v = internal::gauss_point(u + 6, f.bulk_velocity, f.thermal_speed(), wt);
            const Vec3 w = internal::gauss_point(u + 9, f.bulk_velocity, f.thermal_speed(), wt);
            out[0] = 0.0;
            const double r = norm(xi);
            if (r < 1e-12 || r > R) return;
            const auto p = collide_raw(v, w, xi / r);
            out[0] = 0.5 * wt * (g(x, xi, v, w) + g(x, xi, p.v, p.w));
        },
        12, q, index);
}

Pairing povzner_lhs(const CollisionModel& m, const DistributionSpec& f, const Moment& mo, const TestFunctionSpec& phi,
                    const XSampler& xs, const QuadratureSpec& q) {
    const Psi psi{mo, phi};
    return povzner_symmetrized(f, m.kernel.range, xs, q, 0, [&](const Vec3& x, const Vec3& xi, const Vec3& v, const Vec3& w) {
        const double r = norm(xi);
        const Vec3 n = xi / r;
        const double J = kernel_eval_dir(m.kernel, r, n, v - w);
        if (J == 0.0) return 0.0;
        const double base = J * f(x, v) * f(x + xi, w);
        if (base == 0.0) return 0.0;
        return base * (psi(x, v - dot(v - w, n) * n) - psi(x, v));
    });
}

Pairing povzner_translation_pairing(const CollisionModel& m, const DistributionSpec& f, const Moment& mo,
                                    const TestFunctionSpec& phi, const XSampler& xs, const QuadratureSpec& q) {
    const int slot = mo.slot();
    const MappedNodes t = map_legendre(q.segment_points, 0.0, 1.0);
    return povzner_symmetrized(f, m.kernel.range, xs, q, 1, [&](const Vec3& x, const Vec3& xi, const Vec3& vs, const Vec3& ws) {
        const double dens = povzner_translation_density(m, f, x, x + xi, vs, ws)[slot];
        if (dens == 0.0) return 0.0;
        const Vec3 n = xi / norm(xi);
        const double a = dot(vs - ws, n);
        double inner = 0.0;
        for (std::size_t i = 0; i < t.x.size(); ++i) inner += t.w[i] * dot(n, phi.grad_v(x, vs - (a * t.x[i]) * n));
        return -dens * a * inner;
    });
}

// Velocity and position rotation terms share the rotated sample (X, Y, V, W).
Pairing povzner_rotation_pairing(const CollisionModel& m, const DistributionSpec& f, const Moment& mo,
                                 const TestFunctionSpec& phi, const XSampler& xs, const QuadratureSpec& q) {
    const int comp = mo.kind == Moment::Kind::energy ? 3 : mo.axis - 1;
    const MappedNodes th = map_legendre(q.segment_points, 0.0, 0.5 * std::numbers::pi);
    return povzner_symmetrized(f, m.kernel.range, xs, q, 2, [&](const Vec3& X, const Vec3& xi, const Vec3& V, const Vec3& W) {
        const Vec3 Y = X + xi;
        const double dens = povzner_rotation_density(m, f, X, Y, V, W)[comp];
        if (dens == 0.0) return 0.0;
        double inner = 0.0;
        for (std::size_t i = 0; i < th.x.size(); ++i) {
            const auto [x, y] = rotate_pair(X, Y, th.x[i]);
            const auto [v, w] = rotate_pair(V, W, th.x[i]);
            inner += th.w[i] * (dot(w, phi.grad_v(x, v)) + dot(y, phi.grad_x(x, v)));
        }
        return dens * inner;
    });
}

ordered_json pairing_json(const Pairing& p) { return {{"value", p.value}, {"stderr", p.stderr_}, {"samples", p.samples}}; }

}  // namespace

VerificationReport check_weakform(const CollisionModel& m, const DistributionSpec& f, const Moment& moment,
                                  const TestFunctionSpec& phi, const QuadratureSpec& q, double n_sigma) {
    const auto t0 = std::chrono::steady_clock::now();
    q.validate();
    m.validate();
    f.validate();
    phi.validate();
    const XSampler xs = x_sampler(f, &phi);
    Pairing lhs;
    std::vector<std::pair<std::string, Pairing>> rhs;
    const bool carries_rotation = moment.kind != Moment::Kind::mass;
    switch (m.kind) {
        case CollisionModel::Kind::enskog:
            lhs = enskog_lhs(m, f, moment, phi, xs, q);
            rhs.emplace_back("translation", enskog_translation_pairing(m, f, moment, phi, xs, q));
            if (carries_rotation) {
                rhs.emplace_back("rotation", enskog_rotation_pairing(m, f, moment, phi, xs, q));
                rhs.emplace_back("position", enskog_position_pairing(m, f, moment, phi, xs, q));
            }
            break;
        case CollisionModel::Kind::povzner:
            lhs = povzner_lhs(m, f, moment, phi, xs, q);
            rhs.emplace_back("translation", povzner_translation_pairing(m, f, moment, phi, xs, q));
            if (carries_rotation) rhs.emplace_back("rotation_and_position", povzner_rotation_pairing(m, f, moment, phi, xs, q));
            break;
        case CollisionModel::Kind::boltzmann:
            throw std::invalid_argument("check_weakform: model must be enskog or povzner");
    }
    VerificationReport r;
    r.check = "weakform/" + moment.name();
    r.kind = "weakform";
    r.moment = moment.name();
    r.model = m.name();
    r.lhs = lhs.value;
    r.lhs_error = lhs.stderr_;
    double var = 0.0;
    ordered_json parts = ordered_json::object();
    for (const auto& [name, p] : rhs) {
        r.rhs += p.value;
        var += p.stderr_ * p.stderr_;
        parts[name] = pairing_json(p);
    }
    r.rhs_error = std::sqrt(var);
    r.residual = r.lhs - r.rhs;
    r.tolerance = n_sigma * std::sqrt(r.lhs_error * r.lhs_error + var);
    r.decide();
    r.quadrature = to_json(q);
    r.details = {{"phi", to_json(phi)},
                 {"n_sigma", n_sigma},
                 {"per_unit_volume", xs.per_unit_volume},
                 {"lhs_samples", lhs.samples},
                 {"rhs_pairings", parts},
                 {"sigmas", r.tolerance > 0.0 ? std::abs(r.residual) / (r.tolerance / n_sigma) : 0.0}};
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace densegas
