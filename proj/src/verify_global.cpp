#include <chrono>

#include "densegas/verify.hpp"
#include "internal.hpp"
#include "sampling.hpp"

namespace densegas {

namespace {

ordered_json finite_or_string(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(std::to_string(x)); }

}  // namespace

VerificationReport check_global_conservation(const CollisionModel& m, const DistributionSpec& f, const QuadratureSpec& q,
                                             double rel_floor, double n_sigma) {
    const auto t0 = std::chrono::steady_clock::now();
    q.validate();
    m.validate();
    f.validate();
    const internal::XSampler xs = internal::x_sampler(f, nullptr);
    const double st = f.thermal_speed();
    const Vec3& u0 = f.bulk_velocity;
    // outputs: (gain - loss) * (1, v1, v2, v3, |v|^2), then (gain + loss)(1 + |v|^2)
    QmcKernel fn;
    int dim = 11;
    if (m.kind == CollisionModel::Kind::povzner) {
        dim = 12;
        fn = [&](const double* u, double* out) {
            double wt = 1.0;
            const Vec3 x = xs(u, wt);
            const Vec3 xi = internal::box_point(u + 3, m.kernel.range, wt);
            const Vec3 v = internal::gauss_point(u + 6, u0, st, wt);
            const Vec3 w = internal::gauss_point(u + 9, u0, st, wt);
            const GainLoss gl = collision_integrand_povzner(m, f, f, x, x + xi, v, w);
            const double d = wt * (gl.gain - gl.loss);
            out[0] = d;
            out[1] = d * v.x1;
            out[2] = d * v.x2;
            out[3] = d * v.x3;
            out[4] = d * norm_sq(v);
            out[5] = wt * (gl.gain + gl.loss) * (1.0 + norm_sq(v));
        };
    } else {
        fn = [&](const double* u, double* out) {
            double wt = 1.0;
            const Vec3 x = xs(u, wt);
            const Vec3 v = internal::gauss_point(u + 3, u0, st, wt);
            const Vec3 w = internal::gauss_point(u + 6, u0, st, wt);
            const Vec3 n = internal::sphere_point(u + 9, wt);
            const GainLoss gl = collision_integrand_sphere(m, f, f, x, v, w, n);
            const double d = wt * (gl.gain - gl.loss);
            out[0] = d;
            out[1] = d * v.x1;
            out[2] = d * v.x2;
            out[3] = d * v.x3;
            out[4] = d * norm_sq(v);
            out[5] = wt * (gl.gain + gl.loss) * (1.0 + norm_sq(v));
        };
    }
    const auto e = qmc_unit_cube<6>(fn, dim, q.qmc_samples, internal::pairing_seed(q.qmc_seed, 0), q.execution);
    const double N = e.mean[5];
    static const char* names[5] = {"mass", "momentum1", "momentum2", "momentum3", "energy"};
    ordered_json comps = ordered_json::array();
    double worst = -1.0;
    double worst_value = 0.0, worst_err = 0.0;
    bool all_pass = true;
    for (int k = 0; k < 5; ++k) {
        const double val = N > 0.0 ? e.mean[k] / N : 0.0;
        const double se = N > 0.0 ? e.stderr_[k] / N : 0.0;
        const double tol = rel_floor + n_sigma * se;
        const double ratio = std::abs(val) / tol;
        const bool pass = std::abs(val) <= tol;
        all_pass = all_pass && pass;
        if (ratio > worst) {
            worst = ratio;
            worst_value = val;
            worst_err = se;
        }
        comps.push_back({{"moment", names[k]},
                         {"integral", e.mean[k]},
                         {"stderr", e.stderr_[k]},
                         {"normalized", val},
                         {"normalized_stderr", se},
                         {"tolerance", tol},
                         {"pass", pass}});
    }
    VerificationReport r;
    r.check = "global_conservation";
    r.kind = "global_conservation";
    r.moment = "all";
    r.model = m.name();
    r.lhs = worst_value;
    r.rhs = 0.0;
    r.lhs_error = worst_err;
    r.residual = worst;
    r.tolerance = 1.0;
    r.decide();
    r.pass = r.pass && all_pass;
    r.quadrature = to_json(q);
    r.details = {{"normalization", N},
                 {"normalization_stderr", e.stderr_[5]},
                 {"rel_floor", rel_floor},
                 {"n_sigma", n_sigma},
                 {"per_unit_volume", xs.per_unit_volume},
                 {"samples", e.samples},
                 {"components", comps},
                 {"residual_meaning", "max over components of |normalized| / tolerance"}};
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

VerificationReport entropy_production_povzner(const CollisionModel& m, const DistributionSpec& f, double floor,
                                              const QuadratureSpec& q, double n_sigma) {
    const auto t0 = std::chrono::steady_clock::now();
    if (m.kind != CollisionModel::Kind::povzner) throw std::invalid_argument("entropy_production_povzner: model must be povzner");
    if (!(floor > 0.0)) throw std::invalid_argument("entropy_production_povzner: floor must be > 0");
    q.validate();
    m.validate();
    f.validate();
    const internal::XSampler xs = internal::x_sampler(f, nullptr);
    const double st = f.thermal_speed();
    const Vec3& u0 = f.bulk_velocity;
    // outputs: D integrand, pointwise-bound violation indicator, contributing-sample indicator,
    // collision-rate scale 1/2 J f f for the rounding floor
    const QmcKernel fn = [&](const double* u, double* out) {
        out[0] = out[1] = out[2] = out[3] = 0.0;
        double wt = 1.0;
        const Vec3 x = xs(u, wt);
        const Vec3 xi = internal::box_point(u + 3, m.kernel.range, wt);
        const Vec3 v = internal::gauss_point(u + 6, u0, st, wt);
        const Vec3 w = internal::gauss_point(u + 9, u0, st, wt);
        const double r = norm(xi);
        if (r < 1e-12) return;
        const Vec3 n = xi / r;
        const double J = kernel_eval_dir(m.kernel, r, n, v - w);
        if (J == 0.0) return;
        const Vec3 y = x + xi;
        const double a = f(x, v) * f(y, w);
        if (a < floor) return;
        const auto p = collide_raw(v, w, n);
        const double b = std::max(f(x, p.v) * f(y, p.w), floor);
        const double lhs = a * std::log(b / a);
        if (lhs > (b - a) + 1e-14 * std::max(a, b)) out[1] = 1.0;
        out[0] = 0.5 * wt * J * lhs;
        out[2] = 1.0;
        out[3] = 0.5 * wt * J * a;
    };
    const auto e = qmc_unit_cube<4>(fn, 12, q.qmc_samples, internal::pairing_seed(q.qmc_seed, 0), q.execution);
    long violations = 0;
    for (int k = 0; k < kQmcReplicates; ++k)
        violations += std::lround(e.replicate[k][1] * static_cast<double>(q.qmc_samples));
    const double D = e.mean[0], se = e.stderr_[0];
    const double rounding = internal::roundoff_floor(std::abs(e.mean[3]));

    VerificationReport r;
    r.check = "entropy";
    r.kind = "entropy";
    r.moment = "entropy";
    r.model = m.name();
    r.lhs = D;
    r.rhs = 0.0;
    r.lhs_error = se;
    r.residual = std::max(D, 0.0) + (violations > 0 ? std::numeric_limits<double>::max() : 0.0);
    r.tolerance = n_sigma * se + rounding;
    r.decide();
    r.quadrature = to_json(q);
    r.details = {{"D", D},
                 {"stderr", se},
                 {"D_over_stderr", se > 0.0 ? finite_or_string(D / se) : ordered_json(0.0)},
                 {"rounding_floor", rounding},
                 {"floor", floor},
                 {"pointwise_violations", violations},
                 {"contributing_fraction", e.mean[2]},
                 {"samples", e.samples},
                 {"per_unit_volume", xs.per_unit_volume},
                 {"residual_meaning", "max(D, 0); DBL_MAX if the pointwise bound fails"}};
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace densegas
