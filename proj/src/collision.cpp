#include "densegas/collision.hpp"

#include "internal.hpp"

namespace densegas {

using internal::Resolution;
using internal::ScalarSum;

void CollisionModel::validate() const {
    switch (kind) {
        case Kind::boltzmann:
            return;
        case Kind::enskog:
            if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("model: enskog sigma must be > 0");
            chi.validate();
            return;
        case Kind::povzner:
            kernel.validate();
            return;
    }
}

std::string CollisionModel::name() const {
    switch (kind) {
        case Kind::boltzmann: return "boltzmann";
        case Kind::enskog: return "enskog";
        case Kind::povzner: return "povzner";
    }
    return "unknown";
}

ordered_json to_json(const CollisionModel& m) {
    ordered_json j;
    j["type"] = m.name();
    if (m.kind == CollisionModel::Kind::enskog) {
        j["sigma"] = m.sigma;
        if (m.chi.kind == ChiSpec::Kind::constant) {
            j["chi"] = {{"type", "constant"}, {"value", m.chi.value}};
        } else {
            j["chi"] = {{"type", "enskog_asymptotic"}, {"sigma", m.chi.diameter}};
        }
    }
    if (m.kind == CollisionModel::Kind::povzner) {
        j["kernel"] = {{"type", to_string(m.kernel.kind)}, {"range", m.kernel.range}, {"speed", m.kernel.speed}};
    }
    return j;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Boltzmann (sigma = 0, chi = 1) or Enskog at one resolution. For each direction n the
// relative velocity is split as a n + w_perp with a > 0, removing the kink of <v-w,n>_+.
ScalarSum sphere_collision_level(const CollisionModel& m, bool enskog, const DistributionSpec& f, const DistributionSpec& g,
                                 const Vec3& x, const Vec3& v, const Resolution& res) {
    const SphereRule& rule = sphere_rule(res.polar);
    const double sigma = enskog ? m.sigma : 0.0;
    const double s2 = enskog ? sigma * sigma : 1.0;
    const double sg = g.thermal_speed();
    const double L = res.trunc * std::max(f.thermal_speed(), sg);
    const double Fx = f.spatial_factor(x);
    const double Fv = f.velocity_factor(v);

    auto per_node = parallel_map<ScalarSum>(rule.size(), res.exec, [&](std::size_t i) {
        ScalarSum out;
        const Frame& fr = rule.frames[i];
        const Vec3& n = fr.n;
        double chig = 1.0, chil = 1.0;
        Vec3 xg = x, xl = x;
        if (enskog) {
            chig = chi_eval(m.chi, x - 0.5 * sigma * n);
            chil = chi_eval(m.chi, x + 0.5 * sigma * n);
            xg = x - sigma * n;
            xl = x + sigma * n;
        }
        const double Sg = s2 * chig * Fx * g.spatial_factor(xg);
        const double Sl = s2 * chil * Fx * g.spatial_factor(xl);
        if (Sg == 0.0 && Sl == 0.0) return out;
        const double vn = dot(v, n);
        const double cf = dot(v - f.bulk_velocity, n), cg = dot(v - g.bulk_velocity, n);
        const auto [a0, a1] = internal::clip_window(std::min(cf, cg), std::max(cf, cg), L, 0.0, kInf);
        const MappedNodes al = internal::legendre_on(res.line, a0, a1);
        const internal::Plane pl =
            internal::hermite_plane(res.plane, dot(g.bulk_velocity, fr.e1), dot(g.bulk_velocity, fr.e2), sg);
        const std::size_t np = pl.w.size();
        std::vector<Vec3> wperp(np);
        std::vector<double> gprime(np);
        for (std::size_t k = 0; k < np; ++k) {
            wperp[k] = pl.xi1[k] * fr.e1 + pl.xi2[k] * fr.e2;
            gprime[k] = g.velocity_factor(vn * n + wperp[k]);
        }
        PairwiseAccumulator<double> acc, mag;
        for (std::size_t j = 0; j < al.x.size(); ++j) {
            const double a = al.x[j];
            const double fvp = f.velocity_factor(v - a * n);
            const Vec3 wn = (vn - a) * n;
            for (std::size_t k = 0; k < np; ++k) {
                const double gain = Sg * fvp * gprime[k];
                const double loss = Sl * Fv * g.velocity_factor(wn + wperp[k]);
                const double wt = a * al.w[j] * pl.w[k];
                acc.add(wt * (gain - loss));
                mag.add(wt * (gain + loss));
            }
        }
        out.value = rule.weights[i] * acc.total();
        out.magnitude = rule.weights[i] * mag.total();
        out.nodes = static_cast<long>(al.x.size() * np);
        if (!std::isfinite(out.value)) detail::throw_node_failure("collision", "n=" + to_string(n));
        return out;
    });
    return pairwise_sum(per_node);
}

// Povzner at one resolution: y = x + r n over the kernel ball, relative velocity u = v - w
// over the kernel's speed ball in cylinder coordinates about n.
ScalarSum povzner_level(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g, const Vec3& x,
                        const Vec3& v, const Resolution& res) {
    const PovznerKernelSpec& k = m.kernel;
    const SphereRule& rule = sphere_rule(res.polar);
    const MappedNodes radial = map_legendre(res.seg, 1e-6 * k.range, k.range);
    const auto cyl = internal::speed_ball_cylinder(res.line, res.plane, res.azimuth, k.speed);
    const double Fx = f.spatial_factor(x);
    const double Fv = f.velocity_factor(v);

    auto per_node = parallel_map<ScalarSum>(rule.size(), res.exec, [&](std::size_t i) {
        ScalarSum out;
        const Frame& fr = rule.frames[i];
        const Vec3& n = fr.n;
        std::vector<Vec3> u(cyl.size());
        for (std::size_t c = 0; c < cyl.size(); ++c) u[c] = cyl[c].a * n + cyl[c].c1 * fr.e1 + cyl[c].c2 * fr.e2;
        PairwiseAccumulator<double> acc, mag;
        for (std::size_t ir = 0; ir < radial.x.size(); ++ir) {
            const double r = radial.x[ir];
            const double S = Fx * g.spatial_factor(x + r * n);
            if (S == 0.0) continue;
            const double wr = radial.w[ir] * r * r;
            for (std::size_t c = 0; c < cyl.size(); ++c) {
                const double J = kernel_eval_dir(k, r, n, u[c]);
                if (J == 0.0) continue;
                const Vec3 w = v - u[c];
                const Vec3 an = cyl[c].a * n;
                const double gain = S * f.velocity_factor(v - an) * g.velocity_factor(w + an);
                const double loss = S * Fv * g.velocity_factor(w);
                const double wt = wr * cyl[c].w * J;
                acc.add(wt * (gain - loss));
                mag.add(wt * (gain + loss));
            }
        }
        out.value = rule.weights[i] * acc.total();
        out.magnitude = rule.weights[i] * mag.total();
        out.nodes = static_cast<long>(radial.x.size() * cyl.size());
        if (!std::isfinite(out.value)) detail::throw_node_failure("eval_povzner", "n=" + to_string(n));
        return out;
    });
    return pairwise_sum(per_node);
}

template <class Level>
IntegralResult<double> two_level(const QuadratureSpec& q, Level&& level) {
    q.validate();
    const ScalarSum hi = level(internal::full_resolution(q));
    const ScalarSum lo = level(internal::half_resolution(q));
    IntegralResult<double> r;
    r.value = hi.value;
    r.error_estimate = std::abs(hi.value - lo.value) + internal::roundoff_floor(hi.magnitude);
    r.nodes_used = hi.nodes + lo.nodes;
    return r;
}

}  // namespace

IntegralResult<double> eval_boltzmann(const DistributionSpec& f, const DistributionSpec& g, const Vec3& x, const Vec3& v,
                                      const QuadratureSpec& q) {
    const CollisionModel m = CollisionModel::boltzmann();
    return two_level(q, [&](const Resolution& r) { return sphere_collision_level(m, false, f, g, x, v, r); });
}

IntegralResult<double> eval_enskog(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g, const Vec3& x,
                                   const Vec3& v, const QuadratureSpec& q) {
    if (m.kind != CollisionModel::Kind::enskog) throw std::invalid_argument("eval_enskog: model is not enskog");
    return two_level(q, [&](const Resolution& r) { return sphere_collision_level(m, true, f, g, x, v, r); });
}

IntegralResult<double> eval_povzner(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g, const Vec3& x,
                                    const Vec3& v, const QuadratureSpec& q) {
    if (m.kind != CollisionModel::Kind::povzner) throw std::invalid_argument("eval_povzner: model is not povzner");
    return two_level(q, [&](const Resolution& r) { return povzner_level(m, f, g, x, v, r); });
}

IntegralResult<double> eval_model(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g, const Vec3& x,
                                  const Vec3& v, const QuadratureSpec& q) {
    switch (m.kind) {
        case CollisionModel::Kind::boltzmann: return eval_boltzmann(f, g, x, v, q);
        case CollisionModel::Kind::enskog: return eval_enskog(m, f, g, x, v, q);
        case CollisionModel::Kind::povzner: return eval_povzner(m, f, g, x, v, q);
    }
    throw std::invalid_argument("eval_model: unknown model");
}

GainLoss collision_integrand_sphere(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g, const Vec3& x,
                                    const Vec3& v, const Vec3& w, const Vec3& n) {
    const double a = dot(v - w, n);
    if (!(a > 0.0)) return {};
    const auto p = collide_raw(v, w, n);
    if (m.kind == CollisionModel::Kind::boltzmann)
        return {a * f(x, p.v) * g(x, p.w), a * f(x, v) * g(x, w)};
    const double s = m.sigma;
    const double pre = s * s * a;
    return {pre * chi_eval(m.chi, x - 0.5 * s * n) * f(x, p.v) * g(x - s * n, p.w),
            pre * chi_eval(m.chi, x + 0.5 * s * n) * f(x, v) * g(x + s * n, w)};
}

GainLoss collision_integrand_povzner(const CollisionModel& m, const DistributionSpec& f, const DistributionSpec& g,
                                     const Vec3& x, const Vec3& y, const Vec3& v, const Vec3& w) {
    const Vec3 d = y - x;
    const double r = norm(d);
    if (r < 1e-12) return {};
    const Vec3 n = d / r;
    const double J = kernel_eval_dir(m.kernel, r, n, v - w);
    if (J == 0.0) return {};
    const auto p = collide_raw(v, w, n);
    return {J * f(x, p.v) * g(y, p.w), J * f(x, v) * g(y, w)};
}

}  // namespace densegas
