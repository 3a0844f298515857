#include "currents_internal.hpp"

namespace densegas::internal {

namespace {

// Speed-ball cylinder grouped by axial layer so that factors depending only on a are hoisted.
struct CylinderLayer {
    double a;
    double wa;
    Disk disk;
};

std::vector<CylinderLayer> cylinder_layers(const Resolution& res, double S) {
    std::vector<CylinderLayer> out;
    const int nh = std::max(1, res.line / 2);
    for (int half = 0; half < 2; ++half) {
        const auto al = half == 0 ? map_legendre(nh, -S, 0.0) : map_legendre(nh, 0.0, S);
        for (int i = 0; i < nh; ++i) {
            const double R = std::sqrt(std::max(0.0, S * S - al.x[i] * al.x[i]));
            out.push_back({al.x[i], al.w[i], disk_grid(res.plane, res.azimuth, R)});
        }
    }
    return out;
}

// Translation term with partner position y = x + r n. The relative velocity u = v - w runs
// over the kernel's speed ball; s = a t with a = <u,n> and t in [0,1].
void translation_part(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Frame& fr, const Vec3& v,
                      const MappedNodes& radial, const std::vector<CylinderLayer>& cyl, const MappedNodes& tn,
                      CurrentSums& out) {
    const PovznerKernelSpec& ker = m.kernel;
    const Vec3& n = fr.n;
    const double vn = dot(v, n);
    const Vec3 vperp = v - vn * n;
    const double vperp2 = norm_sq(vperp);
    const double Fx = f.spatial_factor(x);
    double S0 = 0.0, Sq = 0.0, Sq2 = 0.0;
    double S0abs = 0.0, Sqabs = 0.0, Sq2abs = 0.0;
    for (std::size_t ir = 0; ir < radial.x.size(); ++ir) {
        const double r = radial.x[ir];
        const double pre = Fx * f.spatial_factor(x + r * n) * radial.w[ir] * r * r;
        if (pre == 0.0) continue;
        for (const CylinderLayer& layer : cyl) {
            const double a = layer.a;
            const Disk& d = layer.disk;
            for (std::size_t it = 0; it < tn.x.size(); ++it) {
                const double p = a * tn.x[it], q = a - p;
                const double Fv = f.velocity_factor(v + p * n);
                if (Fv == 0.0) continue;
                const double base = pre * layer.wa * tn.w[it] * a * Fv;
                double G = 0.0, Gabs = 0.0;
                for (std::size_t k = 0; k < d.w.size(); ++k) {
                    const Vec3 uperp = d.c1[k] * fr.e1 + d.c2[k] * fr.e2;
                    const double J = kernel_eval_dir(ker, r, n, a * n + uperp);
                    if (J == 0.0) continue;
                    const double t = d.w[k] * J * f.velocity_factor(v - q * n - uperp);
                    G += t;
                    Gabs += std::abs(t);
                }
                const double t = base * G, tabs = std::abs(base) * Gabs;
                const double e = (vn - q) * (vn - q);
                S0 += t;
                Sq += t * q;
                Sq2 += t * e;
                S0abs += tabs;
                Sqabs += tabs * std::abs(q);
                Sq2abs += tabs * e;
            }
            out.nodes += static_cast<long>(tn.x.size() * d.w.size());
        }
    }
    out.J[0] += S0 * n;
    out.J_mag[0] += S0abs;
    for (int k = 0; k < 3; ++k) {
        out.J[1 + k] += (v[k] * S0 - n[k] * Sq) * n;
        out.J_mag[1 + k] += std::abs(v[k]) * S0abs + std::abs(n[k]) * Sqabs;
    }
    out.J[4] += (vperp2 * S0 + Sq2) * n;
    out.J_mag[4] += vperp2 * S0abs + Sq2abs;
}

// Rotation term. The rotated separation x_{-t} - y_{-t} = -r m fixes y; the rotated relative
// velocity u = v_{-t} - w_{-t} fixes w. Jacobian of (y, w) -> (r m, u) is (c + s)^{-6}.
void rotation_part(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Frame& fr, const Vec3& v,
                   const MappedNodes& radial, const std::vector<CylinderLayer>& cyl, const MappedNodes& th, unsigned parts,
                   CurrentSums& out) {
    const PovznerKernelSpec& ker = m.kernel;
    const Vec3& mm = fr.n;
    Vec3 Vsum{}, Esum{};
    Vec3 Isum{}, IEsum{};
    double Vabs = 0.0, Eabs = 0.0, Iabs = 0.0, IEabs = 0.0;
    for (std::size_t it = 0; it < th.x.size(); ++it) {
        const double c = std::cos(th.x[it]), s = std::sin(th.x[it]);
        const double kk = c + s, d = c - s;
        const double jac = 1.0 / std::pow(kk, 6);
        for (std::size_t ir = 0; ir < radial.x.size(); ++ir) {
            const double r = radial.x[ir];
            const Vec3 y = (d * x + r * mm) / kk;
            const Vec3 X = c * x - s * y, Y = s * x + c * y;
            const double pre = 0.5 * f.spatial_factor(X) * f.spatial_factor(Y) * jac * th.w[it] * radial.w[ir] * r * r;
            if (pre == 0.0) continue;
            double P = 0.0, E = 0.0, Pabs = 0.0, Eabs_ = 0.0;
            Vec3 PW{}, EW{};
            double PWabs = 0.0, EWabs = 0.0;
            for (const CylinderLayer& layer : cyl) {
                const double a = layer.a;
                const Disk& dk = layer.disk;
                for (std::size_t k = 0; k < dk.w.size(); ++k) {
                    const Vec3 u = a * mm + dk.c1[k] * fr.e1 + dk.c2[k] * fr.e2;
                    const double J = kernel_eval_dir(ker, r, mm, u);
                    if (J == 0.0) continue;
                    const Vec3 w = (d * v - u) / kk;
                    const Vec3 Vr = c * v - s * w, Wr = s * v + c * w;
                    const double t = pre * layer.wa * dk.w[k] * J * a * f.velocity_factor(Vr) * f.velocity_factor(Wr);
                    const double e = t * dot(Vr + Wr, mm);
                    P += t;
                    E += e;
                    Pabs += std::abs(t);
                    Eabs_ += std::abs(e);
                    if (parts & kVelocityCurrents) {
                        PW += t * w;
                        EW += e * w;
                        PWabs += std::abs(t) * norm(w);
                        EWabs += std::abs(e) * norm(w);
                    }
                }
                out.nodes += static_cast<long>(dk.w.size());
            }
            Vsum += PW;
            Esum += EW;
            Vabs += PWabs;
            Eabs += EWabs;
            Isum += P * y;
            IEsum += E * y;
            Iabs += Pabs * norm(y);
            IEabs += Eabs_ * norm(y);
        }
    }
    if (parts & kVelocityCurrents) {
        for (int k = 0; k < 3; ++k) {
            out.J[1 + k] -= mm[k] * Vsum;
            out.J_mag[1 + k] += std::abs(mm[k]) * Vabs;
        }
        out.J[4] -= Esum;
        out.J_mag[4] += Eabs;
    }
    if (parts & kPositionCurrents) {
        for (int k = 0; k < 3; ++k) {
            out.I[1 + k] -= mm[k] * Isum;
            out.I_mag[1 + k] += std::abs(mm[k]) * Iabs;
        }
        out.I[4] -= IEsum;
        out.I_mag[4] += IEabs;
    }
}

}  // namespace

CurrentSums povzner_currents_level(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                                   const Resolution& res, unsigned parts) {
    const SphereRule& rule = sphere_rule(res.polar);
    const MappedNodes radial = map_legendre(res.seg, 1e-6 * m.kernel.range, m.kernel.range);
    const MappedNodes tn = map_legendre(res.seg, 0.0, 1.0);
    const MappedNodes th = map_legendre(res.seg, 0.0, 0.5 * std::numbers::pi);
    const auto cyl = cylinder_layers(res, m.kernel.speed);
    auto per_node = parallel_map<CurrentSums>(rule.size(), res.exec, [&](std::size_t i) {
        CurrentSums s;
        const Frame& fr = rule.frames[i];
        if (parts & kVelocityCurrents) translation_part(m, f, x, fr, v, radial, cyl, tn, s);
        rotation_part(m, f, x, fr, v, radial, cyl, th, parts, s);
        const double w = rule.weights[i];
        for (int k = 0; k < 5; ++k) {
            s.J[k] *= w;
            s.I[k] *= w;
            s.J_mag[k] *= w;
            s.I_mag[k] *= w;
            if (!is_finite(s.J[k]) || !is_finite(s.I[k])) detail::throw_node_failure("povzner currents", "m=" + to_string(fr.n));
        }
        return s;
    });
    return pairwise_sum(per_node);
}

VectorSum povzner_landau_level(const WeightSpec& a, const WeightSpec& b, const DistributionSpec& f, const DistributionSpec& g,
                               const PovznerKernelSpec& kernel, const Vec3& x, const Vec3& y, const Vec3& v,
                               const Resolution& res) {
    VectorSum out;
    const Vec3 dxy = y - x;
    const double r = norm(dxy);
    if (r < 1e-12 || r > kernel.range) return out;
    const double pre = f.spatial_factor(x) * g.spatial_factor(y);
    if (pre == 0.0) return out;
    const Frame fr = frame_about(dxy / r);
    const Vec3& n = fr.n;
    const auto cyl = cylinder_layers(res, kernel.speed);
    const MappedNodes tn = map_legendre(res.seg, 0.0, 1.0);
    PairwiseAccumulator<double> acc, mag;
    for (const CylinderLayer& layer : cyl) {
        const double al = layer.a;
        for (std::size_t it = 0; it < tn.x.size(); ++it) {
            const double p = al * tn.x[it], q = al - p;
            const Vec3 vs = v + p * n;
            const double Fv = a(vs, n) * f.velocity_factor(vs);
            if (Fv == 0.0) continue;
            const double base = pre * layer.wa * tn.w[it] * al * Fv;
            for (std::size_t k = 0; k < layer.disk.w.size(); ++k) {
                const Vec3 uperp = layer.disk.c1[k] * fr.e1 + layer.disk.c2[k] * fr.e2;
                const double J = kernel_eval_dir(kernel, r, n, al * n + uperp);
                if (J == 0.0) continue;
                const Vec3 ws = v - q * n - uperp;
                const double t = base * layer.disk.w[k] * J * b(ws, n) * g.velocity_factor(ws);
                acc.add(t);
                mag.add(std::abs(t));
            }
            out.nodes += static_cast<long>(layer.disk.w.size());
        }
    }
    out.value = acc.total() * n;
    out.magnitude = mag.total();
    return out;
}

}  // namespace densegas::internal
