#include "currents_internal.hpp"

namespace densegas::internal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// First-argument weights of the translation term, at c = v + p n:
// 1, c_1..c_3, |c|^2, <c,n> n_1..n_3, <c,n>^2.
constexpr int kFirstWeights = 9;
// Second-argument weights at c = w + p n: 1, <c,n> n_1..n_3, <c,n>^2.
constexpr int kSecondWeights = 5;

inline void first_weights(const Vec3& c, const Vec3& n, double* out) {
    const double cn = dot(c, n);
    out[0] = 1.0;
    out[1] = c.x1;
    out[2] = c.x2;
    out[3] = c.x3;
    out[4] = norm_sq(c);
    out[5] = cn * n.x1;
    out[6] = cn * n.x2;
    out[7] = cn * n.x3;
    out[8] = cn * cn;
}

inline void second_weights(double cn, const Vec3& n, double* out) {
    out[0] = 1.0;
    out[1] = cn * n.x1;
    out[2] = cn * n.x2;
    out[3] = cn * n.x3;
    out[4] = cn * cn;
}

// Translation term at direction n. With s = p and <v-w,n> = p + q the (w_n, s) integral over
// 0 < s < <v-w,n> becomes p, q > 0, and the factor <v-w,n>_+ = p + q splits the integral
// into products of one-dimensional moments in p and in (q, w_perp).
void translation_part(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Frame& fr, const Vec3& v,
                      const Resolution& res, CurrentSums& out) {
    const Vec3& n = fr.n;
    const double sigma = m.sigma;
    const double pre = sigma * sigma * chi_eval(m.chi, x + 0.5 * sigma * n) * f.spatial_factor(x) *
                       f.spatial_factor(x + sigma * n);
    if (pre == 0.0) return;
    const double L = res.trunc * f.thermal_speed();
    const double vn = dot(v, n);
    const double c = dot(v - f.bulk_velocity, n);

    std::array<double, kFirstWeights> A0{}, A1{}, A0abs{}, A1abs{};
    {
        const auto [lo, hi] = clip_window(-c, -c, L, 0.0, kInf);
        const MappedNodes pn = legendre_on(res.line, lo, hi);
        double w[kFirstWeights];
        for (std::size_t i = 0; i < pn.x.size(); ++i) {
            const double p = pn.x[i];
            const Vec3 vs = v + p * n;
            const double F = f.velocity_factor(vs) * pn.w[i];
            first_weights(vs, n, w);
            for (int k = 0; k < kFirstWeights; ++k) {
                A0[k] += F * w[k];
                A1[k] += F * p * w[k];
                A0abs[k] += std::abs(F * w[k]);
                A1abs[k] += std::abs(F * p * w[k]);
            }
        }
        out.nodes += static_cast<long>(pn.x.size());
    }
    std::array<double, kSecondWeights> B0{}, B1{}, B0abs{}, B1abs{};
    {
        const auto [lo, hi] = clip_window(c, c, L, 0.0, kInf);
        const MappedNodes qn = legendre_on(res.line, lo, hi);
        const Plane pl = hermite_plane(res.plane, dot(f.bulk_velocity, fr.e1), dot(f.bulk_velocity, fr.e2), f.thermal_speed());
        double w[kSecondWeights];
        for (std::size_t i = 0; i < qn.x.size(); ++i) {
            const double q = qn.x[i];
            const double cn = vn - q;
            second_weights(cn, n, w);
            double G = 0.0;
            for (std::size_t k = 0; k < pl.w.size(); ++k)
                G += f.velocity_factor(cn * n + pl.xi1[k] * fr.e1 + pl.xi2[k] * fr.e2) * pl.w[k];
            G *= qn.w[i];
            for (int k = 0; k < kSecondWeights; ++k) {
                B0[k] += G * w[k];
                B1[k] += G * q * w[k];
                B0abs[k] += std::abs(G * w[k]);
                B1abs[k] += std::abs(G * q * w[k]);
            }
        }
        out.nodes += static_cast<long>(qn.x.size() * pl.w.size());
    }
    auto term = [&](int i, int j) { return pre * (A1[i] * B0[j] + A0[i] * B1[j]); };
    auto term_abs = [&](int i, int j) { return std::abs(pre) * (A1abs[i] * B0abs[j] + A0abs[i] * B1abs[j]); };

    out.J[0] += term(0, 0) * n;
    out.J_mag[0] += term_abs(0, 0);
    for (int k = 0; k < 3; ++k) {
        out.J[1 + k] += (term(1 + k, 0) - term(5 + k, 0) + term(0, 1 + k)) * n;
        out.J_mag[1 + k] += term_abs(1 + k, 0) + term_abs(5 + k, 0) + term_abs(0, 1 + k);
    }
    out.J[4] += (term(4, 0) - term(8, 0) + term(0, 4)) * n;
    out.J_mag[4] += term_abs(4, 0) + term_abs(8, 0) + term_abs(0, 4);
}

// Rotation term: for each theta the rotated pair (cv - sw, sv + cw) has the Gaussian centre of w
// at (c - s) u0; the constraint <v_{-t} - w_{-t}, n> > 0 bounds w_n from above.
void rotation_part(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Frame& fr, const Vec3& v,
                   const Resolution& res, CurrentSums& out) {
    const Vec3& n = fr.n;
    const double sigma = m.sigma;
    const double pre = 0.5 * sigma * sigma * chi_eval(m.chi, x - 0.5 * sigma * n) * f.spatial_factor(x - sigma * n) *
                       f.spatial_factor(x);
    if (pre == 0.0) return;
    const double st = f.thermal_speed();
    const double L = res.trunc * st;
    const double vn = dot(v, n);
    const Vec3& u0 = f.bulk_velocity;
    const MappedNodes th = map_legendre(res.seg, 0.0, 0.5 * std::numbers::pi);
    Vec3 Vsum{}, Esum{};
    double Vabs = 0.0, Eabs = 0.0;
    for (std::size_t it = 0; it < th.x.size(); ++it) {
        const double c = std::cos(th.x[it]), s = std::sin(th.x[it]);
        const double kk = c + s, d = c - s;
        const Vec3 centre = d * u0;
        const double cn = dot(centre, n);
        const MappedNodes wn = legendre_on(res.line, cn - L, std::min(cn + L, d * vn / kk));
        if (wn.x.empty()) continue;
        const Plane pl = hermite_plane(res.plane, dot(centre, fr.e1), dot(centre, fr.e2), st);
        for (std::size_t i = 0; i < wn.x.size(); ++i) {
            const double b = d * vn - kk * wn.x[i];
            const double wt = pre * th.w[it] * wn.w[i] * b * b;
            for (std::size_t k = 0; k < pl.w.size(); ++k) {
                const Vec3 w = wn.x[i] * n + pl.xi1[k] * fr.e1 + pl.xi2[k] * fr.e2;
                const Vec3 Vr = c * v - s * w, Wr = s * v + c * w;
                const double base = wt * pl.w[k] * f.velocity_factor(Vr) * f.velocity_factor(Wr);
                const double e = base * dot(Vr + Wr, n);
                Vsum += base * w;
                Esum += e * w;
                Vabs += std::abs(base) * norm(w);
                Eabs += std::abs(e) * norm(w);
            }
        }
        out.nodes += static_cast<long>(wn.x.size() * pl.w.size());
    }
    for (int k = 0; k < 3; ++k) {
        out.J[1 + k] -= n[k] * Vsum;
        out.J_mag[1 + k] += std::abs(n[k]) * Vabs;
    }
    out.J[4] -= Esum;
    out.J_mag[4] += Eabs;
}

// Position current: the s-integral only touches the spatial factors, so it factors out of the
// velocity integral over w with <v-w,n> > 0.
void position_part(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Frame& fr, const Vec3& v,
                   const Resolution& res, CurrentSums& out) {
    const Vec3& n = fr.n;
    const double sigma = m.sigma;
    const MappedNodes sn = map_legendre(res.seg, 0.0, sigma);
    double S = 0.0;
    for (std::size_t i = 0; i < sn.x.size(); ++i) {
        const double s = sn.x[i];
        S += sn.w[i] * chi_eval(m.chi, x + (0.5 * sigma - s) * n) * f.spatial_factor(x - s * n) *
             f.spatial_factor(x + (sigma - s) * n);
    }
    const double pre = -0.5 * sigma * sigma * S * f.velocity_factor(v);
    if (pre == 0.0) return;
    const double L = res.trunc * f.thermal_speed();
    const double vn = dot(v, n);
    const double un = dot(f.bulk_velocity, n);
    const MappedNodes wn = legendre_on(res.line, un - L, std::min(un + L, vn));
    if (wn.x.empty()) return;
    const Plane pl = hermite_plane(res.plane, dot(f.bulk_velocity, fr.e1), dot(f.bulk_velocity, fr.e2), f.thermal_speed());
    double P = 0.0, E = 0.0, Pabs = 0.0, Eabs = 0.0;
    for (std::size_t i = 0; i < wn.x.size(); ++i) {
        const double b = vn - wn.x[i];
        double G = 0.0;
        for (std::size_t k = 0; k < pl.w.size(); ++k)
            G += pl.w[k] * f.velocity_factor(wn.x[i] * n + pl.xi1[k] * fr.e1 + pl.xi2[k] * fr.e2);
        const double t = pre * wn.w[i] * b * b * G;
        P += t;
        E += t * (vn + wn.x[i]);
        Pabs += std::abs(t);
        Eabs += std::abs(t * (vn + wn.x[i]));
    }
    out.nodes += static_cast<long>(wn.x.size() * pl.w.size() + sn.x.size());
    for (int k = 0; k < 3; ++k) {
        out.I[1 + k] += (n[k] * P) * n;
        out.I_mag[1 + k] += std::abs(n[k]) * Pabs;
    }
    out.I[4] += E * n;
    out.I_mag[4] += Eabs;
}

}  // namespace

CurrentSums enskog_currents_level(const CollisionModel& m, const DistributionSpec& f, const Vec3& x, const Vec3& v,
                                  const Resolution& res, unsigned parts) {
    const SphereRule& rule = sphere_rule(res.polar);
    auto per_node = parallel_map<CurrentSums>(rule.size(), res.exec, [&](std::size_t i) {
        CurrentSums s;
        const Frame& fr = rule.frames[i];
        if (parts & kVelocityCurrents) {
            translation_part(m, f, x, fr, v, res, s);
            rotation_part(m, f, x, fr, v, res, s);
        }
        if (parts & kPositionCurrents) position_part(m, f, x, fr, v, res, s);
        const double w = rule.weights[i];
        for (int k = 0; k < 5; ++k) {
            s.J[k] *= w;
            s.I[k] *= w;
            s.J_mag[k] *= w;
            s.I_mag[k] *= w;
            if (!is_finite(s.J[k]) || !is_finite(s.I[k])) detail::throw_node_failure("enskog currents", "n=" + to_string(fr.n));
        }
        return s;
    });
    return pairwise_sum(per_node);
}

VectorSum enskog_landau_level(const WeightSpec& a, const WeightSpec& b, const DistributionSpec& f, const DistributionSpec& g,
                              const ChiSpec& chi, double sigma, const Vec3& x, const Frame& fr, const Vec3& v,
                              const Resolution& res) {
    VectorSum out;
    const Vec3& n = fr.n;
    const double pre = sigma * sigma * chi_eval(chi, x + 0.5 * sigma * n) * f.spatial_factor(x) * g.spatial_factor(x + sigma * n);
    if (pre == 0.0) return out;
    const double vn = dot(v, n);
    double A0 = 0.0, A1 = 0.0, A0abs = 0.0, A1abs = 0.0;
    {
        const double c = dot(v - f.bulk_velocity, n);
        const auto [lo, hi] = clip_window(-c, -c, res.trunc * f.thermal_speed(), 0.0, kInf);
        const MappedNodes pn = legendre_on(res.line, lo, hi);
        for (std::size_t i = 0; i < pn.x.size(); ++i) {
            const Vec3 vs = v + pn.x[i] * n;
            const double t = pn.w[i] * a(vs, n) * f.velocity_factor(vs);
            A0 += t;
            A1 += t * pn.x[i];
            A0abs += std::abs(t);
            A1abs += std::abs(t * pn.x[i]);
        }
        out.nodes += static_cast<long>(pn.x.size());
    }
    double B0 = 0.0, B1 = 0.0, B0abs = 0.0, B1abs = 0.0;
    {
        const double c = dot(v - g.bulk_velocity, n);
        const auto [lo, hi] = clip_window(c, c, res.trunc * g.thermal_speed(), 0.0, kInf);
        const MappedNodes qn = legendre_on(res.line, lo, hi);
        const Plane pl = hermite_plane(res.plane, dot(g.bulk_velocity, fr.e1), dot(g.bulk_velocity, fr.e2), g.thermal_speed());
        for (std::size_t i = 0; i < qn.x.size(); ++i) {
            const double cn = vn - qn.x[i];
            double G = 0.0;
            for (std::size_t k = 0; k < pl.w.size(); ++k) {
                const Vec3 ws = cn * n + pl.xi1[k] * fr.e1 + pl.xi2[k] * fr.e2;
                G += pl.w[k] * b(ws, n) * g.velocity_factor(ws);
            }
            const double t = qn.w[i] * G;
            B0 += t;
            B1 += t * qn.x[i];
            B0abs += std::abs(t);
            B1abs += std::abs(t * qn.x[i]);
        }
        out.nodes += static_cast<long>(qn.x.size() * pl.w.size());
    }
    out.value = (pre * (A1 * B0 + A0 * B1)) * n;
    out.magnitude = std::abs(pre) * (A1abs * B0abs + A0abs * B1abs);
    return out;
}

}  // namespace densegas::internal
