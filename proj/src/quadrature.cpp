#include "densegas/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/erf.hpp>
#include <boost/random/sobol.hpp>
#include <omp.h>

namespace densegas {

void QuadratureSpec::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("quadrature: " + what); };
    if (r3_points_per_axis < 4) fail("r3_points_per_axis must be >= 4");
    if (!(r3_truncation_radius_sigmas >= 4.0)) fail("r3_truncation_radius_sigmas must be >= 4");
    if (sphere_rule_order < 8) fail("sphere_rule_order must be >= 8");
    if (segment_points < 2) fail("segment_points must be >= 2");
    if (qmc_samples < 1) fail("qmc_samples must be positive");
}

int QuadratureSpec::sphere_polar_order() const {
    return std::max(2, static_cast<int>(std::floor(std::sqrt(sphere_rule_order / 2.0) + 1e-9)));
}

QuadratureSpec QuadratureSpec::half() const {
    QuadratureSpec h = *this;
    h.r3_points_per_axis = std::max(2, r3_points_per_axis / 2);
    const int p = std::max(1, (sphere_polar_order() + 1) / 2);
    h.sphere_rule_order = 2 * p * p;
    h.segment_points = std::max(1, segment_points / 2);
    return h;
}

QuadratureSpec QuadratureSpec::refined() const {
    QuadratureSpec h = *this;
    h.r3_points_per_axis = 2 * r3_points_per_axis;
    const int p = 2 * sphere_polar_order();
    h.sphere_rule_order = 2 * p * p;
    h.segment_points = 2 * segment_points;
    return h;
}

ordered_json to_json(const QuadratureSpec& q) {
    ordered_json j;
    j["r3_points_per_axis"] = q.r3_points_per_axis;
    j["r3_truncation_radius_sigmas"] = q.r3_truncation_radius_sigmas;
    j["sphere_rule_order"] = q.sphere_rule_order;
    j["segment_points"] = q.segment_points;
    j["qmc_samples"] = q.qmc_samples;
    j["qmc_seed"] = q.qmc_seed;
    return j;
}

namespace detail {
void throw_node_failure(const std::string& what, const std::string& node) {
    throw NodeFailure(what + ": non-finite integrand at node " + node);
}
}  // namespace detail

void parallel_indices(std::size_t count, Execution exec, const std::function<void(std::size_t)>& fn) {
    if (exec == Execution::serial || count < 2 || omp_get_max_threads() == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    bool any = false;
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
#pragma omp atomic write
            any = true;
        }
    }
    if (any)
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------- rules

namespace {

std::vector<double> tridiagonal_eigenvalues(int n, const std::function<double(int)>& offdiag) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(0, n - 1));
    for (int k = 1; k < n; ++k) sub(k - 1) = offdiag(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end());
    return ev;
}

// P_n and P_{n-1} at x
std::pair<double, double> legendre_pair(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

LineRule build_legendre(int n) {
    LineRule r;
    auto ev = tridiagonal_eigenvalues(n, [](int k) { return k / std::sqrt(4.0 * k * k - 1.0); });
    for (int i = 0; i < n; ++i) {
        double x = ev[i];
        for (int it = 0; it < 3; ++it) {
            const auto [pn, pm] = legendre_pair(n, x);
            x -= pn / (n * (x * pn - pm) / (x * x - 1.0));
        }
        const auto [pn, pm] = legendre_pair(n, x);
        const double dp = n * (x * pn - pm) / (x * x - 1.0);
        r.nodes.push_back(x);
        r.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    }
    // enforce exact symmetry
    for (int i = 0; i < n / 2; ++i) {
        const double x = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
        const double w = 0.5 * (r.weights[i] + r.weights[n - 1 - i]);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

// Orthonormal Hermite recurrence: returns p_n(z), p_{n-1}(z) and sum_{k<n} p_k(z)^2.
struct HermiteEval {
    double pn, pn1, sumsq;
};
HermiteEval hermite_eval(int n, double z) {
    double pm = 0.0, p = std::pow(std::numbers::pi, -0.25);
    double sumsq = p * p;
    for (int k = 0; k < n - 1; ++k) {
        const double next = z * std::sqrt(2.0 / (k + 1)) * p - std::sqrt(static_cast<double>(k) / (k + 1)) * pm;
        pm = p;
        p = next;
        sumsq += p * p;
    }
    const double pn = z * std::sqrt(2.0 / n) * p - std::sqrt(static_cast<double>(n - 1) / n) * pm;
    return {pn, p, sumsq};
}

HermiteRule build_hermite(int n) {
    HermiteRule r;
    auto ev = tridiagonal_eigenvalues(n, [](int k) { return std::sqrt(k / 2.0); });
    for (int i = 0; i < n; ++i) {
        double z = ev[i];
        for (int it = 0; it < 3; ++it) {
            const auto e = hermite_eval(n, z);
            z -= e.pn / (std::sqrt(2.0 * n) * e.pn1);
        }
        const auto e = hermite_eval(n, z);
        r.nodes.push_back(z);
        r.weights.push_back(1.0 / e.sumsq);
        r.scaled_weights.push_back(std::exp(z * z) / e.sumsq);
    }
    for (int i = 0; i < n / 2; ++i) {
        const double z = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
        const double w = 0.5 * (r.weights[i] + r.weights[n - 1 - i]);
        const double sw = 0.5 * (r.scaled_weights[i] + r.scaled_weights[n - 1 - i]);
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = r.weights[n - 1 - i] = w;
        r.scaled_weights[i] = r.scaled_weights[n - 1 - i] = sw;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

template <class Rule, class Build>
const Rule& cached(std::map<int, std::unique_ptr<Rule>>& cache, std::mutex& mu, int n, Build build) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Rule>(build(n))).first;
    return *it->second;
}

SphereRule build_sphere(int p, const Vec3* axis) {
    const LineRule& gl = gauss_legendre(p);
    SphereRule r;
    r.polar_order = p;
    Frame base{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    if (axis) base = frame_about(*axis / norm(*axis));
    const int na = 2 * p;
    for (int i = 0; i < p; ++i) {
        // full sphere: mu in [-1,1]; hemisphere: mu in [0,1]
        const double mu = axis ? 0.5 * (gl.nodes[i] + 1.0) : gl.nodes[i];
        const double wmu = axis ? 0.5 * gl.weights[i] : gl.weights[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < na; ++j) {
            const double phi = (j + 0.5) * std::numbers::pi / p;
            const double c = std::cos(phi), s = std::sin(phi);
            // local coordinates: pole along base.n
            const Vec3 nl{st * c, st * s, mu};
            const Vec3 e1l{mu * c, mu * s, -st};
            const Vec3 e2l{-s, c, 0.0};
            auto to_global = [&](const Vec3& a) { return a.x1 * base.e1 + a.x2 * base.e2 + a.x3 * base.n; };
            r.frames.push_back({to_global(nl), to_global(e1l), to_global(e2l)});
            r.weights.push_back(wmu * std::numbers::pi / p);
        }
    }
    return r;
}

}  // namespace

const LineRule& gauss_legendre(int n) {
    static std::map<int, std::unique_ptr<LineRule>> cache;
    static std::mutex mu;
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    return cached(cache, mu, n, build_legendre);
}

const HermiteRule& gauss_hermite(int n) {
    static std::map<int, std::unique_ptr<HermiteRule>> cache;
    static std::mutex mu;
    if (n < 1 || n > 150) throw std::invalid_argument("gauss_hermite: order must be in [1, 150]");
    return cached(cache, mu, n, build_hermite);
}

MappedNodes map_legendre(int n, double a, double b) {
    const LineRule& r = gauss_legendre(n);
    MappedNodes m;
    m.x.resize(n);
    m.w.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        m.x[i] = mid + half * r.nodes[i];
        m.w[i] = half * r.weights[i];
    }
    return m;
}

MappedNodes map_hermite(int n, double center, double stddev) {
    const HermiteRule& r = gauss_hermite(n);
    MappedNodes m;
    m.x.resize(n);
    m.w.resize(n);
    const double s = std::numbers::sqrt2 * stddev;
    for (int i = 0; i < n; ++i) {
        m.x[i] = center + s * r.nodes[i];
        m.w[i] = s * r.scaled_weights[i];
    }
    return m;
}

const SphereRule& sphere_rule(int polar_order) {
    static std::map<int, std::unique_ptr<SphereRule>> cache;
    static std::mutex mu;
    if (polar_order < 1) throw std::invalid_argument("sphere_rule: order must be >= 1");
    return cached(cache, mu, polar_order, [](int p) { return build_sphere(p, nullptr); });
}

SphereRule hemisphere_rule(int polar_order, const Vec3& axis) {
    if (!(norm(axis) > 0.0)) throw InvalidDirection("hemisphere_rule: zero axis");
    return build_sphere(polar_order, &axis);
}

// ---------------------------------------------------------------- quasi-Monte Carlo

ShiftedSobol::ShiftedSobol(int dim, long points, std::uint64_t seed) : dim_(dim), points_(points) {
    if (dim < 1 || dim > 64) throw std::invalid_argument("qmc: dimension must be in [1, 64]");
    boost::random::sobol gen(static_cast<std::size_t>(dim));
    base_.resize(static_cast<std::size_t>(points) * dim);
    for (auto& b : base_) b = gen();
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
    shifts_.resize(static_cast<std::size_t>(kQmcReplicates) * dim);
    for (auto& s : shifts_) s = rng();
}

void ShiftedSobol::point(int r, long i, double* u) const {
    const std::uint64_t* b = &base_[static_cast<std::size_t>(i) * dim_];
    const std::uint64_t* s = &shifts_[static_cast<std::size_t>(r) * dim_];
    for (int j = 0; j < dim_; ++j) {
        const std::uint64_t x = (b[j] ^ s[j]) >> 11;
        u[j] = (static_cast<double>(x) + 0.5) * 0x1.0p-53;
    }
}

std::vector<double> qmc_replicate_means(const QmcKernel& fn, int dim, int components, long points, std::uint64_t seed,
                                        Execution exec) {
    const ShiftedSobol sob(dim, points, seed);
    // blocks of points per task; block sums are combined by a fixed pairwise tree
    const long block = 256;
    const long nblocks = (points + block - 1) / block;
    const std::size_t ntasks = static_cast<std::size_t>(kQmcReplicates) * nblocks;
    std::vector<double> partial(ntasks * components, 0.0);
    parallel_indices(ntasks, exec, [&](std::size_t t) {
        const int r = static_cast<int>(t / nblocks);
        const long b0 = static_cast<long>(t % nblocks) * block;
        const long b1 = std::min(points, b0 + block);
        std::vector<double> u(dim), out(components);
        std::vector<double> vals(static_cast<std::size_t>(b1 - b0) * components);
        for (long i = b0; i < b1; ++i) {
            sob.point(r, i, u.data());
            std::fill(out.begin(), out.end(), 0.0);
            fn(u.data(), out.data());
            for (int k = 0; k < components; ++k) {
                if (!std::isfinite(out[k])) {
                    std::string node = "(";
                    for (int j = 0; j < dim; ++j) node += (j ? ", " : "") + std::to_string(u[j]);
                    detail::throw_node_failure("qmc", node + ")");
                }
                vals[static_cast<std::size_t>(k) * (b1 - b0) + (i - b0)] = out[k];
            }
        }
        for (int k = 0; k < components; ++k)
            partial[t * components + k] = pairwise_sum(&vals[static_cast<std::size_t>(k) * (b1 - b0)], b1 - b0);
    });
    std::vector<double> means(static_cast<std::size_t>(kQmcReplicates) * components);
    std::vector<double> tmp(nblocks);
    for (int r = 0; r < kQmcReplicates; ++r)
        for (int k = 0; k < components; ++k) {
            for (long b = 0; b < nblocks; ++b) tmp[b] = partial[(static_cast<std::size_t>(r) * nblocks + b) * components + k];
            means[static_cast<std::size_t>(r) * components + k] = pairwise_sum(tmp) / static_cast<double>(points);
        }
    return means;
}

IntegralResult<double> qmc_integrate(const std::function<double(const double*)>& fn, const std::vector<double>& lo,
                                     const std::vector<double>& hi, const QuadratureSpec& spec) {
    const int d = static_cast<int>(lo.size());
    if (d < 1 || d > 12 || hi.size() != lo.size()) throw std::invalid_argument("qmc_integrate: box dimension must be in [1, 12]");
    double vol = 1.0;
    for (int j = 0; j < d; ++j) vol *= hi[j] - lo[j];
    auto kernel = [&](const double* u, double* out) {
        double x[12];
        for (int j = 0; j < d; ++j) x[j] = lo[j] + (hi[j] - lo[j]) * u[j];
        out[0] = fn(x) * vol;
    };
    const auto e = qmc_unit_cube<1>(kernel, d, spec.qmc_samples, spec.qmc_seed, spec.execution);
    IntegralResult<double> r;
    r.value = e.mean[0];
    r.error_estimate = e.stderr_[0];
    r.nodes_used = e.samples;
    return r;
}

double normal_quantile(double u) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u); }

}  // namespace densegas
