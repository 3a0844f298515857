#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "densegas/geometry.hpp"
#include "densegas/report.hpp"

namespace densegas {

enum class Execution { serial, parallel };

struct QuadratureSpec {
    int r3_points_per_axis = 24;
    double r3_truncation_radius_sigmas = 6.0;
    int sphere_rule_order = 128;
    int segment_points = 8;
    long qmc_samples = 4096;
    std::uint64_t qmc_seed = 1;
    Execution execution = Execution::parallel;

    void validate() const;
    QuadratureSpec half() const;
    QuadratureSpec refined() const;  // doubled points per axis on every rule
    int sphere_polar_order() const;
};

ordered_json to_json(const QuadratureSpec& q);

class NodeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
struct IntegralResult {
    T value{};
    double error_estimate = 0.0;
    long nodes_used = 0;
};

inline bool finite_value(double x) { return std::isfinite(x); }
inline bool finite_value(const Vec3& x) { return is_finite(x); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Vec3& x) { return norm(x); }

// ---------------------------------------------------------------- summation

// Pairwise tree over a contiguous range; fixed shape for a given length.
template <class T>
T pairwise_sum(const T* x, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = x[0];
        for (std::size_t i = 1; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    T a = pairwise_sum(x, h);
    a += pairwise_sum(x + h, n - h);
    return a;
}
template <class T>
T pairwise_sum(const std::vector<T>& x) {
    return pairwise_sum(x.data(), x.size());
}

// Streaming cascade: blocks of 16 are summed sequentially, block sums combine as a binary counter.
template <class T>
class PairwiseAccumulator {
public:
    void add(const T& x) {
        block_ += x;
        if (++in_block_ == 16) {
            carry(block_);
            block_ = T{};
            in_block_ = 0;
        }
    }
    T total() const {
        T s = block_;
        for (int k = 0; k < kLevels; ++k)
            if (used_ & (1ULL << k)) s += slots_[k];
        return s;
    }

private:
    static constexpr int kLevels = 48;
    void carry(T s) {
        int k = 0;
        while (used_ & (1ULL << k)) {
            T t = slots_[k];
            t += s;
            s = t;
            used_ &= ~(1ULL << k);
            ++k;
        }
        slots_[k] = s;
        used_ |= (1ULL << k);
    }
    std::array<T, kLevels> slots_{};
    std::uint64_t used_ = 0;
    T block_{};
    int in_block_ = 0;
};

// ---------------------------------------------------------------- execution

// Evaluates fn(i) for i in [0, count) into slot i. Parallel execution uses OpenMP;
// results do not depend on the thread count. The lowest-index exception is rethrown.
void parallel_indices(std::size_t count, Execution exec, const std::function<void(std::size_t)>& fn);

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, Execution exec, F&& fn) {
    std::vector<T> out(count);
    parallel_indices(count, exec, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

// ---------------------------------------------------------------- rules

// Gauss-Legendre on [-1, 1].
struct LineRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};
const LineRule& gauss_legendre(int n);

// Gauss-Hermite for weight exp(-z^2); scaled_weights[i] = weights[i] * exp(z_i^2), so that
// sum scaled_weights[i] h(z_i) approximates the plain integral of h over the real line.
struct HermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> scaled_weights;
    std::size_t size() const { return nodes.size(); }
};
const HermiteRule& gauss_hermite(int n);

// Nodes/weights of a 1-D rule mapped onto [a, b] (Gauss-Legendre) or onto the real line about
// a center with standard deviation s (Gauss-Hermite).
struct MappedNodes {
    std::vector<double> x;
    std::vector<double> w;
};
MappedNodes map_legendre(int n, double a, double b);
MappedNodes map_hermite(int n, double center, double stddev);

// Product rule on S^2: polar Gauss-Legendre in cos(theta) times uniform azimuth.
// Each node carries an orthonormal tangent frame.
struct SphereRule {
    std::vector<Frame> frames;
    std::vector<double> weights;
    int polar_order = 0;
    std::size_t size() const { return weights.size(); }
};
const SphereRule& sphere_rule(int polar_order);
// Upper hemisphere {<axis,n> >= 0} with polar axis along axis.
SphereRule hemisphere_rule(int polar_order, const Vec3& axis);

// ---------------------------------------------------------------- integrators

namespace detail {
[[noreturn]] void throw_node_failure(const std::string& what, const std::string& node);
}

template <class F>
auto integrate_segment(F&& fn, double a, double b, const QuadratureSpec& spec)
    -> IntegralResult<std::decay_t<std::invoke_result_t<F, double>>> {
    using T = std::decay_t<std::invoke_result_t<F, double>>;
    auto level = [&](int n) {
        const auto nodes = map_legendre(n, a, b);
        std::vector<T> terms(nodes.x.size());
        for (std::size_t i = 0; i < nodes.x.size(); ++i) {
            const T v = fn(nodes.x[i]);
            if (!finite_value(v)) detail::throw_node_failure("integrate_segment", "s=" + std::to_string(nodes.x[i]));
            terms[i] = v * nodes.w[i];
        }
        return pairwise_sum(terms);
    };
    IntegralResult<T> r;
    const int n = std::max(2, spec.segment_points);
    r.value = level(n);
    r.error_estimate = magnitude(r.value - level(std::max(1, n / 2)));
    r.nodes_used = n + std::max(1, n / 2);
    return r;
}

template <class F>
auto integrate_r3(F&& fn, const Vec3& center, double scale, const QuadratureSpec& spec)
    -> IntegralResult<std::decay_t<std::invoke_result_t<F, Vec3>>> {
    using T = std::decay_t<std::invoke_result_t<F, Vec3>>;
    const double half_width = scale * spec.r3_truncation_radius_sigmas;
    // Returns the integral and the sum of |weighted node values| (for the roundoff floor).
    auto level = [&](int n) {
        const auto a1 = map_legendre(n, center.x1 - half_width, center.x1 + half_width);
        const auto a2 = map_legendre(n, center.x2 - half_width, center.x2 + half_width);
        const auto a3 = map_legendre(n, center.x3 - half_width, center.x3 + half_width);
        auto planes = parallel_map<std::pair<T, double>>(static_cast<std::size_t>(n), spec.execution, [&](std::size_t i) {
            PairwiseAccumulator<T> acc;
            PairwiseAccumulator<double> mag;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const Vec3 p{a1.x[i], a2.x[j], a3.x[k]};
                    const T v = fn(p);
                    if (!finite_value(v)) detail::throw_node_failure("integrate_r3", to_string(p));
                    const T term = v * (a1.w[i] * a2.w[j] * a3.w[k]);
                    acc.add(term);
                    mag.add(magnitude(term));
                }
            return std::pair<T, double>{acc.total(), mag.total()};
        });
        std::vector<T> values(planes.size());
        std::vector<double> mags(planes.size());
        for (std::size_t i = 0; i < planes.size(); ++i) std::tie(values[i], mags[i]) = planes[i];
        return std::pair<T, double>{pairwise_sum(values), pairwise_sum(mags)};
    };
    const int n = spec.r3_points_per_axis;
    const int nh = std::max(2, n / 2);
    IntegralResult<T> r;
    const auto [value, mag] = level(n);
    r.value = value;
    r.error_estimate = magnitude(r.value - level(nh).first) + 64.0 * std::numeric_limits<double>::epsilon() * mag;
    r.nodes_used = static_cast<long>(n) * n * n + static_cast<long>(nh) * nh * nh;
    return r;
}

template <class F>
auto integrate_on_rule(F&& fn, const SphereRule& rule, Execution exec)
    -> std::decay_t<std::invoke_result_t<F, const Vec3&>> {
    using T = std::decay_t<std::invoke_result_t<F, const Vec3&>>;
    auto terms = parallel_map<T>(rule.size(), exec, [&](std::size_t i) {
        const T v = fn(rule.frames[i].n);
        if (!finite_value(v)) detail::throw_node_failure("integrate_sphere", to_string(rule.frames[i].n));
        return v * rule.weights[i];
    });
    return pairwise_sum(terms);
}

template <class F>
auto integrate_sphere(F&& fn, const QuadratureSpec& spec) -> IntegralResult<std::decay_t<std::invoke_result_t<F, const Vec3&>>> {
    using T = std::decay_t<std::invoke_result_t<F, const Vec3&>>;
    const int p = spec.sphere_polar_order();
    const int ph = std::max(1, (p + 1) / 2);
    IntegralResult<T> r;
    r.value = integrate_on_rule(fn, sphere_rule(p), spec.execution);
    r.error_estimate = magnitude(r.value - integrate_on_rule(fn, sphere_rule(ph), spec.execution));
    r.nodes_used = 2L * p * p + 2L * ph * ph;
    return r;
}

// Integral over the hemisphere <axis, n> >= 0 with the rule's pole on axis; intended for
// integrands carrying a positive-part kink on the equator.
template <class F>
auto integrate_hemisphere(F&& fn, const Vec3& axis, const QuadratureSpec& spec)
    -> IntegralResult<std::decay_t<std::invoke_result_t<F, const Vec3&>>> {
    using T = std::decay_t<std::invoke_result_t<F, const Vec3&>>;
    const int p = spec.sphere_polar_order();
    const int ph = std::max(1, (p + 1) / 2);
    IntegralResult<T> r;
    r.value = integrate_on_rule(fn, hemisphere_rule(p, axis), spec.execution);
    r.error_estimate = magnitude(r.value - integrate_on_rule(fn, hemisphere_rule(ph, axis), spec.execution));
    r.nodes_used = 2L * p * p + 2L * ph * ph;
    return r;
}

// ---------------------------------------------------------------- quasi-Monte Carlo

inline constexpr int kQmcReplicates = 16;

// Per-component mean and standard error over kQmcReplicates randomized point sets.
template <int K>
struct QmcEstimate {
    std::array<double, K> mean{};
    std::array<double, K> stderr_{};
    std::array<std::array<double, K>, kQmcReplicates> replicate{};
    long samples = 0;
};

// Randomly digitally shifted Sobol points in (0,1)^dim, point-major, one block per replicate.
class ShiftedSobol {
public:
    ShiftedSobol(int dim, long points, std::uint64_t seed);
    int dim() const { return dim_; }
    long points() const { return points_; }
    // Fills u[0..dim) for point i of replicate r.
    void point(int r, long i, double* u) const;

private:
    int dim_;
    long points_;
    std::vector<std::uint64_t> base_;
    std::vector<std::uint64_t> shifts_;
};

using QmcKernel = std::function<void(const double* u, double* out)>;

// Averages fn over the unit cube; fn writes K components. Inputs with zero density
// must be handled by fn (writing zeros).
std::vector<double> qmc_replicate_means(const QmcKernel& fn, int dim, int components, long points, std::uint64_t seed,
                                        Execution exec);

template <int K>
QmcEstimate<K> qmc_unit_cube(const QmcKernel& fn, int dim, long points, std::uint64_t seed, Execution exec) {
    const auto m = qmc_replicate_means(fn, dim, K, points, seed, exec);
    QmcEstimate<K> e;
    e.samples = points * kQmcReplicates;
    for (int k = 0; k < K; ++k) {
        std::array<double, kQmcReplicates> vals{};
        for (int r = 0; r < kQmcReplicates; ++r) {
            vals[r] = m[static_cast<std::size_t>(r) * K + k];
            e.replicate[r][k] = vals[r];
        }
        const double mean = pairwise_sum(vals.data(), vals.size()) / kQmcReplicates;
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        e.mean[k] = mean;
        e.stderr_[k] = std::sqrt(ss / (kQmcReplicates - 1) / kQmcReplicates);
    }
    return e;
}

// Integral of fn over the box [lo, hi] (dim <= 12), error = standard error over replicates.
IntegralResult<double> qmc_integrate(const std::function<double(const double*)>& fn, const std::vector<double>& lo,
                                     const std::vector<double>& hi, const QuadratureSpec& spec);

// Inverse standard normal CDF.
double normal_quantile(double u);

}  // namespace densegas
