// Serial reference vs OpenMP execution for the main integration kernels.
#include <benchmark/benchmark.h>

#include "densegas/currents.hpp"
#include "densegas/verify.hpp"

using namespace densegas;

namespace {

QuadratureSpec spec(Execution e) {
    QuadratureSpec q;
    q.r3_points_per_axis = 12;
    q.sphere_rule_order = 32;
    q.segment_points = 4;
    q.qmc_samples = 4096;
    q.execution = e;
    return q;
}

Execution mode(const benchmark::State& s) { return s.range(0) == 0 ? Execution::serial : Execution::parallel; }

const DistributionSpec kF = [] {
    DistributionSpec f;
    f.family = Family::perturbed_maxwellian;
    f.perturbation_strength = 0.3;
    return f;
}();
const CollisionModel kEnskog = CollisionModel::enskog(0.5, ChiSpec::constant(1.0));
const CollisionModel kPovzner = CollisionModel::povzner(PovznerKernelSpec::smooth_bump(1.0, 4.0));
const Vec3 kX{0.3, 0, 0}, kV{1, 0.5, 0};

void label(benchmark::State& s) { s.SetLabel(s.range(0) == 0 ? "serial" : "parallel"); }

void BM_EnskogOperator(benchmark::State& s) {
    const auto q = spec(mode(s));
    for (auto _ : s) benchmark::DoNotOptimize(eval_enskog(kEnskog, kF, kF, kX, kV, q));
    label(s);
}

void BM_PovznerOperator(benchmark::State& s) {
    const auto q = spec(mode(s));
    for (auto _ : s) benchmark::DoNotOptimize(eval_povzner(kPovzner, kF, kF, kX, kV, q));
    label(s);
}

void BM_EnskogCurrents(benchmark::State& s) {
    const auto q = spec(mode(s));
    for (auto _ : s) benchmark::DoNotOptimize(current_bundle(kEnskog, kF, kX, kV, q));
    label(s);
}

void BM_EnskogWeakForm(benchmark::State& s) {
    const auto q = spec(mode(s));
    for (auto _ : s) benchmark::DoNotOptimize(check_weakform(kEnskog, kF, Moment::energy(), TestFunctionSpec{}, q));
    label(s);
}

}  // namespace

BENCHMARK(BM_EnskogOperator)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PovznerOperator)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnskogCurrents)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnskogWeakForm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
