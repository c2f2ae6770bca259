#include "ibsmp/deorbit.hpp"
#include "ibsmp/integrals.hpp"
#include "ibsmp/propagator.hpp"
#include "ibsmp/transfer.hpp"

#include <benchmark/benchmark.h>

using namespace ibsmp;

namespace {
const Constants kC;
const SpacecraftConfig kCfg;
} // namespace

static void BM_IntegralSet(benchmark::State& state) {
    double lf = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kepler_integrals(0.01, 0.02, 0.0, lf));
        lf += 1e-9;  // defeat value caching
    }
}
BENCHMARK(BM_IntegralSet);

static void BM_PropagateRevolution(benchmark::State& state) {
    EquinoctialState s;
    s.a = 7128.16;
    s.p2 = 0.02;
    const ThrustSetting thrust{2e-7, kPi / 2.0, 0.1};
    for (auto _ : state)
        benchmark::DoNotOptimize(propagate_first_order(s, kTwoPi, thrust, kC));
}
BENCHMARK(BM_PropagateRevolution);

static void BM_ApsisThrustArc(benchmark::State& state) {
    EquinoctialState s;
    s.a = 6828.16;
    s.p2 = 0.001;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            apsis_thrust_arc(s, kPi, 0.8, -kPi / 2.0, 0.0, 2e-7, kC));
}
BENCHMARK(BM_ApsisThrustArc);

static void BM_DeorbitSpiral(benchmark::State& state) {
    const DebrisOrbit d{500.0, 6828.16};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate_deorbit(d, 350.0, {kPi, kPi, 1200, 1200}, kCfg, kC));
}
BENCHMARK(BM_DeorbitSpiral);

static void BM_TransferSimulation(benchmark::State& state) {
    const BoundaryConditions bc{6892.24, 0.031, 7478.16, 0.0, 0.0};
    const TransferControls ctl{1.2, 0.8, 1.0, 1.1, 0.0, 0.0};
    const double tof = static_cast<double>(state.range(0)) * kSecondsPerDay;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate_transfer(bc, ctl, tof, 1000.0, kCfg, kC));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransferSimulation)->Arg(5)->Arg(20)->Arg(70)->Complexity();

static void BM_SurrogateQuery(benchmark::State& state) {
    static const DeorbitSurrogate sur = [] {
        GridSpec spec;
        spec.n_mibs = 2;
        spec.n_dla1 = 10;
        spec.n_dlaf = 10;
        return extract_envelope(
            build_surrogate_grid({500.0, 6828.16}, kCfg, kC, spec, 1));
    }();
    const double tof = 0.5 * (sur.slices[0].tof.front() + sur.slices[0].tof.back());
    for (auto _ : state)
        benchmark::DoNotOptimize(query_surrogate(sur, tof, 500.0));
}
BENCHMARK(BM_SurrogateQuery);

BENCHMARK_MAIN();
