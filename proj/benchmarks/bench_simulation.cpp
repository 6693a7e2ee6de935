#include <benchmark/benchmark.h>

#include "chemostat/campaign.hpp"
#include "chemostat/integrate.hpp"

namespace {

using namespace chemostat;

const ChemostatParams kParams{1.0, 0.6, 3.0, 3.0, 0.5};

void BM_WienerGenerate(benchmark::State& state) {
    const auto n = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto path = WienerPath::generate(1, 0.0, n * 1e-3, 1e-3);
        benchmark::DoNotOptimize(path);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WienerGenerate)->Arg(1 << 14)->Arg(1 << 18);

void BM_OuFromWiener(benchmark::State& state) {
    const auto path = WienerPath::generate(1, -20.0, 100.0, 1e-3);
    for (auto _ : state) {
        auto ou = OUPath::from_wiener(path);
        benchmark::DoNotOptimize(ou);
    }
}
BENCHMARK(BM_OuFromWiener);

void BM_EulerMaruyama(benchmark::State& state) {
    const auto path = WienerPath::generate(1, 0.0, 100.0, 1e-3);
    for (auto _ : state) {
        auto traj =
            euler_maruyama(kParams, path, {2.5, 5.0}, 0.0, 100.0, 1e-2, 10);
        benchmark::DoNotOptimize(traj);
    }
}
BENCHMARK(BM_EulerMaruyama);

void BM_Rk4Random(benchmark::State& state) {
    const auto path = WienerPath::generate(1, -20.0, 100.0, 5e-3);
    const OUPath ou = OUPath::from_wiener(path);
    const RandomState u0 = transform(kParams, ou.value_at(0.0), {2.5, 5.0});
    for (auto _ : state) {
        auto traj = rk4_random(kParams, ou, u0, 0.0, 100.0, 1e-2);
        benchmark::DoNotOptimize(traj);
    }
}
BENCHMARK(BM_Rk4Random);

}  // namespace

BENCHMARK_MAIN();
