#include <benchmark/benchmark.h>

#include "diagqmc/analysis.hpp"
#include "diagqmc/integrands.hpp"
#include "diagqmc/quadrature.hpp"

namespace {

const diagqmc::DiagonalSingularIntegrand& proto() {
    static const auto f = diagqmc::prototype(0.5);
    return f;
}

void BM_Strip(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(diagqmc::estimate_strip(proto(), n, 1.0));
    state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_Strip)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);

void BM_Extension(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto f = diagqmc::modulated(0.5, "one");
    const double eps = diagqmc::epsilon_schedule(n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(diagqmc::estimate_extension(f, n, eps));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Extension)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);

void BM_TransformHalton(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(diagqmc::estimate_transform(proto(), n, diagqmc::TransformMode::halton()));
    }
    state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_TransformHalton)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);

void BM_TransformRqmc(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(diagqmc::estimate_transform(proto(), n, diagqmc::TransformMode::rqmc(8), 7));
    }
    state.SetItemsProcessed(state.iterations() * 16 * state.range(0));
}
BENCHMARK(BM_TransformRqmc)->RangeMultiplier(4)->Range(1 << 8, 1 << 14);

void BM_OracleQuadrature(benchmark::State& state) {
    const auto f = diagqmc::modulated(0.5, "trig");
    for (auto _ : state) benchmark::DoNotOptimize(diagqmc::oracle_integral(f));
}
BENCHMARK(BM_OracleQuadrature)->Unit(benchmark::kMillisecond);

}  // namespace
