#include <benchmark/benchmark.h>

#include "diagqmc/lowdisc.hpp"
#include "diagqmc/triangle.hpp"

namespace {

void BM_Halton(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(diagqmc::halton_points(n, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Halton)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);

void BM_TriangularVdc(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto t = diagqmc::Triangle::reference();
    for (auto _ : state) benchmark::DoNotOptimize(diagqmc::tvdc_points(t, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TriangularVdc)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);

void BM_Uniform(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(diagqmc::uniform_points(n, 42));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Uniform)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);

}  // namespace
