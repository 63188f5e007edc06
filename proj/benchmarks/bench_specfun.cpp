#include <benchmark/benchmark.h>

#include <hecke/specfun.hpp>

namespace {

void BM_HurwitzZeta(benchmark::State& state) {
    const hecke::cplx s(0.5, static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hecke::hurwitz_zeta(s, 2.75));
}
BENCHMARK(BM_HurwitzZeta)->Arg(0)->Arg(10)->Arg(100);

void BM_HurwitzDerivatives(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hecke::hurwitz_derivatives({2.0, 9.5}, 1.3, m));
}
BENCHMARK(BM_HurwitzDerivatives)->Arg(10)->Arg(40);

} // namespace
