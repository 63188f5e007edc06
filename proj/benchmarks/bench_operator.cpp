#include <benchmark/benchmark.h>

#include <hecke/partition.hpp>
#include <hecke/transfer.hpp>
#include <hecke/zeta.hpp>

namespace {

void BM_Assemble(benchmark::State& state) {
    const auto ctx = hecke::make_context(static_cast<int>(state.range(0)));
    const auto discs = hecke::auto_discs(ctx);
    const auto spec = hecke::full_operator(ctx);
    const int N = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(hecke::assemble(ctx, discs, spec, {0.5, 9.5}, N));
}
BENCHMARK(BM_Assemble)->Args({3, 20})->Args({3, 40})->Args({6, 40})->Unit(benchmark::kMillisecond);

void BM_FredholmDet(benchmark::State& state) {
    const auto ctx = hecke::make_context(static_cast<int>(state.range(0)));
    const auto m = hecke::assemble(ctx, hecke::auto_discs(ctx), hecke::full_operator(ctx), 2.0, 40);
    for (auto _ : state) benchmark::DoNotOptimize(hecke::fredholm_det(m));
}
BENCHMARK(BM_FredholmDet)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SelbergZeta(benchmark::State& state) {
    const auto ctx = hecke::make_context(3);
    const auto discs = hecke::auto_discs(ctx);
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hecke::selberg_zeta(ctx, discs, {0.5, 9.5}, N));
}
BENCHMARK(BM_SelbergZeta)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

} // namespace
