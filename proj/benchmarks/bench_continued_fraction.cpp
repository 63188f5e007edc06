#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <hecke/continued_fraction.hpp>
#include <hecke/orbits.hpp>

namespace {

void BM_Expand(benchmark::State& state) {
    const auto ctx = hecke::make_context(static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-ctx.lambda / 2, ctx.lambda / 2);
    std::vector<double> xs(256);
    for (double& x : xs) x = u(rng);
    std::size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(hecke::expand(ctx, xs[k++ % xs.size()], hecke::CFMode::regular, 40));
}
BENCHMARK(BM_Expand)->Arg(3)->Arg(7)->Arg(10);

void BM_PrimeOrbits(benchmark::State& state) {
    const auto ctx = hecke::make_context(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hecke::prime_orbits(ctx, 10.0));
}
BENCHMARK(BM_PrimeOrbits)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

} // namespace
