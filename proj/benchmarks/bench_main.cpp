#include <benchmark/benchmark.h>

#include "tracer/cgf.hpp"
#include "tracer/params.hpp"
#include "tracer/rate.hpp"
#include "tracer/sim.hpp"
#include "tracer/tilt.hpp"

namespace {

using namespace tracer;

void bench_kernel_C(benchmark::State& state) {
    double eta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_C(1.3, eta));
        eta = eta < 2.0 ? eta + 1e-3 : 0.1;
    }
}
BENCHMARK(bench_kernel_C);

void bench_solve_cgf(benchmark::State& state) {
    const WallParams walls(0.5, 1.0);
    double lambda = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_cgf(lambda, walls).eta0);
        lambda = lambda < 0.45 ? lambda + 1e-3 : 0.05;
    }
}
BENCHMARK(bench_solve_cgf);

void bench_legendre(benchmark::State& state) {
    const WallParams walls(0.5, 1.0);
    const double j = 2.0 * j_star(walls);
    for (auto _ : state) {
        benchmark::DoNotOptimize(legendre(j, walls));
    }
}
BENCHMARK(bench_legendre);

void bench_simulate(benchmark::State& state) {
    const SimConfig config(WallParams(0.5, 1.0), static_cast<double>(state.range(0)), 1);
    std::uint64_t events = 0;
    for (auto _ : state) {
        const auto stats = simulate(config);
        events += stats.collisions;
        benchmark::DoNotOptimize(stats.current);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(bench_simulate)->Arg(1000)->Arg(100000);

void bench_simulate_tilted(benchmark::State& state) {
    const WallParams walls(0.5, 1.0);
    const TiltSpec spec = TiltSpec::from_target(j_star(walls) / 2.0, walls, 1e-2, 0.1);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            simulate_tilted(spec, walls, 1e4, 7, stream++).stats.current);
    }
}
BENCHMARK(bench_simulate_tilted);

} // namespace

BENCHMARK_MAIN();
