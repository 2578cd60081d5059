#include <benchmark/benchmark.h>

#include "bifcur/lyapunov.hpp"
#include "bifcur/potential.hpp"
#include "bifcur/zeros.hpp"

using namespace bifcur;

static void BM_WordEvaluate(benchmark::State& state) {
    FamilySpec spec = preset_riley();
    WordMeasure mu = WordMeasure::uniform_symmetric(2);
    WalkSampler sampler(mu, 1, 0);
    Word w = sampler.sample_walk(static_cast<std::size_t>(state.range(0)));
    Complex lambda(-3.0, 0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spec.evaluate(w, lambda).op_norm_log());
    }
}
BENCHMARK(BM_WordEvaluate)->Arg(50)->Arg(200)->Arg(800);

static void BM_ChiNormEstimate(benchmark::State& state) {
    FamilySpec spec = preset_riley();
    WordMeasure mu = WordMeasure::uniform_symmetric(2);
    for (auto _ : state) {
        WalkSampler sampler(mu, 7, 0);
        benchmark::DoNotOptimize(
            chi_norm_estimate(spec, mu, Complex(-3.0, 0.2),
                              static_cast<int>(state.range(0)), 50, sampler));
    }
}
BENCHMARK(BM_ChiNormEstimate)->Arg(50)->Arg(200);

static void BM_ChiField(benchmark::State& state) {
    FamilySpec spec = preset_riley();
    WordMeasure mu = WordMeasure::uniform_symmetric(2);
    ParamGrid grid(Complex(-3.0, 0.0), 4.0, 4.0, static_cast<int>(state.range(0)),
                   static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(chi_field(spec, mu, grid, 30, 20, 11, true));
    }
}
BENCHMARK(BM_ChiField)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_Ddc(benchmark::State& state) {
    ParamGrid grid(Complex(0.0, 0.0), 2.0, 2.0, static_cast<int>(state.range(0)),
                   static_cast<int>(state.range(0)));
    ScalarField u(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            u.set(i, j, std::log(std::abs(grid.pixel_center(i, j) - Complex(0.1, 0.2))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ddc(u));
    }
}
BENCHMARK(BM_Ddc)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_TraceLocus(benchmark::State& state) {
    FamilySpec spec = preset_riley();
    Word w = spec.parse("ab");
    Box box{Complex(-3.0, 0.0), 4.0, 4.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_locus(spec, w, Complex(4.0, 0.0), box, 1e-9));
    }
}
BENCHMARK(BM_TraceLocus)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
