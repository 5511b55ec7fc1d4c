#include <benchmark/benchmark.h>

#include "dglab/builders.hpp"
#include "dglab/constants.hpp"
#include "dglab/corpus.hpp"
#include "dglab/field.hpp"
#include "dglab/solver.hpp"
#include "dglab/verify.hpp"

namespace {

dg::GridField bench_field(int nx) {
    return dg::build_field(dg::GridSpec::make(1, nx, nx), dg::FieldKind::SmoothBump);
}

void bm_measure_level_set(benchmark::State& state) {
    const dg::GridField u = bench_field(static_cast<int>(state.range(0)));
    const dg::Cylinder q1 = dg::Cylinder::standard(1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(dg::measure_level_set(u, q1, dg::LevelSetKind::below(0.5)));
}
BENCHMARK(bm_measure_level_set)->Arg(128)->Arg(256)->Arg(512);

void bm_energy_integrals(benchmark::State& state) {
    const dg::GridField u = bench_field(static_cast<int>(state.range(0)));
    const dg::Cylinder q1 = dg::Cylinder::standard(1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(dg::energy_integrals(u, q1, 0.25, 1.0));
}
BENCHMARK(bm_energy_integrals)->Arg(128)->Arg(256);

void bm_dg_sample(benchmark::State& state) {
    const dg::GridField u = bench_field(256);
    const dg::DgParams dgp{0.5, 20.0, 0.0, 4.0 / 3.0};
    dg::DgSample s;
    s.k = 0.25;
    s.it_s = 32;
    s.it_t = 96;
    s.r = 0.75;
    s.R = 1.25;
    for (auto _ : state)
        benchmark::DoNotOptimize(dg::evaluate_dg_sample(u, dgp, s, dg::DgSign::Plus));
}
BENCHMARK(bm_dg_sample);

void bm_solve(benchmark::State& state) {
    const int nx = static_cast<int>(state.range(0));
    const dg::GridSpec spec = dg::GridSpec::make(1, nx, nx);
    dg::CoefficientParams params;
    params.matrix = dg::MatrixKind::Checkerboard;
    params.lambda = 1.0;
    params.Lambda = 2.0;
    params.seed = 12;
    const dg::CoefficientField coeffs = dg::build_coefficients(spec, params);
    dg::SolveConfig config;
    config.coeffs = &coeffs;
    config.initial = dg::random_modes_profile(spec, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(dg::solve(config));
}
BENCHMARK(bm_solve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void bm_full_chain(benchmark::State& state) {
    const dg::DgParams dgp{1.0, 1.0, 1.0, 1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(dg::full_chain(1, dgp));
}
BENCHMARK(bm_full_chain);

} // namespace

BENCHMARK_MAIN();
