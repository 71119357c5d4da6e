#include <benchmark/benchmark.h>

#include <cmath>

#include "glv/certificates.hpp"
#include "glv/classify.hpp"
#include "glv/equilibrium.hpp"
#include "glv/focal.hpp"
#include "glv/local_stability.hpp"
#include "glv/model.hpp"
#include "glv/simulate.hpp"

namespace {

const glv::ReducedSystem kGeneric =
    glv::make_reduced(-1.2, 0.7, 0.9, 1.4, 0.8, 1.3, 1.1, 0.6);

void BM_SolveEquilibrium(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(glv::solve_equilibrium(kGeneric));
}
BENCHMARK(BM_SolveEquilibrium);

void BM_Jacobian(benchmark::State& state) {
    glv::EquilibriumResult eq = glv::solve_equilibrium(kGeneric);
    for (auto _ : state)
        benchmark::DoNotOptimize(glv::jacobian(kGeneric, eq.x, eq.y));
}
BENCHMARK(BM_Jacobian);

void BM_HopfVerdict(benchmark::State& state) {
    glv::ReducedSystem s = glv::reduce(glv::alpha_beta_system(1.25, 0.75));
    for (auto _ : state) benchmark::DoNotOptimize(glv::hopf_verdict(s));
}
BENCHMARK(BM_HopfVerdict);

void BM_IntegrateOneOrbit(benchmark::State& state) {
    glv::ReducedSystem s = glv::make_reduced(0, -1, -1, 0);
    glv::SimConfig cfg;
    cfg.t_max = 7.0; // one loop of the (2, 1) orbit
    cfg.record_samples = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(glv::integrate(s, 2.0, 1.0, cfg));
}
BENCHMARK(BM_IntegrateOneOrbit);

void BM_DulacGrid(benchmark::State& state) {
    glv::ReducedSystem s = glv::make_reduced(-1, -1, -1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(glv::dulac_generic(s));
}
BENCHMARK(BM_DulacGrid);

void BM_ClassifySystem(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            glv::classify_system(glv::make_reduced(-1, -1, -1, 1)));
}
BENCHMARK(BM_ClassifySystem);

void BM_RegionDiagramCoarse(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(glv::region_diagram(-1, 3, -1, 3, 0.2));
}
BENCHMARK(BM_RegionDiagramCoarse);

} // namespace

BENCHMARK_MAIN();
