#include <benchmark/benchmark.h>

#include <random>

#include <dynmix/catalog.hpp>
#include <dynmix/correlation.hpp>

using namespace dynmix;

namespace {

TorusAutomorphism cat_map() {
    GaussMat a(2, 2);
    a(0, 0) = GaussInt(2);
    a(0, 1) = GaussInt(1);
    a(1, 0) = GaussInt(1);
    a(1, 1) = GaussInt(1);
    return torus_from_matrix(a, "cat-map");
}

void BM_CharpolyRank10(benchmark::State& state) {
    const CRatMat m = to_crat(coxeter_rank10_isometry().M);
    for (auto _ : state) benchmark::DoNotOptimize(charpoly(m));
}
BENCHMARK(BM_CharpolyRank10);

void BM_CertifiedSpectralRadius(benchmark::State& state) {
    const CRatMat m = cat_map().hodge.block(1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(m));
}
BENCHMARK(BM_CertifiedSpectralRadius);

void BM_DegreeProfile(benchmark::State& state) {
    const TorusAutomorphism t = cat_map();
    for (auto _ : state) benchmark::DoNotOptimize(degree_profile(t.hodge));
}
BENCHMARK(BM_DegreeProfile);

void BM_ExactCorrelation(benchmark::State& state) {
    const TorusAutomorphism t = cat_map();
    const TestFunction phi = make_holder_function(2.0, state.range(0), 7);
    const TestFunction psi = make_holder_function(2.0, state.range(0), 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(correlation_exact(t, phi, psi, 30));
}
BENCHMARK(BM_ExactCorrelation)->Arg(1)->Arg(2)->Arg(3);

void BM_MonteCarloCorrelation(benchmark::State& state) {
    const TorusAutomorphism t = cat_map();
    const TestFunction phi = make_holder_function(2.0, 1, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            correlation_montecarlo(t, phi, phi, 12, state.range(0), 99));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloCorrelation)->Arg(10000)->Arg(100000);

void BM_ProjectorRate(benchmark::State& state) {
    const CRatMat m = cat_map().hodge.block(1, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(projector_convergence_rate(m, state.range(0)));
}
BENCHMARK(BM_ProjectorRate)->Arg(30)->Arg(60);

}  // namespace

BENCHMARK_MAIN();
