#include <benchmark/benchmark.h>

#include "sumdist/joint_density.hpp"
#include "sumdist/sampler.hpp"
#include "sumdist/specfun.hpp"
#include "sumdist/sum_distribution.hpp"

using namespace sumdist;

namespace {

CopulaFamily family_arg(const benchmark::State& state) { return static_cast<CopulaFamily>(state.range(0)); }

GridSpec grid_with_step(double step) {
    GridSpec g;
    g.step = step;
    g.z_step = step;
    return g;
}

void BM_DensityGrid(benchmark::State& state) {
    const JointDensityModel model(CopulaSpec::from_pearson_rho(family_arg(state), 0.9));
    const GridSpec grid = paper_grid();
    for (auto _ : state) benchmark::DoNotOptimize(joint_pdf_grid(model, grid));
    state.SetLabel(std::string(to_string(family_arg(state))));
}
BENCHMARK(BM_DensityGrid)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_PaperExactCdf(benchmark::State& state) {
    const CopulaSpec spec = CopulaSpec::from_pearson_rho(family_arg(state), 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(cdf_paper_exact(spec));
    state.SetLabel(std::string(to_string(family_arg(state))));
}
BENCHMARK(BM_PaperExactCdf)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

// Refined rule at the default and the fine step.
void BM_RefinedCdf(benchmark::State& state) {
    const CopulaSpec spec = CopulaSpec::from_pearson_rho(CopulaFamily::StudentT, 0.9);
    const GridSpec grid = grid_with_step(state.range(0) == 0 ? 0.05 : 0.025);
    for (auto _ : state) benchmark::DoNotOptimize(cdf_refined(spec, grid));
}
BENCHMARK(BM_RefinedCdf)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_InverseNormal(benchmark::State& state) {
    double p = 1e-12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::std_normal_inv_cdf(p));
        p = p < 0.7 ? p * 1.37 : 1e-12;
    }
}
BENCHMARK(BM_InverseNormal);

void BM_Sample(benchmark::State& state) {
    const CopulaSpec spec = CopulaSpec::from_pearson_rho(family_arg(state), 0.9);
    const RandomSource rng(7);
    for (auto _ : state) benchmark::DoNotOptimize(sample_copula(spec, 100000, rng));
    state.SetItemsProcessed(state.iterations() * 100000);
    state.SetLabel(std::string(to_string(family_arg(state))));
}
BENCHMARK(BM_Sample)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
