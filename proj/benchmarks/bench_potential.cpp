#include <benchmark/benchmark.h>

#include <cmath>

#include "cpdyn/acceptance.hpp"
#include "cpdyn/oracle.hpp"
#include "cpdyn/parallel.hpp"
#include "cpdyn/potential.hpp"
#include "cpdyn/tensors.hpp"

using namespace cpdyn;

namespace {

const Vec3 kDir = Vec3(0.0, 0.6, 0.8);

void BM_ApplyFExp(benchmark::State& state) {
    const Vec3 R(0.3, -0.4, 1.2);
    const cplx s(-0.5, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(apply_F_exp(s, R));
}
BENCHMARK(BM_ApplyFExp);

void BM_CpDispersion(benchmark::State& state) {
    const auto sys = acceptance_detail::reference_system();
    const double x = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(term_cp_dispersion(sys, kDir * x));
}
BENCHMARK(BM_CpDispersion)->Arg(1)->Arg(10)->Arg(300);

// argument is the light-cone gap tau - x in thousandths
void BM_Dynamic(benchmark::State& state) {
    const auto sys = acceptance_detail::reference_system();
    const double gap = static_cast<double>(state.range(0)) / 1000.0;
    EvalOptions opts;
    opts.light_cone_eps = 1e-4;
    for (auto _ : state) benchmark::DoNotOptimize(term_dynamic(sys, kDir, 1.0 + gap, opts));
}
BENCHMARK(BM_Dynamic)->Arg(10)->Arg(100)->Arg(1000)->Arg(20000);

void BM_Sweep(benchmark::State& state) {
    const auto sys = acceptance_detail::reference_system();
    const std::size_t n = 64;
    std::vector<double> out(n);
    for (auto _ : state) {
        parallel_for(n, [&](std::size_t i) {
            const double x = 0.5 + 0.1 * static_cast<double>(i % 8);
            const double tau = 2.0 + 1.5 * static_cast<double>(i / 8);
            out[i] = potential_total(sys, kDir * x, tau).total;
        });
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * n));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

void BM_OracleSingleSum(benchmark::State& state) {
    const auto sys = acceptance_detail::oracle_system();
    for (auto _ : state) benchmark::DoNotOptimize(oracle_single_sum(sys, kDir * 2.0, 6.0));
}
BENCHMARK(BM_OracleSingleSum)->Unit(benchmark::kMillisecond);

void BM_OracleModeSum(benchmark::State& state) {
    const auto sys = acceptance_detail::oracle_system();
    for (auto _ : state) benchmark::DoNotOptimize(oracle_mode_sum(sys, kDir, 3.0));
}
BENCHMARK(BM_OracleModeSum)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
