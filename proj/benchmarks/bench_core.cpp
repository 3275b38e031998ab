#include <benchmark/benchmark.h>

#include <vector>

#include "cyclecast/arma.hpp"
#include "cyclecast/cycles.hpp"
#include "cyclecast/spectral.hpp"
#include "cyclecast/stats.hpp"

using namespace cyclecast;

namespace {

// the train-series shape from the reference workload
constexpr std::size_t kTrainLength = 1034;

std::vector<double> bench_series(std::size_t n) {
    return simulate_arma(std::vector<double>{0.5}, {}, 4e8, n, 1234);
}

void BM_Periodogram(benchmark::State& state) {
    std::vector<double> x = bench_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(periodogram(x));
}
BENCHMARK(BM_Periodogram)->Arg(kTrainLength)->Arg(4096);

void BM_ArSpectrum(benchmark::State& state) {
    std::vector<double> x = bench_series(kTrainLength);
    for (auto _ : state) benchmark::DoNotOptimize(ar_spectrum(x, 30));
}
BENCHMARK(BM_ArSpectrum);

void BM_AcfPacf(benchmark::State& state) {
    std::vector<double> x = bench_series(kTrainLength);
    for (auto _ : state) {
        benchmark::DoNotOptimize(acf(x, 40));
        benchmark::DoNotOptimize(pacf(x, 40));
    }
}
BENCHMARK(BM_AcfPacf);

void BM_CycleRemoval(benchmark::State& state) {
    ResidualSeries x{bench_series(kTrainLength), 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(remove_cycles_sequential(x, {7, 30, 45, 182, 365}));
}
BENCHMARK(BM_CycleRemoval);

void BM_ArmaLoglik(benchmark::State& state) {
    std::vector<double> x = bench_series(kTrainLength);
    std::vector<double> phi{0.6, -0.2, 0.1};
    std::vector<double> theta{0.3, -0.1};
    for (auto _ : state) benchmark::DoNotOptimize(arma_loglik(x, phi, theta));
}
BENCHMARK(BM_ArmaLoglik);

void BM_FitArma(benchmark::State& state) {
    ResidualSeries x{bench_series(kTrainLength), 1};
    ArmaSpec spec{static_cast<std::size_t>(state.range(0)),
                  static_cast<std::size_t>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(fit_arma(x, spec));
}
BENCHMARK(BM_FitArma)->Args({1, 0})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_RollingForecast(benchmark::State& state) {
    ResidualSeries train{bench_series(kTrainLength), 1};
    std::vector<double> test = bench_series(61);
    ArmaModel m = fit_arma(train, {2, 1});
    for (auto _ : state) benchmark::DoNotOptimize(forecast_rolling(m, train, test));
}
BENCHMARK(BM_RollingForecast);

}  // namespace

BENCHMARK_MAIN();
