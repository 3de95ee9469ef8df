#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "biharm/asymptotics.hpp"
#include "biharm/extraction.hpp"
#include "biharm/integrate.hpp"
#include "biharm/oracle.hpp"
#include "biharm/series.hpp"
#include "biharm/specfun.hpp"

namespace {

using namespace biharm;

void BM_bessel_i(benchmark::State& state) {
    double r = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_i(1.5, r, true).value);
        r = r < 100.0 ? r * 1.1 : 0.5;
    }
}
BENCHMARK(BM_bessel_i);

void BM_taylor_coeffs(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(series::taylor_coeffs({3, -0.5}, {1.0, 0.5}, 8));
}
BENCHMARK(BM_taylor_coeffs);

void BM_integrate_powerlaw(benchmark::State& state) {
    IntegratorControls controls;
    controls.rmax = 1e4;
    for (auto _ : state)
        benchmark::DoNotOptimize(ode::integrate({3, 0.5}, {1.0, 1.0}, controls));
}
BENCHMARK(BM_integrate_powerlaw);

void BM_integrate_logcritical(benchmark::State& state) {
    IntegratorControls controls;
    controls.rmax = 1e6;
    for (auto _ : state)
        benchmark::DoNotOptimize(ode::integrate({3, -1.0}, {1.0, 0.5}, controls));
}
BENCHMARK(BM_integrate_logcritical);

void BM_picard_solve(benchmark::State& state) {
    oracle::PicardConfig config;
    config.R = 5.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::picard_solve({3, -2.0}, {1.0, 0.5}, config));
}
BENCHMARK(BM_picard_solve);

void BM_estimate_limit(benchmark::State& state) {
    std::vector<extract::RatioPoint> series;
    for (int k = 0; k <= 256; ++k) {
        const double r = std::pow(10.0, 1.0 + 5.0 * k / 256.0);
        series.push_back({r, 1.0 + 3.0 / r});
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(
            extract::estimate_limit(series, extract::FitModel::PowerCorrectionFit));
}
BENCHMARK(BM_estimate_limit);

}  // namespace

BENCHMARK_MAIN();
