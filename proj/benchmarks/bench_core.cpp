#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "floqcool/experiments.hpp"
#include "floqcool/master_equation.hpp"
#include "floqcool/mathieu.hpp"
#include "floqcool/rates.hpp"

using namespace floqcool;

namespace {

const DriveParams kReference{std::numbers::sqrt2, 1.0};

const TransitionSpectrum& reference_spectrum() {
    static const TransitionSpectrum ts =
        TransitionSpectrum::from_solution(periodic_fourier(kReference, characteristic_exponent(kReference)));
    return ts;
}

void BM_Monodromy(benchmark::State& state) {
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(integrate_fundamental(kReference, tol));
}
BENCHMARK(BM_Monodromy)->Arg(8)->Arg(10)->Arg(12);

void BM_CharacteristicExponent(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(characteristic_exponent(kReference));
}
BENCHMARK(BM_CharacteristicExponent);

void BM_PeriodicFourier(benchmark::State& state) {
    const double nu = characteristic_exponent(kReference);
    for (auto _ : state) benchmark::DoNotOptimize(periodic_fourier(kReference, nu));
}
BENCHMARK(BM_PeriodicFourier);

void BM_RatioExact(benchmark::State& state) {
    const GaussianDensity g(1.0, 7.2, 0.1);
    const ThermalBath bath{0.1};
    for (auto _ : state) benchmark::DoNotOptimize(ratio_exact(reference_spectrum(), bath, g));
}
BENCHMARK(BM_RatioExact);

void BM_Sweep(benchmark::State& state) {
    SweepConfig c = figure_preset("fig3");
    c.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep(c));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SteadyStateNumeric(benchmark::State& state) {
    const RateGenerator gen(0.5, 1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(steady_state_numeric(gen));
}
BENCHMARK(BM_SteadyStateNumeric)->Arg(40)->Arg(512);

void BM_Relax(benchmark::State& state) {
    const RateGenerator gen(0.3, 1.0, 40);
    std::vector<double> p0(41, 0.0);
    p0[5] = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(relax(gen, p0, 50.0));
}
BENCHMARK(BM_Relax)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
