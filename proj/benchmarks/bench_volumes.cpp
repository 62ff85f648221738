#include <benchmark/benchmark.h>

#include <complex>

#include "bongle/bounds.hpp"
#include "bongle/dilog.hpp"
#include "bongle/optimizer.hpp"

namespace {

void BM_Dilog(benchmark::State& state) {
    std::complex<double> z(0.37, 0.81);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bongle::dilog(z));
        z *= std::complex<double>(0.9999, 0.0001);  // wander around the disk
    }
}
BENCHMARK(BM_Dilog);

void BM_TnVolume(benchmark::State& state) {
    int n = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bongle::tn_volume(n));
        n = n % 200 + 2;
    }
}
BENCHMARK(BM_TnVolume);

void BM_UshijimaVolume(benchmark::State& state) {
    const auto t = bongle::GeneralizedTetrahedron::tn(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bongle::ushijima_volume(t));
}
BENCHMARK(BM_UshijimaVolume)->Arg(3)->Arg(12);

void BM_CanonicalForm(benchmark::State& state) {
    const auto b = bongle::parse_bongle("O0 I1 O0 O1 I0 I1 O0 I0");
    for (auto _ : state) benchmark::DoNotOptimize(bongle::canonical_form(b));
}
BENCHMARK(BM_CanonicalForm);

void BM_EnumerateAlternating(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            bongle::enumerate_bongles(n, bongle::BongleFilter::Alternating));
}
BENCHMARK(BM_EnumerateAlternating)->Arg(8)->Arg(10);

void BM_VolumeGradient(benchmark::State& state) {
    const auto t = bongle::build_decomposition(bongle::parse_bongle("O0 O0 O0 I0"));
    const auto x = bongle::feasible_start(t);
    for (auto _ : state)
        benchmark::DoNotOptimize(bongle::volume_gradient(t, x));
}
BENCHMARK(BM_VolumeGradient);

void BM_MaximizeVolume(benchmark::State& state) {
    const auto t = bongle::build_decomposition(bongle::parse_bongle("O0 O0 I0"));
    for (auto _ : state) {
        auto rep = bongle::maximize_volume(t);
        benchmark::DoNotOptimize(rep.volume);
    }
}
BENCHMARK(BM_MaximizeVolume)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
