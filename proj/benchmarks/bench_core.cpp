#include "qfc/branching.hpp"
#include "qfc/chars.hpp"
#include "qfc/freeops.hpp"
#include "qfc/lln.hpp"
#include "qfc/repr.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace qfc;

namespace {

Signature halfRectangle(Series s, int N) {
    std::vector<long> e(static_cast<std::size_t>(N), 0);
    std::fill(e.begin(), e.begin() + N / 2, N / 2);
    return Signature(RootSystem{s, N}, e);
}

void BM_TensorLR(benchmark::State& st) {
    const Signature l = halfRectangle(Series::A, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(tensorMultiplicitiesLR({l, l}));
}
BENCHMARK(BM_TensorLR)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ConvolveQuantized(benchmark::State& st) {
    const int K = static_cast<int>(st.range(0));
    const MomentSequence a = uniformMoments(0, 2, K), b = measureMoments(countingMeasure(halfRectangle(Series::A, 6)), K);
    for (auto _ : st) benchmark::DoNotOptimize(convolve(RKind::quantized, {a, b}));
}
BENCHMARK(BM_ConvolveQuantized)->Arg(6)->Arg(12)->Arg(20);

void BM_QMap(benchmark::State& st) {
    const MomentSequence a = measureMoments(countingMeasure(halfRectangle(Series::A, 6)), static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(qMap(a));
}
BENCHMARK(BM_QMap)->Arg(12);

void BM_ResidueExact(benchmark::State& st) {
    const Signature l = halfRectangle(Series::A, static_cast<int>(st.range(0)));
    const Rational x = makeRational(3, 2);
    for (auto _ : st) benchmark::DoNotOptimize(normalizedCharOneVar(l, x));
}
BENCHMARK(BM_ResidueExact)->Arg(10)->Arg(40)->Arg(100);

void BM_ResidueHP(benchmark::State& st) {
    const Signature l = halfRectangle(Series::A, static_cast<int>(st.range(0)));
    const HPFloat x = toHP(makeRational(3, 2));
    for (auto _ : st) benchmark::DoNotOptimize(normalizedCharOneVar(l, x));
}
BENCHMARK(BM_ResidueHP)->Arg(10)->Arg(40)->Arg(100);

void BM_TilingSampler(benchmark::State& st) {
    const int m = static_cast<int>(st.range(0));
    TilingSampler sampler(halfRectangle(Series::C, m), TilingMode::strong);
    std::mt19937_64 rng(1);
    for (auto _ : st) benchmark::DoNotOptimize(sampler.sample(rng));
}
BENCHMARK(BM_TilingSampler)->Arg(4)->Arg(6);

void BM_FloorSampler(benchmark::State& st) {
    const int N = static_cast<int>(st.range(0));
    const Signature l = halfRectangle(Series::A, N);
    std::mt19937_64 rng(1);
    for (auto _ : st) benchmark::DoNotOptimize(sampleRestrictionAFloor(l, N / 2, rng));
}
BENCHMARK(BM_FloorSampler)->Arg(20)->Arg(100);

} // namespace

BENCHMARK_MAIN();
