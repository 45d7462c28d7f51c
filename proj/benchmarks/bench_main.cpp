#include <benchmark/benchmark.h>

#include <random>

#include "unmac/distributions.hpp"
#include "unmac/flightsim.hpp"
#include "unmac/remoteid.hpp"

using namespace unmac;

static void BM_Cpa(benchmark::State& state) {
    const auto s = sim::generate_scenario(100.0, 10.0, 1, 1.9);
    std::size_t k = 0;
    for (auto _ : state) {
        const auto& a = s.uavs[k % s.uavs.size()].trajectory;
        const auto& b = s.uavs[(k * 7 + 1) % s.uavs.size()].trajectory;
        benchmark::DoNotOptimize(sim::cpa(a, b));
        ++k;
    }
}
BENCHMARK(BM_Cpa);

static void BM_Prefilter(benchmark::State& state) {
    const auto s = sim::generate_scenario(static_cast<double>(state.range(0)), 10.0, 1, 1.9);
    for (auto _ : state) benchmark::DoNotOptimize(sim::prefilter(s, sim::reference_worst_case(), 1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Prefilter)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_EvaluatePair(benchmark::State& state) {
    const auto s = sim::generate_scenario(100.0, 10.0, 1, 1.9);
    const auto pairs = sim::prefilter(s, sim::reference_worst_case(), 1);
    const std::vector<MessageFormat> formats{kAllFormats.begin(), kAllFormats.end()};
    const std::vector<double> dts{1.0, 0.1, 0.02};
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim::evaluate_pair(s, pairs[k++ % pairs.size()], formats, dts, sim::EpsMode::Sampled));
    }
}
BENCHMARK(BM_EvaluatePair);

static void BM_SumHalfNormalQuantile(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sum_half_normal_quantile(0.999, 1.9, 1.9));
}
BENCHMARK(BM_SumHalfNormalQuantile)->Unit(benchmark::kMicrosecond);

static void BM_DirectionKnownPdf(benchmark::State& state) {
    const auto cat1 = SpeedModel::from_category(uav_category(1));
    const MobilityExpansion m(1.0, cat1, cat1, true);
    double z = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(m.pdf(z));
        z = z < 40.0 ? z + 0.37 : 0.1;
    }
}
BENCHMARK(BM_DirectionKnownPdf)->Unit(benchmark::kMicrosecond);

static void BM_EncodeDecode(benchmark::State& state) {
    remoteid::RemoteIdMessage m;
    m.format = remoteid::FormatTag::Candidate3;
    m.east_cm = 123456;
    m.af_size_cm = 120;
    m.loc_error_cm = 570;
    m.heading_e4 = 31415;
    for (auto _ : state) {
        const auto bytes = remoteid::encode(m);
        benchmark::DoNotOptimize(remoteid::decode(bytes));
    }
}
BENCHMARK(BM_EncodeDecode);
BENCHMARK_MAIN();
