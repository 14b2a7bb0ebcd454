#include <benchmark/benchmark.h>

#include "wardseq/kernels.hpp"
#include "wardseq/methods.hpp"

using namespace wardseq;
using namespace wardseq::kernels;

namespace {

const RealSeq& test_seq() {
    static const RealSeq s = RealSeq::parse("cos(3.14159265358979*sqrt(n)) + ln(n)/n");
    return s;
}

const std::vector<double>& samples() {
    static const std::vector<double> v = sample(test_seq(), 1, Index{1} << 22, Exec::Serial);
    return v;
}

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_Sample(benchmark::State& st) {
    const Exec e = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(sample(test_seq(), 1, Index{1} << 20, e));
    st.SetItemsProcessed(st.iterations() * (Index{1} << 20));
}

void BM_CountDeviations(benchmark::State& st) {
    const Exec e = exec_of(st);
    const auto& v = samples();
    for (auto _ : st) benchmark::DoNotOptimize(count_deviations(v, 0.0, 0.5, e));
    st.SetItemsProcessed(st.iterations() * static_cast<Index>(v.size()));
}

void BM_WindowPeakDensity(benchmark::State& st) {
    const Exec e = exec_of(st);
    const auto& v = samples();
    const auto cps = default_checkpoints(static_cast<Index>(v.size()));
    for (auto _ : st) benchmark::DoNotOptimize(window_peak_density(v, 0.0, 0.5, cps, e));
    st.SetItemsProcessed(st.iterations() * static_cast<Index>(v.size()));
}

void BM_BlockCounts(benchmark::State& st) {
    const Exec e = exec_of(st);
    const auto& v = samples();
    const auto th = make_lacunary_covering(SchemeSpec::parse("poly:2"), static_cast<Index>(v.size()));
    const int r_hi = th.last_block_within(static_cast<Index>(v.size()));
    for (auto _ : st) benchmark::DoNotOptimize(block_counts(v, th, 1, r_hi, 0.0, 0.5, e));
    st.SetItemsProcessed(st.iterations() * th.k(r_hi));
}

}  // namespace

// argument 0 is the serial reference, 1 the OpenMP path
BENCHMARK(BM_Sample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountDeviations)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowPeakDensity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockCounts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
