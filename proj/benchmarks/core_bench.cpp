#include <benchmark/benchmark.h>

#include "adiclab/adiclab.hpp"

using namespace adiclab;

namespace {

void BM_GreedyCursor(benchmark::State& state) {
    DigitStream s = greedy_stream(ProbabilityVector::parse("1/10,2/10,3/10,4/10"));
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        DigitCursor c = s.cursor();
        unsigned sum = 0;
        for (std::uint64_t i = 0; i < n; ++i) sum += c.next();
        benchmark::DoNotOptimize(sum);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GreedyCursor)->Arg(1 << 16)->Arg(1 << 20);

void BM_GreedyRandomAccess(benchmark::State& state) {
    DigitStream s = greedy_stream(ProbabilityVector::parse("3/7,1/7,2/7,1/7"));
    std::uint64_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.at(k));
        k = (k * 6364136223846793005ull + 1442695040888963407ull) % 1000000000;
    }
}
BENCHMARK(BM_GreedyRandomAccess);

void BM_BlockCursor(benchmark::State& state) {
    ColumnSchedule cols = ColumnSchedule::converging(ProbabilityVector::parse("1/2,1/2,0,0"),
                                                     ProbabilityVector::parse("0,0,1,0"), 1);
    DigitStream s = block_stream(cols, ScheduleSpec::polynomial(2));
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        DigitCursor c = s.cursor();
        unsigned sum = 0;
        for (std::uint64_t i = 0; i < n; ++i) sum += c.next();
        benchmark::DoNotOptimize(sum);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BlockCursor)->Arg(1 << 16)->Arg(1 << 20);

void BM_Expand(benchmark::State& state) {
    // 1/q with q prime and 4 of large multiplicative order
    const Rational x(1, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(expand(x));
}
BENCHMARK(BM_Expand)->Arg(1009)->Arg(100003);

void BM_ConvergenceTrace(benchmark::State& state) {
    DigitStream s = greedy_stream(ProbabilityVector::uniform(Base(4)));
    std::vector<std::uint64_t> cps{10, 100, 1000, 10000, 100000};
    for (auto _ : state) benchmark::DoNotOptimize(convergence_trace(s, cps));
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_ConvergenceTrace);

void BM_MTheta(benchmark::State& state) {
    double theta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(m_theta(theta));
        theta = theta > 2.8 ? 0.1 : theta + 0.1;
    }
}
BENCHMARK(BM_MTheta);

void BM_MThetaBruteforce(benchmark::State& state) {
    const double step = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(m_theta_bruteforce(1.2, Base(4), step));
}
BENCHMARK(BM_MThetaBruteforce)->Arg(100)->Arg(1000);

void BM_MeanTargetVector(benchmark::State& state) {
    const Rational theta(7, 5);
    for (auto _ : state) benchmark::DoNotOptimize(mean_target_vector(theta));
}
BENCHMARK(BM_MeanTargetVector);

}  // namespace
BENCHMARK_MAIN();
