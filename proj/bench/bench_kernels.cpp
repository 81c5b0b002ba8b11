// Serial reference vs OpenMP kernels on the three parallel workloads.

#include "../tests/fixtures.hpp"

#include "scatter/theta.hpp"

#include <benchmark/benchmark.h>

using namespace scatter;

namespace {

Exec exec_of(const benchmark::State& s)
{
    return s.range(0) == 0 ? Exec::serial : Exec::parallel;
}

const Diagram& perturbed()
{
    static const Diagram d = perturb(fix::two_wall(5), 2, 1, 5).diagram;
    return d;
}

const Diagram& perturbed_completed()
{
    static const Diagram d = complete(perturbed(), 5);
    return d;
}

void BM_Completion(benchmark::State& s)
{
    for (auto _ : s) {
        benchmark::DoNotOptimize(complete(perturbed(), 5, exec_of(s)));
    }
}

void BM_KroneckerCompletion(benchmark::State& s)
{
    Diagram in = initial_diagram(fix::kronecker(), 6);
    for (auto _ : s) {
        benchmark::DoNotOptimize(complete(in, 6, exec_of(s)));
    }
}

void BM_Consistency(benchmark::State& s)
{
    for (auto _ : s) {
        benchmark::DoNotOptimize(is_consistent(perturbed_completed(), 5, exec_of(s)));
    }
}

void BM_BrokenLines(benchmark::State& s)
{
    for (auto _ : s) {
        benchmark::DoNotOptimize(enumerate_broken_lines(perturbed_completed(), {1, 1}, fix::pt(-37, -53, 3), 5, exec_of(s)));
    }
}

} // namespace

BENCHMARK(BM_Completion)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KroneckerCompletion)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Consistency)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BrokenLines)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
