#include <benchmark/benchmark.h>

#include <random>

#include "mtco/benchgen.hpp"
#include "mtco/distance.hpp"
#include "mtco/evaluate.hpp"
#include "mtco/search.hpp"

using namespace mtco;

namespace {

Instance random_instance(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::uniform_int_distribution<int> u(1, 99);
    Matrix p(n, m);
    for (auto& v : p.values()) v = u(g);
    return Instance(std::move(p));
}

void BM_EvaluateMakespan(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto inst = random_instance(n, 20, 1);
    const auto perm = Permutation::identity(n);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(inst, perm).value);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateMakespan)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oN);

void BM_InterTaskDistance(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto pair = generate_pair(random_instance(n, 20, 2), 0.5, 3);
    for (auto _ : state) benchmark::DoNotOptimize(inter_task_distance(pair.problem2, pair.problem1).normalized);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_InterTaskDistance)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oN);

void BM_Neh(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto inst = random_instance(n, 10, 4);
    for (auto _ : state) benchmark::DoNotOptimize(neh(inst));
}
BENCHMARK(BM_Neh)->Arg(20)->Arg(50)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
