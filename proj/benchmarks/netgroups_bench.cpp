#include <benchmark/benchmark.h>

#include "netgroups/extraction.hpp"
#include "netgroups/generators.hpp"
#include "netgroups/sampling.hpp"

using namespace netgroups;

namespace {

const Graph& collab_like() {
    static const Graph g = [] {
        RandomSource rng(11);
        return collaboration_network(9877, 25998, rng);
    }();
    return g;
}

void BM_ErdosRenyi(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        RandomSource rng(seed++);
        benchmark::DoNotOptimize(erdos_renyi_gnm(n, 3 * n, rng));
    }
}
BENCHMARK(BM_ErdosRenyi)->Arg(500)->Arg(1482)->Arg(10000);

void BM_HillClimb(benchmark::State& state) {
    RandomSource gen(1);
    const Graph g = erdos_renyi_gnm(static_cast<std::size_t>(state.range(0)), 3 * state.range(0), gen);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(hill_climb(g, RandomSource(seed++), 1));
}
BENCHMARK(BM_HillClimb)->Arg(200)->Arg(500)->Arg(1482)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
    const Graph& g = collab_like();
    const auto technique = kAllTechniques[static_cast<std::size_t>(state.range(0))];
    state.SetLabel(std::string(to_string(technique)));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample(g, technique, SamplingParams{}, RandomSource(seed++)));
}
BENCHMARK(BM_Sample)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_NullThreshold(benchmark::State& state) {
    ExtractionConfig c;
    c.null_runs = 10;
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(null_threshold(1482, 4000, c, RandomSource(seed++)));
}
BENCHMARK(BM_NullThreshold)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
